// Copyright 2026 The qcoinflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcf/cli/cli.hpp"
#include "qcf/multiparty/tournament.hpp"

namespace qcf::cli {

Format format_from_string(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw std::invalid_argument("unknown format '" + s + "'");
}

std::string to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::table: return "table";
  }
  return "json";
}

Json make_record(const RunConfig& config, const Json& params) {
  Json echo = params;
  echo["format"] = to_string(config.format);
  Json r = Json::object();
  r["version"] = QCF_VERSION;
  r["command"] = config.command;
  if (!config.verb.empty()) r["verb"] = config.verb;
  r["seed"] = config.seed;
  r["params"] = echo;
  return r;
}

namespace {

double parse_number(const std::string& s, const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(x)) throw std::invalid_argument("bad sweep '" + text + "'");
  return x;
}

}  // namespace

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad sweep '" + text + "': expected key=...");
  Sweep out;
  out.key = text.substr(0, eq);
  const std::string body = text.substr(eq + 1);
  const auto dots = body.find("..");
  if (dots == std::string::npos) {
    std::stringstream s(body);
    for (std::string item; std::getline(s, item, ',');) out.values.push_back(parse_number(item, text));
  } else {
    const auto x = body.find('x', dots);
    if (x == std::string::npos) throw std::invalid_argument("bad sweep '" + text + "': expected start..endxfactor");
    const double start = parse_number(body.substr(0, dots), text);
    const double end = parse_number(body.substr(dots + 2, x - dots - 2), text);
    const double factor = parse_number(body.substr(x + 1), text);
    if (!(factor > 1.0) || !(start > 0.0) || end < start)
      throw std::invalid_argument("bad sweep '" + text + "': need 0 < start <= end and factor > 1");
    for (double v = start; v <= end * (1 + 1e-12); v *= factor) out.values.push_back(v);
  }
  if (out.values.empty()) throw std::invalid_argument("bad sweep '" + text + "': no values");
  return out;
}

// ---- rendering ----

namespace {

std::string cell(const Json& j, bool full) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_float()) {
    if (full) return j.dump();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", j.get<double>());
    return buf;
  }
  return j.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

const Json& field(const Json& record, const std::string& key) {
  static const Json null;
  const auto it = record.find(key);
  return it == record.end() ? null : *it;
}

}  // namespace

std::string render(const Output& output, Format format) {
  std::ostringstream s;
  if (format == Format::json) {
    for (const Json& r : output.records) s << r.dump() << '\n';
    return s.str();
  }
  if (format == Format::csv) {
    for (std::size_t c = 0; c < output.columns.size(); ++c) s << (c ? "," : "") << output.columns[c];
    s << '\n';
    for (const Json& r : output.records) {
      for (std::size_t c = 0; c < output.columns.size(); ++c)
        s << (c ? "," : "") << csv_escape(cell(field(r, output.columns[c]), true));
      s << '\n';
    }
    return s.str();
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back(output.columns);
  for (const Json& r : output.records) {
    std::vector<std::string> row;
    for (const auto& c : output.columns) row.push_back(cell(field(r, c), false));
    rows.push_back(row);
  }
  std::vector<std::size_t> width(output.columns.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (c) line += "  ";
      line += rows[i][c] + std::string(width[c] - rows[i][c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    s << line << '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);
      s << std::string(total, '-') << '\n';
    }
  }
  return s.str();
}

// ---- front end ----

namespace {

long long as_integer(double x, const std::string& key) {
  if (std::floor(x) != x) throw std::invalid_argument("sweep value for " + key + " must be an integer");
  return static_cast<long long>(x);
}

template <class P, class Set>
std::vector<P> expand(const P& base, const std::string& sweep, const std::vector<std::string>& keys, Set set) {
  if (sweep.empty()) return {base};
  const Sweep sw = parse_sweep(sweep);
  if (std::find(keys.begin(), keys.end(), sw.key) == keys.end())
    throw std::invalid_argument("cannot sweep '" + sw.key + "' here");
  std::vector<P> out;
  for (double v : sw.values) {
    P p = base;
    set(p, sw.key, v);
    out.push_back(p);
  }
  return out;
}

std::string default_name(const RunConfig& config) {
  std::string name = config.command;
  if (!config.verb.empty()) name += "-" + config.verb;
  switch (config.format) {
    case Format::json: return name + ".jsonl";
    case Format::csv: return name + ".csv";
    case Format::table: return name + ".txt";
  }
  return name;
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  const char* env = std::getenv("QCF_OUTPUT_DIR");
  const std::string dir = env ? env : "";
  fs::path path;
  if (!config.output.empty()) {
    path = config.output;
    if (path.is_relative() && !dir.empty()) path = fs::path(dir) / path;
  } else if (!dir.empty()) {
    path = fs::path(dir) / default_name(config);
  } else {
    out << text;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
  err << "wrote " << path.string() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds, SDP solves and simulations for multiparty quantum coin flipping.", "qcf"};
  app.set_version_flag("--version", QCF_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "json";
  std::string sweep;
  app.add_option("--seed", config.seed, "RNG seed, recorded in every record")->capture_default_str();
  app.add_option("--format", format, "json (one record per line), csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--output", config.output, "output file; relative paths resolve against $QCF_OUTPUT_DIR");
  app.add_option("--jobs", config.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--sweep", sweep, "geometric sweep key=start..endxfactor, or key=a,b,c");

  PenaltyParams pen;
  auto* penalty = app.add_subcommand("penalty", "Alice and Bob bounds for the penalty coin flip");
  penalty->add_option("--v", pen.v, "penalty, at least 4");
  penalty->add_option("--tolerance", pen.tolerance, "solver gap tolerance")->capture_default_str();
  penalty->add_option("--max-iterations", pen.max_iterations, "solver iteration cap")->capture_default_str();

  TournamentParams tour;
  auto* tournament = app.add_subcommand("tournament", "analytic bias bound and Monte Carlo of the tournament");
  tournament->add_option("--k", tour.k, "players")->capture_default_str();
  tournament->add_option("--g", tour.g, "honest players")->capture_default_str();
  tournament->add_option("--runs", tour.runs, "Monte Carlo runs")->capture_default_str();
  tournament->add_option("--adversary", tour.adversary, "adversary preset")
      ->check(CLI::IsMember(multiparty::adversary_presets()))
      ->capture_default_str();
  tournament->add_option("--bins", tour.bins, "bins per lightest-bin round")->capture_default_str();
  tournament->add_option("--threshold-factor", tour.threshold_factor, "committee size factor")->capture_default_str();
  tournament->add_option("--bin-strategy", tour.bin_strategy, "pile or split")
      ->check(CLI::IsMember({"pile", "split"}))
      ->capture_default_str();

  LowerBoundParams lb;
  std::vector<std::string> lb_args;
  auto* lower = app.add_subcommand("lowerbound", "protocol validation, optimal cheating and lower bounds");
  lower->add_option("args", lb_args, "[validate|cheat|kitaev-check|report|kparty-bound] protocol files");
  lower->add_flag("--analytic", lb.analytic, "analytic k-party bound instead of a file");
  lower->add_option("--k", lb.k, "parties for the analytic bound")->capture_default_str();
  lower->add_option("--g", lb.g, "honest group size for the analytic bound")->capture_default_str();
  lower->add_option("--cheater", lb.cheater, "alice or bob")->check(CLI::IsMember({"alice", "bob"}))->capture_default_str();
  lower->add_option("--target", lb.target, "forced outcome")->capture_default_str();
  lower->add_option("--tolerance", lb.tolerance, "solver gap tolerance")->capture_default_str();

  BroadcastParams bc;
  std::string bc_verb;
  auto* bcast = app.add_subcommand("broadcast", "quantum broadcast channel emulations");
  bcast->add_option("verb", bc_verb, "emulate, classical, epr or teleport")
      ->required()
      ->check(CLI::IsMember({"emulate", "classical", "epr", "teleport"}));
  bcast->add_option("--k", bc.k, "parties")->capture_default_str();
  bcast->add_option("--bit", bc.bit, "bit for classical")->capture_default_str();
  bcast->add_option("--i", bc.i, "first party for epr and teleport")->capture_default_str();
  bcast->add_option("--j", bc.j, "second party for epr and teleport")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_arguments;
  }

  try {
    config.format = format_from_string(format);
    Output result;
    if (penalty->parsed()) {
      config.command = "penalty";
      if (penalty->count("--v") == 0 && sweep.empty()) throw std::invalid_argument("penalty: --v is required");
      const auto ps = expand(pen, sweep, {"v"}, [](PenaltyParams& p, const std::string&, double v) { p.v = v; });
      result = cmd_penalty(config, ps);
    } else if (tournament->parsed()) {
      config.command = "tournament";
      const auto ps = expand(tour, sweep, {"k", "g", "runs"}, [](TournamentParams& p, const std::string& key, double v) {
        if (key == "k") p.k = as_integer(v, key);
        if (key == "g") p.g = as_integer(v, key);
        if (key == "runs") p.runs = as_integer(v, key);
      });
      result = cmd_tournament(config, ps);
    } else if (lower->parsed()) {
      config.command = "lowerbound";
      static const std::vector<std::string> verbs = {"validate", "cheat", "kitaev-check", "report", "kparty-bound"};
      std::vector<std::string> files = lb_args;
      if (!files.empty() && std::find(verbs.begin(), verbs.end(), files.front()) != verbs.end()) {
        config.verb = files.front();
        files.erase(files.begin());
      }
      const bool analytic = lb.analytic || config.verb == "kparty-bound";
      if (analytic) {
        if (!files.empty()) throw std::invalid_argument("lowerbound: the analytic bound takes no files");
        lb.analytic = true;
        const auto ps = expand(lb, sweep, {"k", "g"}, [](LowerBoundParams& p, const std::string& key, double v) {
          (key == "k" ? p.k : p.g) = as_integer(v, key);
        });
        result = cmd_lowerbound(config, ps);
      } else {
        if (files.empty()) throw std::invalid_argument("lowerbound: give a protocol file or --analytic");
        if (!sweep.empty()) throw std::invalid_argument("lowerbound: sweeps need --analytic");
        std::vector<LowerBoundParams> ps;
        for (const auto& f : files) {
          LowerBoundParams p = lb;
          p.file = f;
          ps.push_back(p);
        }
        result = cmd_lowerbound(config, ps);
      }
    } else if (bcast->parsed()) {
      config.command = "broadcast";
      config.verb = bc_verb;
      const auto ps = expand(bc, sweep, {"k"}, [](BroadcastParams& p, const std::string& key, double v) {
        p.k = static_cast<int>(as_integer(v, key));
      });
      result = cmd_broadcast(config, ps);
    }
    emit(config, render(result, config.format), out, err);
    for (const auto& d : result.diagnostics) err << d << '\n';
    return result.code;
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const JsonFormatError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return exit_malformed_input;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_arguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_arguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qcf::cli
