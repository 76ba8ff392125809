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

#ifndef QCF_CLI_CLI_HPP
#define QCF_CLI_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcf/core/json.hpp"

namespace qcf::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_invalid_arguments = 2,
  exit_non_convergence = 3,
  exit_malformed_input = 4,
};

enum class Format { json, csv, table };

Format format_from_string(const std::string& s);
std::string to_string(Format f);

/// Carries the exit code the command should terminate with.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct RunConfig {
  std::string command;  // "penalty", "tournament", "lowerbound", "broadcast"
  std::string verb;     // subverb, empty when the command has none
  std::uint64_t seed = 1;
  Format format = Format::json;
  std::string output;  // empty: stdout, or the default directory
  int jobs = 1;
};

/*
 * Records of one invocation. Each record is a JSON object with "version",
 * "command", "seed" and "params" plus the command's result fields; the
 * columns are the flat fields emitted for csv and table output.
 */
struct Output {
  std::vector<std::string> columns;
  std::vector<Json> records;
  int code = exit_ok;                    // nonzero when some record is unusable
  std::vector<std::string> diagnostics;  // for the error stream
};

/// Stamps version, command, seed and the parameter echo onto a record.
Json make_record(const RunConfig& config, const Json& params);

/// "k=8..4096x2" -> ("k", {8, 16, ..., 4096}). Factors must exceed 1.
struct Sweep {
  std::string key;
  std::vector<double> values;
};
Sweep parse_sweep(const std::string& text);

struct PenaltyParams {
  double v = 4.0;
  double tolerance = 1e-7;
  int max_iterations = 500;
};
Output cmd_penalty(const RunConfig& config, const std::vector<PenaltyParams>& params);

struct TournamentParams {
  long long k = 8;
  long long g = 1;
  long long runs = 10000;
  std::string adversary = "greedy";
  int bins = 2;
  double threshold_factor = 4.0;
  std::string bin_strategy = "pile";
};
Output cmd_tournament(const RunConfig& config, const std::vector<TournamentParams>& params);

struct LowerBoundParams {
  std::string file;
  bool analytic = false;
  long long k = 2;
  long long g = 1;
  std::string cheater = "bob";
  int target = 1;
  double tolerance = 1e-8;
};
/// Verbs: "report" (default), "validate", "cheat", "kitaev-check", "kparty-bound".
Output cmd_lowerbound(const RunConfig& config, const std::vector<LowerBoundParams>& params);

struct BroadcastParams {
  int k = 3;
  int bit = 0;
  int i = 0;
  int j = 1;
};
/// Verbs: "emulate", "classical", "epr", "teleport".
Output cmd_broadcast(const RunConfig& config, const std::vector<BroadcastParams>& params);

std::string render(const Output& output, Format format);

/// Full front end; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcf::cli

#endif  // QCF_CLI_CLI_HPP
