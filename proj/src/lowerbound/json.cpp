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

#include "qcf/lowerbound/json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qcf/sdp/solver.hpp"

namespace qcf::lowerbound {

namespace {

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json a = Json::array();
  for (const Matrix& m : ms) {
    const auto nonzero = (m.array() != Complex(0.0)).count();
    a.push_back(4 * nonzero < m.size() ? sparse_matrix_to_json(m) : matrix_to_json(m));
  }
  return a;
}

std::vector<Matrix> matrices_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonFormatError(path + ": expected an array");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::array<Matrix, 2> pair_from_json(const Json& j, const std::string& path) {
  std::vector<Matrix> ms = matrices_from_json(j, path);
  if (ms.size() != 2) throw JsonFormatError(path + ": expected two projectors");
  return {ms[0], ms[1]};
}

Index positive(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_number_integer() || v.get<long long>() < 1) throw JsonFormatError(path + "." + key + ": expected a positive integer");
  return v.get<Index>();
}

Json residuals_to_json(const sdp::Residuals& r) { return {{"primal", r.primal}, {"dual", r.dual}, {"gap", r.gap}}; }

}  // namespace

Json to_json(const TwoPartyProtocol& p) {
  return {{"type", "two-party"},
          {"name", p.name},
          {"dims", {{"A", p.dim_a}, {"M", p.dim_m}, {"B", p.dim_b}}},
          {"alice_unitaries", matrices_to_json(p.alice_unitaries)},
          {"bob_unitaries", matrices_to_json(p.bob_unitaries)},
          {"alice_projectors", matrices_to_json({p.alice_projectors[0], p.alice_projectors[1]})},
          {"bob_projectors", matrices_to_json({p.bob_projectors[0], p.bob_projectors[1]})}};
}

Json to_json(const KPartyProtocol& p) {
  Json proj = Json::array();
  for (const auto& pair : p.projectors) proj.push_back(matrices_to_json({pair[0], pair[1]}));
  return {{"type", "k-party"},
          {"name", p.name},
          {"dims", {{"parties", p.party_dims}, {"M", p.dim_m}}},
          {"turns", p.turns},
          {"unitaries", matrices_to_json(p.unitaries)},
          {"projectors", proj}};
}

Json to_json(const AnyProtocol& p) {
  return std::visit([](const auto& q) { return to_json(q); }, p);
}

AnyProtocol protocol_from_json(const Json& j) {
  const std::string root = "protocol";
  if (!j.is_object()) throw JsonFormatError(root + ": expected an object");
  const Json& type = require(j, "type", root);
  if (!type.is_string()) throw JsonFormatError(root + ".type: expected a string");
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  const Json& dims = require(j, "dims", root);
  try {
    if (type == "two-party") {
      TwoPartyProtocol p;
      p.name = name;
      p.dim_a = positive(dims, "A", root + ".dims");
      p.dim_m = positive(dims, "M", root + ".dims");
      p.dim_b = positive(dims, "B", root + ".dims");
      p.alice_unitaries = matrices_from_json(require(j, "alice_unitaries", root), root + ".alice_unitaries");
      p.bob_unitaries = matrices_from_json(require(j, "bob_unitaries", root), root + ".bob_unitaries");
      p.alice_projectors = pair_from_json(require(j, "alice_projectors", root), root + ".alice_projectors");
      p.bob_projectors = pair_from_json(require(j, "bob_projectors", root), root + ".bob_projectors");
      p.check_shapes();
      return p;
    }
    if (type == "k-party") {
      KPartyProtocol p;
      p.name = name;
      const Json& parties = require(dims, "parties", root + ".dims");
      if (!parties.is_array() || parties.empty()) throw JsonFormatError(root + ".dims.parties: expected a non-empty array");
      for (std::size_t i = 0; i < parties.size(); ++i) {
        if (!parties[i].is_number_integer() || parties[i].get<long long>() < 1) {
          throw JsonFormatError(root + ".dims.parties[" + std::to_string(i) + "]: expected a positive integer");
        }
        p.party_dims.push_back(parties[i].get<Index>());
      }
      p.dim_m = positive(dims, "M", root + ".dims");
      const Json& turns = require(j, "turns", root);
      if (!turns.is_array()) throw JsonFormatError(root + ".turns: expected an array");
      for (std::size_t i = 0; i < turns.size(); ++i) {
        if (!turns[i].is_number_integer()) {
          throw JsonFormatError(root + ".turns[" + std::to_string(i) + "]: expected an integer");
        }
        p.turns.push_back(turns[i].get<int>());
      }
      p.unitaries = matrices_from_json(require(j, "unitaries", root), root + ".unitaries");
      const Json& proj = require(j, "projectors", root);
      if (!proj.is_array()) throw JsonFormatError(root + ".projectors: expected an array");
      for (std::size_t i = 0; i < proj.size(); ++i) {
        p.projectors.push_back(pair_from_json(proj[i], root + ".projectors[" + std::to_string(i) + "]"));
      }
      p.check_shapes();
      return p;
    }
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(root + ": " + e.what());
  }
  throw JsonFormatError(root + ".type: expected \"two-party\" or \"k-party\"");
}

namespace {

// Second pass over a document that failed to parse: where did it stop, and
// which top-level fields never appeared.
class PathTracker : public nlohmann::json_sax<Json> {
 public:
  std::string where = "protocol";
  std::set<std::string> top_keys;

  bool null() override { return done(); }
  bool boolean(bool) override { return done(); }
  bool number_integer(number_integer_t) override { return done(); }
  bool number_unsigned(number_unsigned_t) override { return done(); }
  bool number_float(number_float_t, const string_t&) override { return done(); }
  bool string(string_t&) override { return done(); }
  bool binary(binary_t&) override { return done(); }
  bool start_object(std::size_t) override {
    frames_.push_back({false, 0, ""});
    return true;
  }
  bool key(string_t& k) override {
    frames_.back().key = k;
    if (frames_.size() == 1) top_keys.insert(k);
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    return done();
  }
  bool start_array(std::size_t) override {
    frames_.push_back({true, 0, ""});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    return done();
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    where = path();
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };
  std::vector<Frame> frames_;

  bool done() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    return true;
  }
  std::string path() const {
    std::string p = "protocol";
    for (const Frame& f : frames_) p += f.array ? "[" + std::to_string(f.index) + "]" : (f.key.empty() ? "" : "." + f.key);
    return p;
  }
};

std::string truncation_message(const std::string& text) {
  PathTracker t;
  Json::sax_parse(text, &t);
  const auto& seen = t.top_keys;
  std::vector<std::string> required = {"type", "dims"};
  if (seen.count("alice_unitaries") || seen.count("bob_unitaries") || seen.count("alice_projectors") ||
      seen.count("bob_projectors"))
    required = {"alice_projectors", "alice_unitaries", "bob_projectors", "bob_unitaries", "dims", "type"};
  else if (seen.count("turns") || seen.count("unitaries") || seen.count("projectors"))
    required = {"dims", "projectors", "turns", "type", "unitaries"};
  std::string missing;
  for (const auto& k : required)
    if (!seen.count(k)) missing += (missing.empty() ? "" : ", ") + ("protocol." + k);
  std::string msg = "truncated or malformed at " + t.where;
  if (!missing.empty()) msg += "; missing " + missing;
  return msg;
}

}  // namespace

AnyProtocol load_protocol(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw JsonFormatError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonFormatError(path + ": " + truncation_message(text) + " (" + e.what() + ")");
  }
  return protocol_from_json(j);
}

void save_protocol(const AnyProtocol& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << to_json(p).dump(1) << "\n";
}

Json to_json(const ValidationReport& r) {
  Json conds = Json::array();
  for (const Condition& c : r.conditions) conds.push_back({{"name", c.name}, {"residual", c.residual}, {"holds", c.holds}});
  return {{"valid", r.valid}, {"p0", r.p0}, {"p1", r.p1}, {"p_abort", r.p_abort}, {"conditions", conds}};
}

Json to_json(const CheatResult& r) {
  return {{"cheater", to_string(r.cheater)},
          {"target", r.target},
          {"probability", r.probability},
          {"dual_bound", r.dual_bound},
          {"status", sdp::to_string(r.status)},
          {"iterations", r.iterations},
          {"residuals", residuals_to_json(r.residuals)}};
}

Json to_json(const KitaevCheck& k) {
  return {{"p_1star", k.p_1star}, {"p_star1", k.p_star1}, {"product", k.product}, {"p1", k.p1},
          {"pass", k.pass},       {"balanced", k.balanced}, {"max_pass", k.max_pass},
          {"alice", to_json(k.alice)}, {"bob", to_json(k.bob)}};
}

Json to_json(const FSequence& f) {
  return {{"f", f.f},
          {"dual_product", f.dual_product},
          {"p1", f.p1},
          {"starts_at_product", f.starts_at_product},
          {"monotone", f.monotone},
          {"ends_at_p1", f.ends_at_p1}};
}

Json to_json(const KPartyCheck& k) {
  return {{"p_b0", k.p[0]},
          {"p_b1", k.p[1]},
          {"product", {k.product[0], k.product[1]}},
          {"honest", {k.honest[0], k.honest[1]}},
          {"holds", {k.holds[0], k.holds[1]}},
          {"pass", k.pass}};
}

Json to_json(const KPartyBound& b) {
  return {{"k", b.k},
          {"q_min", b.q_min},
          {"bias_bound", b.bias_bound},
          {"expansion", b.expansion},
          {"expansion_holds", b.expansion_holds},
          {"one_minus_q_min", 1.0 - b.q_min}};
}

Json to_json(const GroupBound& g) {
  return {{"k", g.k}, {"g", g.g}, {"k_prime", g.k_prime}, {"bound", to_json(g.bound)}};
}

}  // namespace qcf::lowerbound
