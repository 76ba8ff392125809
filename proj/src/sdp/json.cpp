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

#include "qcf/sdp/json.hpp"

namespace qcf::sdp {

Json to_json(const Problem& p) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    blocks.push_back({{"name", p.blocks()[i].name},
                      {"layout", layout_to_json(p.blocks()[i].layout)},
                      {"objective", matrix_to_json(p.objective()[i])}});
  }
  Json constraints = Json::array();
  for (const auto& c : p.constraints()) {
    Json terms = Json::array();
    for (const auto& t : c.terms) {
      Json jt = {{"block", t.block}, {"coeff", t.coeff}, {"keep", t.keep}};
      if (t.sandwich.size() != 0) {
        jt["sandwich"] = matrix_to_json(t.sandwich);
        jt["target"] = layout_to_json(t.target);
      }
      terms.push_back(std::move(jt));
    }
    constraints.push_back({{"name", c.name}, {"rhs", matrix_to_json(c.rhs)}, {"terms", std::move(terms)}});
  }
  return {{"blocks", std::move(blocks)}, {"constraints", std::move(constraints)}, {"offset", p.offset()}};
}

Problem problem_from_json(const Json& j) {
  Problem p;
  const Json& blocks = require(j, "blocks", "problem");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string path = "problem.blocks[" + std::to_string(i) + "]";
    const std::string name = require(blocks[i], "name", path).get<std::string>();
    p.add_block(name, layout_from_json(require(blocks[i], "layout", path), path + ".layout"));
    if (blocks[i].contains("objective")) {
      p.set_objective(name, matrix_from_json(blocks[i]["objective"], path + ".objective"));
    }
  }
  const Json& constraints = require(j, "constraints", "problem");
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const std::string path = "problem.constraints[" + std::to_string(c) + "]";
    const std::string name = require(constraints[c], "name", path).get<std::string>();
    p.add_constraint(name, matrix_from_json(require(constraints[c], "rhs", path), path + ".rhs"));
    const Json& terms = require(constraints[c], "terms", path);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string tp = path + ".terms[" + std::to_string(k) + "]";
      Term t;
      t.block = require(terms[k], "block", tp).get<std::string>();
      t.coeff = terms[k].value("coeff", 1.0);
      t.keep = require(terms[k], "keep", tp).get<std::vector<int>>();
      if (terms[k].contains("sandwich")) {
        t.sandwich = matrix_from_json(terms[k]["sandwich"], tp + ".sandwich");
        t.target = layout_from_json(require(terms[k], "target", tp), tp + ".target");
      }
      p.add_term(name, std::move(t));
    }
  }
  p.set_offset(j.value("offset", 0.0));
  p.validate();
  return p;
}

Json to_json(const DualCertificate& cert) {
  Json m = Json::object();
  for (const auto& [name, y] : cert.multipliers) m[name] = matrix_to_json(y);
  return {{"multipliers", std::move(m)}, {"claimed_value", cert.claimed_value}};
}

DualCertificate certificate_from_json(const Json& j) {
  DualCertificate cert;
  const Json& m = require(j, "multipliers", "certificate");
  for (auto it = m.begin(); it != m.end(); ++it) {
    cert.multipliers[it.key()] = matrix_from_json(it.value(), "certificate.multipliers." + it.key());
  }
  cert.claimed_value = j.value("claimed_value", 0.0);
  return cert;
}

Json to_json(const Solution& s) {
  Json blocks = Json::array();
  for (const auto& x : s.primal_blocks) blocks.push_back(matrix_to_json(x));
  return {{"status", to_string(s.status)},
          {"primal_value", s.primal_value},
          {"dual_value", s.dual_value},
          {"iterations", s.iterations},
          {"residuals", {{"primal", s.residuals.primal}, {"dual", s.residuals.dual}, {"gap", s.residuals.gap}}},
          {"primal_blocks", std::move(blocks)},
          {"dual", to_json(s.dual)},
          {"message", s.message}};
}

Solution solution_from_json(const Json& j) {
  Solution s;
  s.status = status_from_string(require(j, "status", "solution").get<std::string>());
  s.primal_value = require(j, "primal_value", "solution").get<double>();
  s.dual_value = j.value("dual_value", 0.0);
  s.iterations = j.value("iterations", 0);
  if (j.contains("residuals")) {
    s.residuals.primal = j["residuals"].value("primal", 0.0);
    s.residuals.dual = j["residuals"].value("dual", 0.0);
    s.residuals.gap = j["residuals"].value("gap", 0.0);
  }
  const Json& blocks = require(j, "primal_blocks", "solution");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    s.primal_blocks.push_back(matrix_from_json(blocks[i], "solution.primal_blocks[" + std::to_string(i) + "]"));
  }
  if (j.contains("dual")) s.dual = certificate_from_json(j["dual"]);
  s.message = j.value("message", "");
  return s;
}

}  // namespace qcf::sdp
