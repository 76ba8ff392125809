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

#ifndef QCF_SDP_JSON_HPP
#define QCF_SDP_JSON_HPP

#include "qcf/core/json.hpp"
#include "qcf/sdp/solver.hpp"

namespace qcf::sdp {

Json to_json(const Problem& p);
Problem problem_from_json(const Json& j);

Json to_json(const DualCertificate& cert);
DualCertificate certificate_from_json(const Json& j);

/// Solutions serialize without the dual slacks (they follow from the multipliers).
Json to_json(const Solution& s);
Solution solution_from_json(const Json& j);

}  // namespace qcf::sdp

#endif  // QCF_SDP_JSON_HPP
