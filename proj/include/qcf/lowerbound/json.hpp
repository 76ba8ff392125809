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

#ifndef QCF_LOWERBOUND_JSON_HPP
#define QCF_LOWERBOUND_JSON_HPP

#include <string>
#include <variant>

#include "qcf/core/json.hpp"
#include "qcf/lowerbound/cheat.hpp"

namespace qcf::lowerbound {

using AnyProtocol = std::variant<TwoPartyProtocol, KPartyProtocol>;

/*
 * {"type": "two-party", "name", "dims": {"A", "M", "B"},
 *  "alice_unitaries": [...], "bob_unitaries": [...],
 *  "alice_projectors": [P0, P1], "bob_projectors": [P0, P1]}
 *
 * {"type": "k-party", "name", "dims": {"parties": [...], "M"},
 *  "turns": [...], "unitaries": [...], "projectors": [[P0, P1], ...]}
 *
 * Matrices use the core format; parties are numbered from 0.
 */
Json to_json(const TwoPartyProtocol& p);
Json to_json(const KPartyProtocol& p);
Json to_json(const AnyProtocol& p);

/// Throws JsonFormatError naming the offending path, including shape errors.
AnyProtocol protocol_from_json(const Json& j);
AnyProtocol load_protocol(const std::string& path);
void save_protocol(const AnyProtocol& p, const std::string& path);

Json to_json(const ValidationReport& r);
Json to_json(const CheatResult& r);
Json to_json(const KitaevCheck& k);
Json to_json(const FSequence& f);
Json to_json(const KPartyCheck& k);
Json to_json(const KPartyBound& b);
Json to_json(const GroupBound& g);

}  // namespace qcf::lowerbound

#endif  // QCF_LOWERBOUND_JSON_HPP
