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

#ifndef QCF_LOWERBOUND_LIBRARY_HPP
#define QCF_LOWERBOUND_LIBRARY_HPP

#include <string>
#include <vector>

#include "qcf/lowerbound/protocol.hpp"

namespace qcf::lowerbound {

/// Alice flips a coin on A, copies it to M; Bob copies M to B.
TwoPartyProtocol alice_announces();

/// Alice sends a, Bob answers a fresh b, both output a xor b.
TwoPartyProtocol sequential_xor();

/*
 * The two-party penalty protocol with the measurements dilated:
 *
 *   A = a_reg(2) (x) A_q(3) (x) A_s(3),  M = M_q(3) (x) M_bit(2),
 *   B = B_q(3) (x) b_reg(2) (x) flag(2)
 *
 * Round 1: Alice prepares sum_a |a>|psi_a> on (a_reg, A_q, A_s) and swaps
 * A_s with M_q, so nothing Bob leaves in M reaches the commitment. Bob keeps the
 * received qutrit in B_q and sends a fresh b in M_bit. Round 2: Alice turns
 * a_reg into a xor b, sends a and her qutrit; Bob raises flag if the pair
 * is not |psi_a> and writes a xor b into b_reg. Abort is flag = 1.
 */
TwoPartyProtocol penalty_protocol(double v);

/// k = 3: party 0 flips, the others copy its message.
KPartyProtocol party_announces();

/// k = 3: each party xors a private coin into M, then each copies M.
KPartyProtocol round_robin_xor();

std::vector<std::string> two_party_names();
std::vector<std::string> kparty_names();
/// Names from two_party_names(); throws std::invalid_argument otherwise.
TwoPartyProtocol two_party_by_name(const std::string& name);
KPartyProtocol kparty_by_name(const std::string& name);

}  // namespace qcf::lowerbound

#endif  // QCF_LOWERBOUND_LIBRARY_HPP
