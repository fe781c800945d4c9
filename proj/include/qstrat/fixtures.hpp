// Copyright 2026 The qstrat Authors
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

#pragma once

// Shipped protocol and referee instances.

#include <cstdint>

#include "qstrat/games.hpp"

namespace qstrat::fixtures {

/// Qubit commitment coin flip. Alice commits a uniform bit a as |0> or |+>,
/// Bob answers a uniform classical bit b, Alice reveals a, and both output
/// a xor b. Bob aborts when the commitment fails the {|psi_a>} test.
StrategyDescription coinflip_alice();
CoStrategyDescription coinflip_bob();

/// Classical exchange of bits a then b (copied, hence dephased), output
/// a xor b; never aborts.
StrategyDescription xor_alice();
CoStrategyDescription xor_bob();

/// One-turn referees on qubit factors with outcomes "a" (Alice wins,
/// payoff 1) and "b" (payoff 0).
Referee coin_ignoring_referee();
Referee alice_controlled_referee();
Referee matching_pennies_referee();
/// Random one-turn referee with factor dims 2 and a win/lose payoff.
Referee random_referee(std::uint64_t seed);

}  // namespace qstrat::fixtures
