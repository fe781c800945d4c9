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

#include <cmath>

#include "qstrat/errors.hpp"
#include "qstrat/games.hpp"

namespace qstrat {

CoinFlipReport coinflip_analyze(const MeasuringRep& alice, const MeasuringRep& bob,
                                const SdpOptions& options) {
  if (alice.kind != RepKind::strategy || bob.kind != RepKind::costrategy) {
    throw ProtocolShapeError("coin flipping pairs Alice's strategy with Bob's co-strategy");
  }
  for (const auto* m : {&alice, &bob}) {
    for (const std::string& label : {std::string("0"), std::string("1"), kAbort}) {
      if (!m->outcomes.contains(label)) {
        throw ProtocolShapeError("outcome '" + label + "' missing from the " +
                                 (m == &alice ? "Alice" : "Bob") + " representation");
      }
    }
  }
  const OutcomeDistribution honest = distribution_via_reps(alice, bob);
  CoinFlipReport r;
  r.bound = 1.0 / std::sqrt(2.0);
  for (const auto& [pair, p] : honest.entries) {
    if (pair.first == kAbort || pair.second == kAbort) {
      r.honest_abort += p;
    } else if (pair.first != pair.second) {
      r.honest_disagreement += p;
    }
  }
  r.honest_ok = r.honest_abort <= kHonestTol && r.honest_disagreement <= kHonestTol;
  r.bound_ok = true;
  for (const std::string b : {"0", "1"}) {
    CoinFlipOutcomeReport o;
    o.outcome = b;
    o.honest_agreement = honest.at(b, b);
    r.honest_ok = r.honest_ok && std::abs(o.honest_agreement - 0.5) <= kHonestTol;
    o.p_alice = max_forced_output(alice, b, Direction::primal, options).probability;
    o.p_bob = max_forced_output(bob, b, Direction::primal, options).probability;
    o.p_alice_dual = max_forced_output(alice, b, Direction::dual, options).probability;
    o.p_bob_dual = max_forced_output(bob, b, Direction::dual, options).probability;
    o.bound_ok = std::max(o.p_alice, o.p_bob) >= r.bound - kCoinFlipSlack;
    o.product_ok = o.p_alice * o.p_bob >= 0.5 - kCoinFlipSlack;
    r.bound_ok = r.bound_ok && o.bound_ok;
    r.outcomes.push_back(o);
  }
  return r;
}

}  // namespace qstrat
