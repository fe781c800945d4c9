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

// Joint outcome distributions of a strategy interacting with a co-strategy,
// from representations and from direct simulation.

#include <map>
#include <string>
#include <utility>

#include "qstrat/strategy.hpp"

namespace qstrat {

struct OutcomeDistribution {
  /// (strategy outcome, co-strategy outcome) -> probability.
  std::map<std::pair<std::string, std::string>, double> entries;

  double total() const;
  double at(const std::string& a, const std::string& b) const;
  /// Marginal over the co-strategy outcome.
  std::map<std::string, double> strategy_marginal() const;
  std::map<std::string, double> costrategy_marginal() const;
};

/// Largest entrywise difference; outcome pairs missing on one side count as 0.
double max_gap(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// p(a, b) = Re <Q_a, R_b>.
OutcomeDistribution distribution_via_reps(const MeasuringRep& strategy,
                                          const MeasuringRep& costrategy);

/// Evolves the joint memory state turn by turn and measures P_a (x) Q_b.
/// Pure initial states are carried as vectors, mixed ones as density
/// operators.
OutcomeDistribution simulate_interaction(const StrategyDescription& strategy,
                                         const CoStrategyDescription& costrategy);

}  // namespace qstrat
