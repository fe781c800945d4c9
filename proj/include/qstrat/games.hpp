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

// Optimization over strategy sets: maximum forced-output probabilities in
// primal and dual form, values of zero-sum refereed games, and the strong
// coin-flipping analyzer.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qstrat/interaction.hpp"
#include "qstrat/sdp.hpp"
#include "qstrat/strategy.hpp"

namespace qstrat {

enum class Direction { primal, dual };
std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

/// Variables S_1..S_n of the strategy cone on outputs Y and inputs X:
/// tr_{Y_k} S_k = S_{k-1} (x) I_{X_k}. The caller constrains `top`, the
/// expression tr_{Y_1} S_1 on X_1 (to I for strategies).
struct StrategyChain {
  std::vector<LinExpr> levels;  // S_1..S_n
  LinExpr top;
};
StrategyChain add_strategy_chain(SdpProblem& p, const SpaceList& outputs,
                                 const SpaceList& inputs, const std::string& prefix);

/// Variables Q_k = P_k (x) I_{Y_k} and tr_{X_k} P_k = Q_{k-1} for the
/// co-strategy cone. `base` is the scalar tr(P_1) (1 for co-strategies).
struct CoStrategyChain {
  std::vector<LinExpr> q;  // Q_1..Q_n
  std::vector<LinExpr> p;  // P_1..P_n
  LinExpr base;
};
CoStrategyChain add_costrategy_chain(SdpProblem& p, const SpaceList& outputs,
                                     const SpaceList& inputs, const std::string& prefix);

struct ForcedOutputResult {
  double probability = 0.0;  // clamped to [0, 1]
  double raw_value = 0.0;
  Direction direction = Direction::primal;
  SdpStatus status = SdpStatus::max_iterations;
  double duality_gap = 0.0;
  /// Primal: the optimal opposing (co-)strategy. Dual: the scaled
  /// representation S = pR dominating the outcome operator.
  StrategyRep witness;
  SdpSolution solution;
};

/// The program behind max_forced_output, for inspection and export.
SdpProblem forced_output_problem(const MeasuringRep& m, const std::string& outcome,
                                 Direction direction);
ForcedOutputResult max_forced_output(const MeasuringRep& m, const std::string& outcome,
                                     Direction direction, const SdpOptions& options = {});

/// A measuring co-strategy on X_k = A_k (x) B_k and Y_k = C_k (x) D_k with
/// Alice's payoff per outcome. Operators act on
/// C_1 D_1 .. C_n D_n A_1 B_1 .. A_n B_n.
struct Referee {
  std::vector<std::size_t> a_dims, b_dims, c_dims, d_dims;
  std::map<std::string, HermOp> outcomes;
  std::map<std::string, double> payoff;

  std::size_t turns() const { return a_dims.size(); }
  SpaceProfile profile() const;
  /// The referee's space with A/B/C/D factors split out.
  SpaceList fine_space() const;
  SpaceProfile alice_profile() const;  // inputs A_k, outputs C_k
  SpaceProfile bob_profile() const;    // inputs B_k, outputs D_k
  MeasuringRep rep() const;
  /// Throws RefereeModelError.
  void check(double tol = 1e-7) const;
};

/// Builds a referee from a measuring co-strategy description on the
/// combined spaces.
Referee make_referee(const std::vector<std::size_t>& a_dims,
                     const std::vector<std::size_t>& b_dims,
                     const std::vector<std::size_t>& c_dims,
                     const std::vector<std::size_t>& d_dims, const MeasuringRep& rep,
                     std::map<std::string, double> payoff);

struct GameValueResult {
  double value = 0.0;  // Alice's optimal expected payoff
  double raw_value = 0.0;
  /// Optimal inner program value: Bob's maximal winning probability for
  /// a win/lose payoff.
  double opponent_value = 0.0;
  double duality_gap = 0.0;
  SdpStatus status = SdpStatus::max_iterations;
  /// Optimal strategy of the hard-wired player and its validation report.
  StrategyRep strategy;
  ValidationReport strategy_report;
  /// The scaled co-strategy Q_n bounding the opponent.
  HermOp costrategy_witness;
  bool swapped = false;
};

/// Alice hard-wired (maximin), or Bob hard-wired when `swap_roles` (minimax).
SdpProblem game_value_problem(const Referee& ref, bool swap_roles = false);
GameValueResult game_value(const Referee& ref, bool swap_roles = false,
                           const SdpOptions& options = {});

struct MinMaxResult {
  double maximin = 0.0;
  double minimax = 0.0;
  GameValueResult alice;
  GameValueResult bob;
};
MinMaxResult minmax_check(const Referee& ref, const SdpOptions& options = {});

inline const std::string kAbort = "abort";

struct CoinFlipOutcomeReport {
  std::string outcome;
  double honest_agreement = 0.0;  // <A_b, B_b>
  double p_alice = 0.0;           // max prob. a cheating Bob forces Alice to b
  double p_bob = 0.0;             // max prob. a cheating Alice forces Bob to b
  double p_alice_dual = 0.0;
  double p_bob_dual = 0.0;
  bool bound_ok = false;    // max(p_A, p_B) >= 1/sqrt(2) - slack
  bool product_ok = false;  // p_A p_B >= 1/2 - slack
};

struct CoinFlipReport {
  std::vector<CoinFlipOutcomeReport> outcomes;  // "0" then "1"
  double honest_abort = 0.0;
  double honest_disagreement = 0.0;
  bool honest_ok = false;  // agreement 1/2 each, no abort
  double bound = 0.0;      // 1/sqrt(2)
  bool bound_ok = false;
};

inline constexpr double kCoinFlipSlack = 1e-6;
inline constexpr double kHonestTol = 1e-9;

CoinFlipReport coinflip_analyze(const MeasuringRep& alice, const MeasuringRep& bob,
                                const SdpOptions& options = {});

}  // namespace qstrat
