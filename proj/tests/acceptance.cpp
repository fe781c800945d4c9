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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance and budget is pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "qstrat/fixtures.hpp"
#include "qstrat/games.hpp"
#include "qstrat/interaction.hpp"
#include "qstrat/sdp.hpp"
#include "qstrat/strategy.hpp"
#include "test_support.hpp"

namespace qstrat {
namespace {

constexpr double kVecTol = 1e-10;
constexpr double kVecBudget = 5.0;
constexpr int kVecInstances = 1000;

constexpr double kInteractTol = 1e-8;
constexpr double kInteractBudget = 60.0;
constexpr int kInteractPairs = 100;

constexpr double kValidateTol = 1e-8;
constexpr double kRoundTripTol = 1e-6;
constexpr double kPerturbation = 1e-3;
constexpr double kRoundTripBudget = 120.0;
constexpr int kRoundTripStrategies = 50;

constexpr double kDualityTol = 1e-5;
constexpr double kNetTol = 1e-3;
constexpr int kDualityReps = 25;
constexpr int kNetReps = 5;
constexpr int kNetSteps = 200;

constexpr double kHonestTol = 1e-9;
constexpr double kBiasSlack = 1e-6;

constexpr double kAnalyticTol = 1e-6;
constexpr double kMatrixGameTol = 1e-5;
constexpr double kMinMaxTol = 1e-5;
constexpr int kMinMaxReferees = 10;
constexpr double kGameBudget = 600.0;

constexpr double kSdpGapTol = 1e-7;
constexpr double kResolveTol = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict vec_identities() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  const auto t0 = Clock::now();
  double worst[4] = {0, 0, 0, 0};
  for (int t = 0; t < kVecInstances; ++t) {
    const std::size_t p = dim(rng), q = dim(rng), r = dim(rng), s = dim(rng);
    using testing::random_matrix;
    switch (t % 4) {
      case 0: {  // (A (x) B) vec(X) = vec(A X B^T)
        const auto a = random_matrix(p, q, rng), b = random_matrix(r, s, rng);
        const auto x = random_matrix(q, s, rng);
        worst[0] = std::max(worst[0], max_abs_diff(kron(a, b) * vec(x),
                                                   vec(a * x * b.transpose())));
        break;
      }
      case 1: {  // tr_X vec(A)vec(B)^* = AB^*, tr_Y vec(A)vec(B)^* = (B^*A)^T
        const auto a = random_matrix(p, q, rng), b = random_matrix(p, q, rng);
        const ComplexMatrix g = vec(a) * vec(b).adjoint();
        const SpaceList yx{{"Y", p}, {"X", q}};
        worst[1] = std::max({worst[1], max_abs_diff(partial_trace(g, yx, {"X"}), a * b.adjoint()),
                             max_abs_diff(partial_trace(g, yx, {"Y"}),
                                          (b.adjoint() * a).transpose())});
        break;
      }
      case 2: {  // vec(I)^* (A (x) B) vec(I) = tr(A B^T)
        const auto a = random_matrix(p, p, rng), b = random_matrix(p, p, rng);
        const ComplexVector v =
            vec(ComplexMatrix::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)));
        const Complex lhs = (v.adjoint() * kron(a, b) * v)(0, 0);
        worst[2] = std::max(worst[2], std::abs(lhs - (a * b.transpose()).trace()));
        break;
      }
      default: {  // J(Phi) = tr_Z vec(A)vec(A)^* for Phi(X) = tr_Z A X A^*
        const auto a = random_matrix(r * s, p, rng);
        const ComplexMatrix want =
            testing::choi_brute_force(testing::stinespring_channel(a, r, s), p);
        const ComplexVector va = vec(a);
        const SpaceList yzx{{"Y", r}, {"Z", s}, {"X", p}};
        worst[3] = std::max(worst[3],
                            max_abs_diff(partial_trace(va * va.adjoint(), yzx, {"Z"}), want));
      }
    }
  }
  const double secs = seconds_since(t0);
  const double err = std::max({worst[0], worst[1], worst[2], worst[3]});
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d instances, max errors %.2e %.2e %.2e %.2e (tol %.0e), %.2f s (budget %.0f s)",
                kVecInstances, worst[0], worst[1], worst[2], worst[3], kVecTol, secs, kVecBudget);
  return {err <= kVecTol && secs < kVecBudget, buf};
}

SpaceProfile random_profile(std::mt19937_64& rng, std::size_t n, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::vector<std::size_t> in, out;
  for (std::size_t k = 0; k < n; ++k) {
    in.push_back(dim(rng));
    out.push_back(dim(rng));
  }
  return make_profile(in, out);
}

Verdict interaction_equivalence() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<std::size_t> turns(1, 3), outcomes(1, 3);
  const auto t0 = Clock::now();
  double gap = 0.0, norm = 0.0;
  for (int t = 0; t < kInteractPairs; ++t) {
    const SpaceProfile prof = random_profile(rng, turns(rng), 3);
    const auto s = random_strategy(prof, outcomes(rng), rng());
    const auto c = random_costrategy(prof, outcomes(rng), rng());
    const OutcomeDistribution reps =
        distribution_via_reps(represent_measuring_strategy(s), represent_measuring_costrategy(c));
    const OutcomeDistribution sim = simulate_interaction(s, c);
    gap = std::max(gap, max_gap(reps, sim));
    norm = std::max({norm, std::abs(reps.total() - 1.0), std::abs(sim.total() - 1.0)});
  }
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d pairs, max entry gap %.2e, max |sum - 1| %.2e (tol %.0e), %.1f s (budget %.0f s)",
                kInteractPairs, gap, norm, kInteractTol, secs, kInteractBudget);
  return {gap <= kInteractTol && norm <= kInteractTol && secs < kInteractBudget, buf};
}

Verdict synthesis_round_trip() {
  std::mt19937_64 rng(3003);
  std::uniform_int_distribution<std::size_t> turns(1, 3);
  const auto t0 = Clock::now();
  int accepted = 0, rejected_scaled = 0, rejected_perturbed = 0;
  double worst = 0.0;
  for (int t = 0; t < kRoundTripStrategies; ++t) {
    const SpaceProfile prof = random_profile(rng, turns(rng), 2);
    const StrategyRep rep = represent_strategy(random_strategy(prof, 0, rng()));
    if (validate(rep, kValidateTol).valid) ++accepted;
    const StrategyRep again = represent_strategy(synthesize(rep).description);
    worst = std::max(worst, max_abs_diff(again.op.matrix(), rep.op.matrix()));
    if (!validate(rep.op * 2.0, prof, RepKind::strategy, kValidateTol).valid) ++rejected_scaled;
    // Shifts the (x = 0) entry of the innermost tr_Y constraint.
    ComplexMatrix bumped = rep.op.matrix();
    bumped(0, 0) += kPerturbation;
    if (!validate(HermOp(prof.rep_space(), bumped), prof, RepKind::strategy, kValidateTol).valid) {
      ++rejected_perturbed;
    }
  }
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d/%d valid, round-trip err %.2e (tol %.0e), rejected %d scaled + %d perturbed, "
                "%.1f s (budget %.0f s)",
                accepted, kRoundTripStrategies, worst, kRoundTripTol, rejected_scaled,
                rejected_perturbed, secs, kRoundTripBudget);
  const int n = kRoundTripStrategies;
  return {accepted == n && worst <= kRoundTripTol && rejected_scaled == n &&
              rejected_perturbed == n && secs < kRoundTripBudget,
          buf};
}

// Pure co-strategies of one turn without memory send u and have
// representation I_Y (x) (uu*)^T; the net runs over the Bloch sphere.
double net_search(const HermOp& qa, std::size_t dy) {
  const double pi = std::acos(-1.0);
  double best = -1.0;
  const ComplexMatrix id =
      ComplexMatrix::Identity(static_cast<Eigen::Index>(dy), static_cast<Eigen::Index>(dy));
  for (int i = 0; i <= kNetSteps; ++i) {
    const double theta = pi * i / kNetSteps;
    for (int j = 0; j < 2 * kNetSteps; ++j) {
      ComplexVector u(2);
      u << std::cos(theta / 2), std::polar(std::sin(theta / 2), pi * j / kNetSteps);
      best = std::max(best, inner(qa.matrix(), kron(id, (u * u.adjoint()).transpose())).real());
    }
  }
  return best;
}

Verdict forced_output_duality() {
  std::mt19937_64 rng(4004);
  std::uniform_int_distribution<std::size_t> turns(1, 2);
  double duality = 0.0, net = 0.0;
  int optimal = 0;
  for (int t = 0; t < kDualityReps; ++t) {
    const bool net_case = t < kNetReps;
    const SpaceProfile prof =
        net_case ? make_profile({2}, {2}) : random_profile(rng, turns(rng), 2);
    const RepKind kind = net_case || t % 2 == 0 ? RepKind::strategy : RepKind::costrategy;
    const std::uint64_t seed = rng();
    const MeasuringRep m = kind == RepKind::strategy
                               ? represent_measuring_strategy(random_strategy(prof, 2, seed))
                               : represent_measuring_costrategy(random_costrategy(prof, 2, seed));
    const auto primal = max_forced_output(m, "0", Direction::primal);
    const auto dual = max_forced_output(m, "0", Direction::dual);
    optimal += primal.status == SdpStatus::optimal && dual.status == SdpStatus::optimal;
    duality = std::max(duality, std::abs(primal.probability - dual.probability));
    if (net_case) {
      const double v = net_search(m.outcomes.at("0"), 2);
      net = std::max({net, std::abs(primal.probability - v), std::abs(dual.probability - v)});
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d reps (%d optimal), max |primal - dual| %.2e (tol %.0e), net gap %.2e over %d "
                "one-turn reps (tol %.0e)",
                kDualityReps, optimal, duality, kDualityTol, net, kNetReps, kNetTol);
  return {optimal == kDualityReps && duality <= kDualityTol && net <= kNetTol, buf};
}

Verdict coinflip_constants() {
  const MeasuringRep alice = represent_measuring_strategy(fixtures::coinflip_alice());
  const MeasuringRep bob = represent_measuring_costrategy(fixtures::coinflip_bob());
  const CoinFlipReport r = coinflip_analyze(alice, bob);
  const double bound = 1.0 / std::sqrt(2.0);
  bool ok = r.honest_abort <= kHonestTol;
  std::string detail;
  for (const auto& o : r.outcomes) {
    ok = ok && std::abs(o.honest_agreement - 0.5) <= kHonestTol &&
         o.p_alice * o.p_bob >= 0.5 - kBiasSlack &&
         std::max(o.p_alice, o.p_bob) >= bound - kBiasSlack;
    char buf[192];
    std::snprintf(buf, sizeof buf, "b=%s: <A,B>=%.12f p_A=%.9f p_B=%.9f product=%.9f; ",
                  o.outcome.c_str(), o.honest_agreement, o.p_alice, o.p_bob,
                  o.p_alice * o.p_bob);
    detail += buf;
  }
  char tail[128];
  std::snprintf(tail, sizeof tail, "bounds 1/2 and 1/sqrt2=%.10f (slack %.0e)", bound,
                kBiasSlack);
  return {ok, detail + tail};
}

Verdict game_values() {
  const auto t0 = Clock::now();
  const double ignoring = game_value(fixtures::coin_ignoring_referee()).value;
  const double pennies = game_value(fixtures::matching_pennies_referee()).value;
  const double controlled = game_value(fixtures::alice_controlled_referee()).value;
  // Classical oracle: the 2x2 game with payoff [[1,0],[0,1]] by grid search.
  double oracle = -1.0;
  for (int s = 0; s <= 100000; ++s) {
    const double p = s / 100000.0;
    oracle = std::max(oracle, std::min(p, 1.0 - p));
  }
  double minmax = 0.0;
  for (int s = 0; s < kMinMaxReferees; ++s) {
    const MinMaxResult r = minmax_check(fixtures::random_referee(5000 + s));
    minmax = std::max(minmax, std::abs(r.maximin - r.minimax));
  }
  const double secs = seconds_since(t0);
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "coin-ignoring %.9f (0.5 +- %.0e), matching pennies %.9f (oracle %.6f +- %.0e), "
                "Alice-controlled %.9f (1 +- %.0e), max |maximin - minimax| %.2e over %d "
                "(tol %.0e), %.1f s (budget %.0f s)",
                ignoring, kAnalyticTol, pennies, oracle, kMatrixGameTol, controlled,
                kAnalyticTol, minmax, kMinMaxReferees, kMinMaxTol, secs, kGameBudget);
  return {std::abs(ignoring - 0.5) <= kAnalyticTol &&
              std::abs(pennies - oracle) <= kMatrixGameTol &&
              std::abs(controlled - 1.0) <= kAnalyticTol && minmax <= kMinMaxTol &&
              secs < kGameBudget,
          buf};
}

Verdict sdp_engine() {
  std::vector<SdpProblem> toys;
  {
    SdpProblem p;  // min tr X, tr X = 1
    const LinExpr x = p.add_variable("X", SpaceList{{"A", 3}});
    p.add_equality(trace(x), HermOp::scalar(1.0));
    p.set_objective(Sense::minimize, trace(x));
    toys.push_back(p);
  }
  {
    std::mt19937_64 rng(7007);
    const SpaceList a{{"A", 4}};
    SdpProblem p;  // max <H, X>, tr X = 1: the top eigenvalue
    const LinExpr x = p.add_variable("X", a);
    p.add_equality(trace(x), HermOp::scalar(1.0));
    p.set_objective(Sense::maximize, inner_with(x, HermOp(a, testing::random_hermitian(4, rng))));
    toys.push_back(p);
  }
  {
    SdpProblem p;  // min p, p I >= diag(0.3, 0.7)
    const LinExpr v = p.add_variable("p", SpaceList{});
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d.diagonal() << 0.3, 0.7;
    p.set_psd_inequality(tensor_identity(v, {"A", 2}, 0), HermOp(SpaceList{{"A", 2}}, d));
    p.set_objective(Sense::minimize, v);
    toys.push_back(p);
  }
  toys.push_back(forced_output_problem(
      represent_measuring_strategy(random_strategy(make_profile({2, 2}, {2, 2}), 2, 7)), "1",
      Direction::dual));
  toys.push_back(game_value_problem(fixtures::matching_pennies_referee()));
  double gap = 0.0, resolve = 0.0;
  bool optimal = true, deterministic = true;
  for (const auto& p : toys) {
    const SdpSolution s = solve(p);
    optimal = optimal && s.status == SdpStatus::optimal;
    gap = std::max(gap, std::abs(s.duality_gap));
    const std::string text = export_sdpa(p);
    deterministic = deterministic && text == export_sdpa(p);
    const RealSolution again = solve_real(parse_sdpa(text));
    optimal = optimal && again.status == SdpStatus::optimal;
    resolve = std::max(resolve, std::abs(compile(p).objective_sign * again.primal_objective -
                                         s.objective_value));
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu toys, all optimal: %s, max gap %.2e (tol %.0e), re-solve diff %.2e (tol "
                "%.0e), byte-deterministic: %s",
                toys.size(), optimal ? "yes" : "no", gap, kSdpGapTol, resolve, kResolveTol,
                deterministic ? "yes" : "no");
  return {optimal && gap <= kSdpGapTol && resolve <= kResolveTol && deterministic, buf};
}

}  // namespace
}  // namespace qstrat

int main() {
  using qstrat::Verdict;
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"vec identities", qstrat::vec_identities},
      {"interaction equivalence", qstrat::interaction_equivalence},
      {"validation and synthesis round trip", qstrat::synthesis_round_trip},
      {"forced-output duality", qstrat::forced_output_duality},
      {"coin-flipping constants", qstrat::coinflip_constants},
      {"game values", qstrat::game_values},
      {"SDP engine", qstrat::sdp_engine},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%d] %s %s: %s\n", index++, v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
