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

#include "qstrat/interaction.hpp"

#include <gtest/gtest.h>

#include "qstrat/errors.hpp"
#include "test_support.hpp"

namespace qstrat {
namespace {

SpaceProfile random_profile(std::mt19937_64& rng, std::size_t n, std::size_t max_dim,
                            std::size_t cap) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  for (;;) {
    std::vector<std::size_t> in, out;
    std::size_t side = 1;
    for (std::size_t k = 0; k < n; ++k) {
      in.push_back(dim(rng));
      out.push_back(dim(rng));
      side *= in.back() * out.back();
    }
    if (side <= cap) return make_profile(in, out);
  }
}

TEST(Simulate, EchoIsDeterministic) {
  // Co-strategy sends |0>, keeps nothing, stores the reply in W1.
  CoStrategyDescription c;
  c.profile = make_profile({2}, {2});
  c.memory_dims = {1, 2};
  c.initial_state = ComplexMatrix::Zero(2, 2);
  c.initial_state(0, 0) = 1.0;
  c.isometries = {ComplexMatrix::Identity(2, 2)};
  // Strategy copies the message into memory and answers |0>.
  StrategyDescription s;
  s.profile = c.profile;
  s.memory_dims = {2};
  ComplexMatrix a = ComplexMatrix::Zero(4, 2);
  a(0, 0) = 1.0;  // |x> -> |0>_Y |x>_Z
  a(1, 1) = 1.0;
  s.isometries = {a};
  s.measurement = Measurement{{"0", testing::unit(2, 2, 0, 0)}, {"1", testing::unit(2, 2, 1, 1)}};
  const OutcomeDistribution d = simulate_interaction(s, c);
  EXPECT_NEAR(d.at("0", kTrivialOutcome), 1.0, 1e-12);
  EXPECT_NEAR(d.at("1", kTrivialOutcome), 0.0, 1e-12);
  const OutcomeDistribution r =
      distribution_via_reps(represent_measuring_strategy(s), represent_measuring_costrategy(c));
  EXPECT_LT(max_gap(d, r), 1e-12);
}

TEST(Interaction, SingleOutcomeGivesCertainty) {
  const SpaceProfile prof = make_profile({2, 2}, {2, 2});
  const StrategyDescription s = random_strategy(prof, 0, 1);
  const CoStrategyDescription c = random_costrategy(prof, 0, 2);
  const OutcomeDistribution d =
      distribution_via_reps(represent_measuring_strategy(s), represent_measuring_costrategy(c));
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_NEAR(d.at(kTrivialOutcome, kTrivialOutcome), 1.0, 1e-10);
  EXPECT_NEAR(simulate_interaction(s, c).at(kTrivialOutcome, kTrivialOutcome), 1.0, 1e-10);
}

TEST(Interaction, RepsAgreeWithSimulation) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 3;
    const SpaceProfile prof = random_profile(rng, n, 3, 144);
    const StrategyDescription s = random_strategy(prof, 2 + t % 2, 100 + t);
    const CoStrategyDescription c = random_costrategy(prof, 2, 500 + t);
    const OutcomeDistribution sim = simulate_interaction(s, c);
    const OutcomeDistribution rep =
        distribution_via_reps(represent_measuring_strategy(s), represent_measuring_costrategy(c));
    EXPECT_LT(max_gap(sim, rep), 1e-8) << "trial " << t;
    EXPECT_NEAR(sim.total(), 1.0, 1e-8);
    EXPECT_NEAR(rep.total(), 1.0, 1e-8);
    for (const auto& [key, p] : rep.entries) EXPECT_GE(p, -1e-10);
  }
}

TEST(Interaction, MixedInitialStateUsesDensityPath) {
  std::mt19937_64 rng(6);
  const SpaceProfile prof = make_profile({2, 2}, {2, 1});
  for (int t = 0; t < 5; ++t) {
    const StrategyDescription s = random_strategy(prof, 2, 20 + t);
    CoStrategyDescription c = random_costrategy(prof, 3, 40 + t);
    c.initial_state = testing::random_density(static_cast<std::size_t>(c.initial_state.rows()),
                                              3, rng);
    const OutcomeDistribution sim = simulate_interaction(s, c);
    const OutcomeDistribution rep =
        distribution_via_reps(represent_measuring_strategy(s), represent_measuring_costrategy(c));
    EXPECT_LT(max_gap(sim, rep), 1e-8);
    EXPECT_NEAR(sim.total(), 1.0, 1e-8);
  }
}

TEST(Interaction, BilinearInReps) {
  const SpaceProfile prof = make_profile({2}, {2});
  const MeasuringRep q1 = represent_measuring_strategy(random_strategy(prof, 2, 1));
  const MeasuringRep q2 = represent_measuring_strategy(random_strategy(prof, 2, 2));
  const MeasuringRep r = represent_measuring_costrategy(random_costrategy(prof, 2, 3));
  const double w = 0.3;
  MeasuringRep mix = q1;
  for (auto& [label, op] : mix.outcomes) op = op * w + q2.outcomes.at(label) * (1 - w);
  const auto d1 = distribution_via_reps(q1, r), d2 = distribution_via_reps(q2, r);
  const auto dm = distribution_via_reps(mix, r);
  for (const auto& [key, p] : dm.entries) {
    EXPECT_NEAR(p, w * d1.entries.at(key) + (1 - w) * d2.entries.at(key), 1e-12);
  }
}

TEST(Interaction, MarginalsMatchNonMeasuringSums) {
  const SpaceProfile prof = make_profile({2, 2}, {2, 2});
  const MeasuringRep q = represent_measuring_strategy(random_strategy(prof, 3, 4));
  const MeasuringRep r = represent_measuring_costrategy(random_costrategy(prof, 2, 5));
  const auto joint = distribution_via_reps(q, r);
  const MeasuringRep r_sum{r.profile, r.kind, {{kTrivialOutcome, r.total()}}};
  const MeasuringRep q_sum{q.profile, q.kind, {{kTrivialOutcome, q.total()}}};
  const auto against_sum = distribution_via_reps(q, r_sum);
  for (const auto& [a, p] : joint.strategy_marginal()) {
    EXPECT_NEAR(p, against_sum.at(a, kTrivialOutcome), 1e-12);
  }
  const auto sum_against = distribution_via_reps(q_sum, r);
  for (const auto& [b, p] : joint.costrategy_marginal()) {
    EXPECT_NEAR(p, sum_against.at(kTrivialOutcome, b), 1e-12);
  }
}

TEST(Interaction, IncompatibleProfilesThrow) {
  const StrategyDescription s = random_strategy(make_profile({2}, {2}), 0, 1);
  const CoStrategyDescription c = random_costrategy(make_profile({2}, {3}), 0, 1);
  EXPECT_THROW(simulate_interaction(s, c), ProfileMismatchError);
  EXPECT_THROW(distribution_via_reps(represent_measuring_strategy(s),
                                     represent_measuring_costrategy(c)),
               ProfileMismatchError);
}

}  // namespace
}  // namespace qstrat
