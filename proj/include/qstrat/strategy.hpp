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

// Strategies and co-strategies: operational descriptions, their
// Choi-Jamiolkowski representations on Y_1..n (x) X_1..n, the linear
// characterization of valid representations, and the converse synthesis.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qstrat/tensor.hpp"

namespace qstrat {

/// Input spaces X_1..X_n and output spaces Y_1..Y_n of one party.
struct SpaceProfile {
  SpaceList inputs;
  SpaceList outputs;

  SpaceProfile() = default;
  SpaceProfile(SpaceList in, SpaceList out);

  std::size_t turns() const { return inputs.size(); }
  /// Y_1..Y_n followed by X_1..X_n.
  SpaceList rep_space() const { return outputs.concat(inputs); }
  /// Profile restricted to the first k turns.
  SpaceProfile truncated(std::size_t k) const;
  std::size_t input_dim(std::size_t first, std::size_t last) const;
  std::size_t output_dim(std::size_t first, std::size_t last) const;

  /// Same dimension lists (labels may differ).
  bool compatible_with(const SpaceProfile& other) const;

  friend bool operator==(const SpaceProfile&, const SpaceProfile&) = default;
};

/// Canonical profile with labels X1..Xn / Y1..Yn.
SpaceProfile make_profile(const std::vector<std::size_t>& input_dims,
                          const std::vector<std::size_t>& output_dims);

enum class RepKind { strategy, costrategy };
std::string to_string(RepKind kind);
RepKind rep_kind_from_string(const std::string& s);

/// Outcome label -> measurement operator. Ordered by label.
using Measurement = std::map<std::string, ComplexMatrix>;

/// Label used when a missing measurement is canonicalized to {I}.
inline const std::string kTrivialOutcome = "*";

/// A_1 : X_1 -> Y_1 (x) Z_1 and A_k : X_k (x) Z_{k-1} -> Y_k (x) Z_k, with an
/// optional measurement on Z_n. Composite indices follow the written factor
/// order (input x_k major, memory minor).
struct StrategyDescription {
  SpaceProfile profile;
  std::vector<std::size_t> memory_dims;
  std::vector<ComplexMatrix> isometries;
  std::optional<Measurement> measurement;

  /// Throws DescriptionInvalidError.
  void check(double tol = 1e-9) const;
};

/// Initial state on X_1 (x) W_0, B_k : Y_k (x) W_{k-1} -> X_{k+1} (x) W_k,
/// B_n : Y_n (x) W_{n-1} -> W_n, optional measurement on W_n.
struct CoStrategyDescription {
  SpaceProfile profile;
  std::vector<std::size_t> memory_dims;  // W_0..W_n
  ComplexMatrix initial_state;
  std::vector<ComplexMatrix> isometries;
  std::optional<Measurement> measurement;

  void check(double tol = 1e-9) const;
};

struct StrategyRep {
  SpaceProfile profile;
  RepKind kind = RepKind::strategy;
  HermOp op;
};

struct MeasuringRep {
  SpaceProfile profile;
  RepKind kind = RepKind::strategy;
  std::map<std::string, HermOp> outcomes;

  HermOp total() const;
  StrategyRep total_rep() const { return {profile, kind, total()}; }
};

/// Non-measuring representation (the measurement, if any, is summed out).
StrategyRep represent_strategy(const StrategyDescription& desc);
/// Outcome-indexed representation; no measurement means {I}.
MeasuringRep represent_measuring_strategy(const StrategyDescription& desc);

StrategyRep represent_costrategy(const CoStrategyDescription& desc);
MeasuringRep represent_measuring_costrategy(const CoStrategyDescription& desc);

/// The co-strategy viewed as an (n+1)-turn strategy with empty first input
/// and empty last output. Mixed initial states are purified into W_0.
StrategyDescription lift_costrategy(const CoStrategyDescription& desc);

/// The combined isometry A : X_1..n -> Y_1..n (x) Z_n of the isometry
/// product, rows ordered (y_1..y_n, z_n).
ComplexMatrix combined_isometry(const StrategyDescription& desc);

struct ConstraintResidual {
  std::string constraint;
  std::size_t level = 0;
  double residual = 0.0;
};

struct ValidationReport {
  RepKind kind = RepKind::strategy;
  double tol = 0.0;
  double psd_residual = 0.0;
  std::vector<ConstraintResidual> levels;
  bool valid = false;

  double max_residual() const;
};

/// Checks rep against the strategy (or co-strategy) linear system. Residuals
/// are max-norm; the PSD residual is max(0, -lambda_min).
ValidationReport validate(const HermOp& rep, const SpaceProfile& profile,
                          RepKind kind, double tol = 1e-8);
ValidationReport validate(const StrategyRep& rep, double tol = 1e-8);
/// Validates sum_a Q_a and each Q_a's positivity.
ValidationReport validate(const MeasuringRep& rep, double tol = 1e-8);

/// The k-turn marginal Q_k of a valid representation.
StrategyRep extract_marginal(const StrategyRep& rep, std::size_t k,
                             double tol = 1e-8);

struct SynthesisResult {
  StrategyDescription description;
  std::vector<std::string> warnings;
};

inline constexpr double kRankTol = 1e-9;

/// Operational strategy with dim(Z_k) = rank(Q_k) reproducing rep.
SynthesisResult synthesize(const StrategyRep& rep, double tol = 1e-8,
                           double rank_tol = kRankTol);

/// Haar-random isometries with dim(Z_k) = dim(X_1..k (x) Y_1..k) and, when
/// n_outcomes > 0, a random projective measurement on Z_n.
StrategyDescription random_strategy(const SpaceProfile& profile,
                                    std::size_t n_outcomes, std::uint64_t seed);
/// Random co-strategy built as a random strategy on the lifted profile.
CoStrategyDescription random_costrategy(const SpaceProfile& profile,
                                        std::size_t n_outcomes,
                                        std::uint64_t seed);

/// Random projective measurement on a space of dimension `dim`, outcomes
/// labelled "0".."n-1", from a column partition of a Haar unitary.
Measurement random_projective_measurement(std::size_t dim, std::size_t n_outcomes,
                                          std::uint64_t seed);

}  // namespace qstrat
