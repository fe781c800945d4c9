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

#include <algorithm>
#include <cmath>

namespace qstrat {

namespace {

constexpr double kImagTol = 1e-10;

void check_pair(const SpaceProfile& s, const SpaceProfile& c) {
  if (!s.compatible_with(c)) {
    throw ProfileMismatchError("strategy profile " + to_string(s.rep_space()) +
                               " is incompatible with co-strategy profile " +
                               to_string(c.rep_space()));
  }
}

Measurement canonical(const std::optional<Measurement>& m, Eigen::Index dim) {
  if (m) return *m;
  return {{kTrivialOutcome, ComplexMatrix::Identity(dim, dim)}};
}

// Psi[(rows_major, rows_minor), cols] -> Psi[(rows_major, cols), rows_minor].
ComplexMatrix swap_minor(const ComplexMatrix& psi, Eigen::Index major,
                         Eigen::Index minor) {
  const Eigen::Index cols = psi.cols();
  ComplexMatrix out(major * cols, minor);
  for (Eigen::Index m = 0; m < major; ++m) {
    for (Eigen::Index a = 0; a < minor; ++a) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        out(m * cols + c, a) = psi(m * minor + a, c);
      }
    }
  }
  return out;
}

OutcomeDistribution measure_pure(const ComplexMatrix& psi, const Measurement& pa,
                                 const Measurement& qb) {
  OutcomeDistribution d;
  for (const auto& [a, p] : pa) {
    const ComplexMatrix left = p * psi;
    for (const auto& [b, q] : qb) {
      const Complex v = psi.conjugate().cwiseProduct(left * q.transpose()).sum();
      d.entries[{a, b}] = v.real();
    }
  }
  return d;
}

OutcomeDistribution simulate_pure(const StrategyDescription& s,
                                  const CoStrategyDescription& c,
                                  const ComplexVector& u0) {
  const std::size_t n = s.profile.turns();
  // Rows (message, z), columns w.
  const auto dx1 = static_cast<Eigen::Index>(s.profile.inputs[0].dim);
  const auto dw0 = static_cast<Eigen::Index>(c.memory_dims[0]);
  ComplexMatrix psi(dx1, dw0);
  for (Eigen::Index x = 0; x < dx1; ++x) {
    for (Eigen::Index w = 0; w < dw0; ++w) psi(x, w) = u0(x * dw0 + w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    psi = s.isometries[k] * psi;
    const auto dy = static_cast<Eigen::Index>(s.profile.outputs[k].dim);
    const auto dz = static_cast<Eigen::Index>(s.memory_dims[k]);
    const auto dw_next = static_cast<Eigen::Index>(c.memory_dims[k + 1]);
    const Eigen::Index dnext = k + 1 < n
                                   ? static_cast<Eigen::Index>(s.profile.inputs[k + 1].dim)
                                   : 1;
    // [(y, z), w] -> [(y, w), z], apply B_k, then [(x', w'), z] -> [(x', z), w'].
    const ComplexMatrix moved = c.isometries[k] * swap_minor(psi, dy, dz);
    psi = swap_minor(moved, dnext, dw_next);
  }
  const auto dz = static_cast<Eigen::Index>(s.memory_dims.back());
  const auto dw = static_cast<Eigen::Index>(c.memory_dims.back());
  return measure_pure(psi, canonical(s.measurement, dz), canonical(c.measurement, dw));
}

OutcomeDistribution simulate_mixed(const StrategyDescription& s,
                                   const CoStrategyDescription& c) {
  const std::size_t n = s.profile.turns();
  auto sp = [](const char* l, std::size_t d) { return Space{l, d}; };
  // State on (message, z, w).
  SpaceList space{sp("m", s.profile.inputs[0].dim), sp("z", 1),
                  sp("w", c.memory_dims[0])};
  ComplexMatrix rho = c.initial_state;
  for (std::size_t k = 0; k < n; ++k) {
    const auto dw = static_cast<Eigen::Index>(space[2].dim);
    const ComplexMatrix a = kron(s.isometries[k], ComplexMatrix::Identity(dw, dw));
    rho = a * rho * a.adjoint();
    space = SpaceList{sp("m", s.profile.outputs[k].dim), sp("z", s.memory_dims[k]),
                      sp("w", space[2].dim)};
    const SpaceList swapped{space[0], space[2], space[1]};
    rho = permute_matrix(rho, space, swapped);
    const auto dz = static_cast<Eigen::Index>(s.memory_dims[k]);
    const ComplexMatrix b = kron(c.isometries[k], ComplexMatrix::Identity(dz, dz));
    rho = b * rho * b.adjoint();
    const std::size_t dnext = k + 1 < n ? s.profile.inputs[k + 1].dim : 1;
    const SpaceList after{sp("m", dnext), sp("w", c.memory_dims[k + 1]),
                          sp("z", s.memory_dims[k])};
    space = SpaceList{after[0], after[2], after[1]};
    rho = permute_matrix(rho, after, space);
  }
  const auto dz = static_cast<Eigen::Index>(space[1].dim);
  const auto dw = static_cast<Eigen::Index>(space[2].dim);
  OutcomeDistribution d;
  for (const auto& [a, p] : canonical(s.measurement, dz)) {
    for (const auto& [b, q] : canonical(c.measurement, dw)) {
      d.entries[{a, b}] = (kron(p, q).cwiseProduct(rho.transpose())).sum().real();
    }
  }
  return d;
}

}  // namespace

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (const auto& [key, p] : entries) t += p;
  return t;
}

double OutcomeDistribution::at(const std::string& a, const std::string& b) const {
  const auto it = entries.find({a, b});
  return it == entries.end() ? 0.0 : it->second;
}

std::map<std::string, double> OutcomeDistribution::strategy_marginal() const {
  std::map<std::string, double> m;
  for (const auto& [key, p] : entries) m[key.first] += p;
  return m;
}

std::map<std::string, double> OutcomeDistribution::costrategy_marginal() const {
  std::map<std::string, double> m;
  for (const auto& [key, p] : entries) m[key.second] += p;
  return m;
}

double max_gap(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  double g = 0.0;
  for (const auto& [key, p] : a.entries) {
    g = std::max(g, std::abs(p - b.at(key.first, key.second)));
  }
  for (const auto& [key, p] : b.entries) {
    g = std::max(g, std::abs(p - a.at(key.first, key.second)));
  }
  return g;
}

OutcomeDistribution distribution_via_reps(const MeasuringRep& strategy,
                                          const MeasuringRep& costrategy) {
  if (strategy.kind != RepKind::strategy || costrategy.kind != RepKind::costrategy) {
    throw ContractViolation("distribution_via_reps expects a strategy and a "
                            "co-strategy");
  }
  check_pair(strategy.profile, costrategy.profile);
  OutcomeDistribution d;
  for (const auto& [a, qa] : strategy.outcomes) {
    for (const auto& [b, rb] : costrategy.outcomes) {
      const Complex v = inner(qa.matrix(), rb.matrix());
      if (std::abs(v.imag()) > kImagTol * std::max(1.0, std::abs(v))) {
        throw ContractViolation("inner product of representations is not real");
      }
      d.entries[{a, b}] = v.real();
    }
  }
  return d;
}

OutcomeDistribution simulate_interaction(const StrategyDescription& strategy,
                                         const CoStrategyDescription& costrategy) {
  check_pair(strategy.profile, costrategy.profile);
  strategy.check();
  costrategy.check();
  if (strategy.profile.turns() == 0) {
    throw ContractViolation("interaction needs at least one turn");
  }
  if (numerical_rank(costrategy.initial_state) <= 1) {
    const ComplexMatrix root = purify(costrategy.initial_state, 1);
    return simulate_pure(strategy, costrategy, root.col(0));
  }
  return simulate_mixed(strategy, costrategy);
}

}  // namespace qstrat
