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

#include "qstrat/fixtures.hpp"

#include <cmath>
#include <functional>

namespace qstrat::fixtures {

namespace {

// 0/1 matrix sending basis column c to row f(c).
ComplexMatrix basis_map(std::size_t rows, std::size_t cols,
                        const std::function<std::size_t(std::size_t)>& f) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows),
                                        static_cast<Eigen::Index>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    m(static_cast<Eigen::Index>(f(c)), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return m;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

ComplexVector commit_state(std::size_t a) {
  ComplexVector v(2);
  if (a == 0) {
    v << 1.0, 0.0;
  } else {
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  }
  return v;
}

ComplexMatrix diag_projector(std::size_t dim, const std::function<bool(std::size_t)>& keep) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (keep(i)) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return m;
}

// Shared random bit b purified as (|00> + |11>)/sqrt2 on (b, b').
ComplexMatrix shared_bit_state() {
  ComplexVector u = ComplexVector::Zero(4);
  u(0) = u(3) = 1.0 / std::sqrt(2.0);
  return projector(u);
}

Referee one_turn_referee(const ComplexMatrix& initial, std::size_t memory,
                         const Measurement& measurement) {
  CoStrategyDescription d;
  d.profile = make_profile({4}, {4});
  d.memory_dims = {memory, 4 * memory};
  d.initial_state = initial;
  d.isometries = {ComplexMatrix::Identity(static_cast<Eigen::Index>(4 * memory),
                                          static_cast<Eigen::Index>(4 * memory))};
  d.measurement = measurement;
  return make_referee({2}, {2}, {2}, {2}, represent_measuring_costrategy(d),
                      {{"a", 1.0}, {"b", 0.0}});
}

// Both players receive |0>|0>.
ComplexMatrix zero_questions(const ComplexMatrix& memory_state) {
  ComplexMatrix q = ComplexMatrix::Zero(4, 4);
  q(0, 0) = 1.0;
  return kron(q, memory_state);
}

}  // namespace

StrategyDescription coinflip_alice() {
  StrategyDescription d;
  d.profile = make_profile({1, 2}, {2, 2});
  d.memory_dims = {4, 4};
  // Z_1 = (copy of a, reveal register), Z_2 = (copy of a, copy of b).
  ComplexMatrix a1 = ComplexMatrix::Zero(8, 1);
  for (std::size_t a = 0; a < 2; ++a) {
    const ComplexVector psi = commit_state(a);
    for (std::size_t y = 0; y < 2; ++y) {
      a1(static_cast<Eigen::Index>(y * 4 + a * 2 + a), 0) += psi(static_cast<Eigen::Index>(y)) /
                                                             std::sqrt(2.0);
    }
  }
  // |b>_X2 |c, r>_Z1 -> |r>_Y2 |c, b>_Z2.
  const ComplexMatrix a2 = basis_map(8, 8, [](std::size_t in) {
    const std::size_t b = in / 4, c = (in / 2) % 2, r = in % 2;
    return r * 4 + c * 2 + b;
  });
  d.isometries = {a1, a2};
  Measurement m;
  m["0"] = diag_projector(4, [](std::size_t i) { return (i / 2) == (i % 2); });
  m["1"] = diag_projector(4, [](std::size_t i) { return (i / 2) != (i % 2); });
  m[kAbort] = ComplexMatrix::Zero(4, 4);
  d.measurement = m;
  return d;
}

CoStrategyDescription coinflip_bob() {
  CoStrategyDescription d;
  d.profile = make_profile({1, 2}, {2, 2});
  // W_0 = (b, b'), W_1 = (commit, b'), W_2 = (b', commit, reveal).
  d.memory_dims = {4, 4, 8};
  d.initial_state = shared_bit_state();
  // |q>_Y1 |b, b'>_W0 -> |b>_X2 |q, b'>_W1.
  const ComplexMatrix b1 = basis_map(8, 8, [](std::size_t in) {
    const std::size_t q = in / 4, b = (in / 2) % 2, bp = in % 2;
    return b * 4 + q * 2 + bp;
  });
  // |r>_Y2 |q, b'>_W1 -> |b', q, r>_W2.
  const ComplexMatrix b2 = basis_map(8, 8, [](std::size_t in) {
    const std::size_t r = in / 4, q = (in / 2) % 2, bp = in % 2;
    return bp * 4 + q * 2 + r;
  });
  d.isometries = {b1, b2};
  Measurement m;
  for (const std::string& label : {std::string("0"), std::string("1"), kAbort}) {
    m[label] = ComplexMatrix::Zero(8, 8);
  }
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  for (std::size_t bp = 0; bp < 2; ++bp) {
    for (std::size_t r = 0; r < 2; ++r) {
      const ComplexMatrix pass = projector(commit_state(r));
      const ComplexMatrix b_proj = diag_projector(2, [bp](std::size_t i) { return i == bp; });
      const ComplexMatrix r_proj = diag_projector(2, [r](std::size_t i) { return i == r; });
      m[(bp ^ r) == 0 ? "0" : "1"] += kron(kron(b_proj, pass), r_proj);
      m[kAbort] += kron(kron(b_proj, id2 - pass), r_proj);
    }
  }
  d.measurement = m;
  return d;
}

StrategyDescription xor_alice() {
  StrategyDescription d;
  d.profile = make_profile({1, 2}, {2, 1});
  // Z_1 = copy of a, Z_2 = (a, b).
  d.memory_dims = {2, 4};
  ComplexMatrix a1 = ComplexMatrix::Zero(4, 1);
  a1(0, 0) = a1(3, 0) = 1.0 / std::sqrt(2.0);
  // |b>_X2 |a>_Z1 -> |a, b>_Z2.
  const ComplexMatrix a2 = basis_map(4, 4, [](std::size_t in) {
    const std::size_t b = in / 2, a = in % 2;
    return a * 2 + b;
  });
  d.isometries = {a1, a2};
  Measurement m;
  m["0"] = diag_projector(4, [](std::size_t i) { return (i / 2) == (i % 2); });
  m["1"] = diag_projector(4, [](std::size_t i) { return (i / 2) != (i % 2); });
  m[kAbort] = ComplexMatrix::Zero(4, 4);
  d.measurement = m;
  return d;
}

CoStrategyDescription xor_bob() {
  CoStrategyDescription d;
  d.profile = make_profile({1, 2}, {2, 1});
  // W_0 = (b, b'), W_1 = W_2 = (a, b').
  d.memory_dims = {4, 4, 4};
  d.initial_state = shared_bit_state();
  // |a>_Y1 |b, b'>_W0 -> |b>_X2 |a, b'>_W1.
  const ComplexMatrix b1 = basis_map(8, 8, [](std::size_t in) {
    const std::size_t a = in / 4, b = (in / 2) % 2, bp = in % 2;
    return b * 4 + a * 2 + bp;
  });
  d.isometries = {b1, ComplexMatrix::Identity(4, 4)};
  Measurement m;
  m["0"] = diag_projector(4, [](std::size_t i) { return (i / 2) == (i % 2); });
  m["1"] = diag_projector(4, [](std::size_t i) { return (i / 2) != (i % 2); });
  m[kAbort] = ComplexMatrix::Zero(4, 4);
  d.measurement = m;
  return d;
}

Referee coin_ignoring_referee() {
  // The memory qubit is a private fair coin; the answers are discarded.
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
  Measurement m;
  m["a"] = kron(id4, diag_projector(2, [](std::size_t i) { return i == 0; }));
  m["b"] = kron(id4, diag_projector(2, [](std::size_t i) { return i == 1; }));
  return one_turn_referee(zero_questions(projector(plus)), 2, m);
}

Referee alice_controlled_referee() {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  Measurement m;
  m["a"] = kron(diag_projector(2, [](std::size_t i) { return i == 0; }), id2);
  m["b"] = kron(diag_projector(2, [](std::size_t i) { return i == 1; }), id2);
  return one_turn_referee(zero_questions(ComplexMatrix::Identity(1, 1)), 1, m);
}

Referee matching_pennies_referee() {
  Measurement m;
  m["a"] = diag_projector(4, [](std::size_t i) { return (i / 2) == (i % 2); });
  m["b"] = diag_projector(4, [](std::size_t i) { return (i / 2) != (i % 2); });
  return one_turn_referee(zero_questions(ComplexMatrix::Identity(1, 1)), 1, m);
}

Referee random_referee(std::uint64_t seed) {
  const MeasuringRep rep =
      represent_measuring_costrategy(random_costrategy(make_profile({4}, {4}), 2, seed));
  MeasuringRep named = rep;
  named.outcomes.clear();
  named.outcomes["a"] = rep.outcomes.at("0");
  named.outcomes["b"] = rep.outcomes.at("1");
  return make_referee({2}, {2}, {2}, {2}, named, {{"a", 1.0}, {"b", 0.0}});
}

}  // namespace qstrat::fixtures
