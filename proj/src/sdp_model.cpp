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

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "qstrat/errors.hpp"
#include "qstrat/sdp.hpp"

namespace qstrat {

namespace {

using EntryKey = std::tuple<int, int, int>;
using RowAccumulator = std::map<EntryKey, double>;

struct BlockLayout {
  std::map<std::string, int> index;
  std::vector<int> complex_dims;
};

void add_sym(RowAccumulator& acc, int block, int a, int b, double alpha) {
  if (alpha == 0.0) return;
  if (a == b) {
    acc[{block, a, a}] += alpha;
  } else {
    acc[{block, std::min(a, b), std::max(a, b)}] += 0.5 * alpha;
  }
}

// Adds the functional Re(c X_kl) (imag = false) or Im(c X_kl) (imag = true)
// of the Hermitian block embedded as Y = [[Re X, -Im X], [Im X, Re X]].
void add_term(RowAccumulator& acc, int block, int d, int k, int l, Complex c, bool imag) {
  const double re = c.real(), im = c.imag();
  const double p = imag ? im : re;   // weight of Re X_kl
  const double q = imag ? re : -im;  // weight of Im X_kl
  add_sym(acc, block, k, l, 0.5 * p);
  add_sym(acc, block, d + k, d + l, 0.5 * p);
  add_sym(acc, block, d + k, l, 0.5 * q);
  add_sym(acc, block, k, d + l, -0.5 * q);
}

void add_row_functional(RowAccumulator& acc, const LinExpr& e, Eigen::Index row,
                        bool imag, const BlockLayout& layout) {
  for (const auto& [name, term] : e.terms()) {
    const int block = layout.index.at(name);
    const int d = layout.complex_dims[static_cast<std::size_t>(block)];
    for (SparseComplex::InnerIterator it(term.coeff, row); it; ++it) {
      const int k = static_cast<int>(it.col()) / d;
      const int l = static_cast<int>(it.col()) % d;
      add_term(acc, block, d, k, l, it.value(), imag);
    }
  }
}

std::vector<SdpEntry> to_entries(const RowAccumulator& acc) {
  std::vector<SdpEntry> out;
  for (const auto& [key, v] : acc) {
    if (v == 0.0) continue;
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
  }
  return out;
}

double max_abs_entry(const std::vector<SdpEntry>& row) {
  double m = 0.0;
  for (const auto& e : row) m = std::max(m, std::abs(e.value));
  return m;
}

}  // namespace

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal:
      return "optimal";
    case SdpStatus::infeasible_suspected:
      return "infeasible-suspected";
    case SdpStatus::max_iterations:
      return "max-iterations";
  }
  return "unknown";
}

LinExpr SdpProblem::add_variable(const std::string& name, const SpaceList& space) {
  if (name.empty() || name == kSlackName) {
    throw ModelError("invalid variable name '" + name + "'");
  }
  if (!variables_.emplace(name, space).second) {
    throw ModelError("variable '" + name + "' declared twice");
  }
  return LinExpr::variable(name, space);
}

void SdpProblem::check_expr(const LinExpr& e) const {
  for (const auto& [name, term] : e.terms()) {
    const auto it = variables_.find(name);
    if (it == variables_.end()) throw ModelError("unknown variable '" + name + "'");
    if (!(it->second == term.var_space)) {
      throw ModelError("variable '" + name + "' used on the wrong space");
    }
  }
}

void SdpProblem::add_equality(const LinExpr& lhs, const HermOp& rhs, std::string label) {
  check_expr(lhs);
  if (!(lhs.space() == rhs.space())) {
    throw ModelError("equality between " + to_string(lhs.space()) + " and " +
                     to_string(rhs.space()));
  }
  if (label.empty()) label = "eq" + std::to_string(equalities_.size());
  equalities_.push_back({lhs, rhs, std::move(label)});
}

void SdpProblem::add_equality(const LinExpr& lhs, const LinExpr& rhs, std::string label) {
  const LinExpr diff = lhs - rhs;
  const auto d = static_cast<Eigen::Index>(diff.dim());
  add_equality(diff, HermOp(diff.space(), ComplexMatrix::Zero(d, d)), std::move(label));
}

void SdpProblem::set_psd_inequality(const LinExpr& lhs, const HermOp& rhs) {
  if (inequality_) throw ModelError("only one semidefinite inequality is supported");
  check_expr(lhs);
  if (!(lhs.space() == rhs.space())) {
    throw ModelError("inequality between " + to_string(lhs.space()) + " and " +
                     to_string(rhs.space()));
  }
  inequality_ = SdpInequality{lhs, rhs};
}

void SdpProblem::set_psd_inequality(const LinExpr& lhs, const LinExpr& rhs) {
  const LinExpr diff = lhs - rhs;
  const auto d = static_cast<Eigen::Index>(diff.dim());
  set_psd_inequality(diff, HermOp(diff.space(), ComplexMatrix::Zero(d, d)));
}

void SdpProblem::set_objective(Sense sense, const LinExpr& scalar) {
  check_expr(scalar);
  if (scalar.dim() != 1) throw ModelError("objective must be a scalar expression");
  sense_ = sense;
  objective_ = scalar;
  has_objective_ = true;
}

CompiledSdp compile(const SdpProblem& problem) {
  CompiledSdp out;
  BlockLayout layout;
  for (const auto& [name, space] : problem.variables()) {
    layout.index[name] = static_cast<int>(out.block_names.size());
    out.block_names.push_back(name);
    out.block_spaces.push_back(space);
  }
  const auto& ineq = problem.psd_inequality();
  if (ineq) {
    layout.index[SdpProblem::kSlackName] = static_cast<int>(out.block_names.size());
    out.block_names.push_back(SdpProblem::kSlackName);
    out.block_spaces.push_back(ineq->lhs.space());
  }
  if (out.block_names.empty()) throw ModelError("problem has no variables");
  for (const auto& s : out.block_spaces) {
    const int d = static_cast<int>(s.total_dim());
    layout.complex_dims.push_back(d);
    out.real.block_sizes.push_back(2 * d);
  }

  auto add_hermitian_rows = [&](const LinExpr& lhs, const HermOp& rhs) {
    const auto d = static_cast<Eigen::Index>(lhs.dim());
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i; j < d; ++j) {
        for (const bool imag : {false, true}) {
          if (imag && i == j) continue;
          RowAccumulator acc;
          add_row_functional(acc, lhs, i * d + j, imag, layout);
          auto row = to_entries(acc);
          const double b = imag ? rhs.matrix()(i, j).imag() : rhs.matrix()(i, j).real();
          if (max_abs_entry(row) < 1e-15) {
            if (std::abs(b) > 1e-12) {
              throw ModelError("constraint with no variables has nonzero right side");
            }
            continue;
          }
          out.real.a.push_back(std::move(row));
          out.real.b.push_back(b);
        }
      }
    }
  };
  for (const auto& eq : problem.equalities()) add_hermitian_rows(eq.lhs, eq.rhs);
  if (ineq) {
    const LinExpr with_slack =
        ineq->lhs - LinExpr::variable(SdpProblem::kSlackName, ineq->lhs.space());
    add_hermitian_rows(with_slack, ineq->rhs);
  }
  RowAccumulator obj;
  add_row_functional(obj, problem.objective(), 0, false, layout);
  out.objective_sign = problem.sense() == Sense::maximize ? -1.0 : 1.0;
  for (auto& [key, v] : obj) v *= out.objective_sign;
  out.real.c = to_entries(obj);
  return out;
}

Eigen::MatrixXd realify(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::MatrixXd y(2 * d, 2 * d);
  y.topLeftCorner(d, d) = h.real();
  y.bottomRightCorner(d, d) = h.real();
  y.topRightCorner(d, d) = -h.imag();
  y.bottomLeftCorner(d, d) = h.imag();
  return y;
}

ComplexMatrix derealify(const Eigen::MatrixXd& y) {
  const Eigen::Index d = y.rows() / 2;
  ComplexMatrix x(d, d);
  x.real() = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
  x.imag() = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
  return x;
}

double max_constraint_residual(const SdpProblem& problem,
                               const std::map<std::string, ComplexMatrix>& values) {
  double r = 0.0;
  for (const auto& eq : problem.equalities()) {
    r = std::max(r, max_abs_diff(eq.lhs.evaluate(values), eq.rhs.matrix()));
  }
  if (const auto& ineq = problem.psd_inequality()) {
    const ComplexMatrix gap = ineq->lhs.evaluate(values) - ineq->rhs.matrix();
    r = std::max(r, std::max(0.0, -min_eigenvalue((gap + gap.adjoint()) * 0.5)));
  }
  return r;
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  const CompiledSdp compiled = compile(problem);
  SdpOptions real_options = options;
  // A complex entry is bounded by sqrt(2) times its real and imaginary rows.
  real_options.feas_tol = options.feas_tol / 2.0;
  const RealSolution real = solve_real(compiled.real, real_options);

  SdpSolution sol;
  sol.status = real.status;
  sol.iterations = real.iterations;
  sol.primal_objective = compiled.objective_sign * real.primal_objective;
  sol.dual_objective = compiled.objective_sign * real.dual_objective;
  sol.objective_value = sol.primal_objective;
  sol.duality_gap = std::abs(real.primal_objective - real.dual_objective);
  sol.complementarity = real.complementarity;
  std::map<std::string, ComplexMatrix> values;
  sol.min_block_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < compiled.block_names.size(); ++b) {
    if (real.x.size() <= b) break;
    const ComplexMatrix x = derealify(real.x[b]);
    HermOp op(compiled.block_spaces[b], x);
    sol.min_block_eigenvalue = std::min(sol.min_block_eigenvalue, min_eigenvalue(op.matrix()));
    if (compiled.block_names[b] == SdpProblem::kSlackName) {
      sol.slack = op;
    } else {
      values[compiled.block_names[b]] = op.matrix();
      sol.blocks.emplace(compiled.block_names[b], std::move(op));
    }
  }
  sol.max_constraint_residual = max_constraint_residual(problem, values);
  if (sol.status == SdpStatus::optimal &&
      (sol.max_constraint_residual > options.feas_tol || sol.duality_gap > options.gap_tol ||
       sol.min_block_eigenvalue < -options.psd_tol)) {
    sol.status = SdpStatus::max_iterations;
  }
  return sol;
}

}  // namespace qstrat
