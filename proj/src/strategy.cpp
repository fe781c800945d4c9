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

#include "qstrat/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qstrat {

namespace {

const std::string kLiftIn = "__lift_in";
const std::string kLiftOut = "__lift_out";

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::set<std::string> label_range(const SpaceList& s, std::size_t first,
                                  std::size_t last) {
  std::set<std::string> out;
  for (std::size_t i = first; i < last; ++i) out.insert(s[i].label);
  return out;
}

std::set<std::string> set_union(std::set<std::string> a,
                                const std::set<std::string>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

void check_isometry(const ComplexMatrix& a, Eigen::Index rows, Eigen::Index cols,
                    const std::string& what, double tol) {
  if (a.rows() != rows || a.cols() != cols) {
    std::ostringstream os;
    os << what << " has shape " << a.rows() << "x" << a.cols() << ", expected "
       << rows << "x" << cols;
    throw DescriptionInvalidError(os.str());
  }
  const ComplexMatrix g = a.adjoint() * a;
  if (max_abs_diff(g, ComplexMatrix::Identity(cols, cols)) > tol) {
    throw DescriptionInvalidError(what + " is not an isometry");
  }
}

void check_measurement(const Measurement& m, Eigen::Index dim,
                       const std::string& where, double tol) {
  if (m.empty()) throw DescriptionInvalidError("empty measurement on " + where);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& [label, op] : m) {
    if (op.rows() != dim || op.cols() != dim) {
      throw DescriptionInvalidError("measurement operator '" + label +
                                    "' has the wrong size for " + where);
    }
    if (!is_hermitian(op, tol) || min_eigenvalue((op + op.adjoint()) * 0.5) < -tol) {
      throw DescriptionInvalidError("measurement operator '" + label +
                                    "' is not positive semidefinite");
    }
    sum += op;
  }
  if (max_abs_diff(sum, ComplexMatrix::Identity(dim, dim)) > tol) {
    throw DescriptionInvalidError("measurement on " + where +
                                  " does not sum to the identity");
  }
}

// Q_a = tr_Z(vec(B) vec(B)^*) for B : X -> Y (x) Z, on Y (x) X.
ComplexMatrix trace_out_memory(const ComplexMatrix& b, std::size_t dim_y,
                               std::size_t dim_z, std::size_t dim_x) {
  ComplexMatrix m(static_cast<Eigen::Index>(dim_y * dim_x),
                  static_cast<Eigen::Index>(dim_z));
  for (std::size_t y = 0; y < dim_y; ++y) {
    for (std::size_t z = 0; z < dim_z; ++z) {
      for (std::size_t x = 0; x < dim_x; ++x) {
        m(static_cast<Eigen::Index>(y * dim_x + x), static_cast<Eigen::Index>(z)) =
            b(static_cast<Eigen::Index>(y * dim_z + z), static_cast<Eigen::Index>(x));
      }
    }
  }
  return m * m.adjoint();
}

// Representation operator of a strategy on its rep space, one per outcome.
std::map<std::string, ComplexMatrix> strategy_rep_matrices(
    const StrategyDescription& desc) {
  const auto& prof = desc.profile;
  const std::size_t n = prof.turns();
  const std::size_t dy = prof.outputs.total_dim();
  const std::size_t dx = prof.inputs.total_dim();
  const std::size_t dz = n ? desc.memory_dims.back() : 1;
  const ComplexMatrix a = combined_isometry(desc);
  std::map<std::string, ComplexMatrix> out;
  if (!desc.measurement) {
    out[kTrivialOutcome] = trace_out_memory(a, dy, dz, dx);
    return out;
  }
  for (const auto& [label, p] : *desc.measurement) {
    const ComplexMatrix root = psd_sqrt((p + p.adjoint()) * 0.5);
    ComplexMatrix b(a.rows(), a.cols());
    for (std::size_t y = 0; y < dy; ++y) {
      const auto r0 = static_cast<Eigen::Index>(y * dz);
      const auto nz = static_cast<Eigen::Index>(dz);
      b.middleRows(r0, nz) = root * a.middleRows(r0, nz);
    }
    out[label] = trace_out_memory(b, dy, dz, dx);
  }
  return out;
}

SpaceProfile lifted_profile(const SpaceProfile& prof) {
  std::vector<Space> in{{kLiftIn, 1}};
  for (const auto& s : prof.outputs.factors()) in.push_back(s);
  std::vector<Space> out = prof.inputs.factors();
  out.push_back({kLiftOut, 1});
  return SpaceProfile(SpaceList(in), SpaceList(out));
}

std::map<std::string, HermOp> costrategy_rep_ops(const CoStrategyDescription& desc) {
  desc.check();
  const StrategyDescription lifted = lift_costrategy(desc);
  const SpaceList lifted_space = lifted.profile.rep_space();
  const SpaceList target = desc.profile.rep_space();
  std::map<std::string, HermOp> out;
  for (auto& [label, m] : strategy_rep_matrices(lifted)) {
    const ComplexMatrix dropped =
        partial_trace(m, lifted_space, {kLiftIn, kLiftOut});
    const SpaceList from = lifted_space.without({kLiftIn, kLiftOut});
    const ComplexMatrix transposed = dropped.transpose();
    out.emplace(label, HermOp(target, permute_matrix(transposed, from, target)));
  }
  return out;
}

}  // namespace

SpaceProfile::SpaceProfile(SpaceList in, SpaceList out)
    : inputs(std::move(in)), outputs(std::move(out)) {
  if (inputs.size() != outputs.size()) {
    throw ContractViolation("profile needs as many input as output spaces");
  }
  // Labels must be unique across the whole rep space.
  (void)rep_space();
}

SpaceProfile SpaceProfile::truncated(std::size_t k) const {
  if (k > turns()) throw ContractViolation("truncation beyond the turn count");
  std::vector<Space> in(inputs.factors().begin(), inputs.factors().begin() + k);
  std::vector<Space> out(outputs.factors().begin(), outputs.factors().begin() + k);
  return SpaceProfile(SpaceList(in), SpaceList(out));
}

std::size_t SpaceProfile::input_dim(std::size_t first, std::size_t last) const {
  std::size_t d = 1;
  for (std::size_t i = first; i < last; ++i) d *= inputs[i].dim;
  return d;
}

std::size_t SpaceProfile::output_dim(std::size_t first, std::size_t last) const {
  std::size_t d = 1;
  for (std::size_t i = first; i < last; ++i) d *= outputs[i].dim;
  return d;
}

bool SpaceProfile::compatible_with(const SpaceProfile& other) const {
  return inputs.dims() == other.inputs.dims() &&
         outputs.dims() == other.outputs.dims();
}

SpaceProfile make_profile(const std::vector<std::size_t>& input_dims,
                          const std::vector<std::size_t>& output_dims) {
  std::vector<Space> in, out;
  for (std::size_t i = 0; i < input_dims.size(); ++i) {
    in.push_back({"X" + std::to_string(i + 1), input_dims[i]});
  }
  for (std::size_t i = 0; i < output_dims.size(); ++i) {
    out.push_back({"Y" + std::to_string(i + 1), output_dims[i]});
  }
  return SpaceProfile(SpaceList(in), SpaceList(out));
}

std::string to_string(RepKind kind) {
  return kind == RepKind::strategy ? "strategy" : "costrategy";
}

RepKind rep_kind_from_string(const std::string& s) {
  if (s == "strategy") return RepKind::strategy;
  if (s == "costrategy" || s == "co-strategy") return RepKind::costrategy;
  throw ContractViolation("unknown representation kind '" + s + "'");
}

void StrategyDescription::check(double tol) const {
  const std::size_t n = profile.turns();
  if (memory_dims.size() != n || isometries.size() != n) {
    throw DescriptionInvalidError("strategy needs one memory space and one "
                                  "isometry per turn");
  }
  std::size_t prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const auto rows = static_cast<Eigen::Index>(profile.outputs[k].dim * memory_dims[k]);
    const auto cols = static_cast<Eigen::Index>(profile.inputs[k].dim * prev);
    check_isometry(isometries[k], rows, cols, "isometry A" + std::to_string(k + 1), tol);
    prev = memory_dims[k];
  }
  if (measurement) {
    check_measurement(*measurement, static_cast<Eigen::Index>(prev), "Z_n", tol);
  }
}

void CoStrategyDescription::check(double tol) const {
  const std::size_t n = profile.turns();
  if (n == 0) throw DescriptionInvalidError("co-strategy needs at least one turn");
  if (memory_dims.size() != n + 1 || isometries.size() != n) {
    throw DescriptionInvalidError("co-strategy needs memory spaces W_0..W_n and "
                                  "n isometries");
  }
  const auto d0 = static_cast<Eigen::Index>(profile.inputs[0].dim * memory_dims[0]);
  if (initial_state.rows() != d0 || initial_state.cols() != d0) {
    throw DescriptionInvalidError("initial state has the wrong size");
  }
  if (!is_hermitian(initial_state, tol) ||
      min_eigenvalue((initial_state + initial_state.adjoint()) * 0.5) < -tol ||
      std::abs(initial_state.trace() - Complex(1.0)) > tol) {
    throw DescriptionInvalidError("initial state is not a density operator");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next_msg = k + 1 < n ? profile.inputs[k + 1].dim : 1;
    const auto rows = static_cast<Eigen::Index>(next_msg * memory_dims[k + 1]);
    const auto cols = static_cast<Eigen::Index>(profile.outputs[k].dim * memory_dims[k]);
    check_isometry(isometries[k], rows, cols, "isometry B" + std::to_string(k + 1), tol);
  }
  if (measurement) {
    check_measurement(*measurement, static_cast<Eigen::Index>(memory_dims[n]), "W_n",
                      tol);
  }
}

HermOp MeasuringRep::total() const {
  if (outcomes.empty()) throw ContractViolation("measuring rep without outcomes");
  ComplexMatrix sum = ComplexMatrix::Zero(outcomes.begin()->second.matrix().rows(),
                                          outcomes.begin()->second.matrix().cols());
  for (const auto& [label, op] : outcomes) sum += op.matrix();
  return HermOp(outcomes.begin()->second.space(), sum);
}

ComplexMatrix combined_isometry(const StrategyDescription& desc) {
  const auto& prof = desc.profile;
  const std::size_t n = prof.turns();
  const std::size_t dx = prof.inputs.total_dim();
  const std::size_t dy = prof.outputs.total_dim();
  const std::size_t dz_last = n ? desc.memory_dims.back() : 1;
  ComplexMatrix a(static_cast<Eigen::Index>(dy * dz_last),
                  static_cast<Eigen::Index>(dx));
  const auto dims = prof.inputs.dims();
  std::vector<std::size_t> digit(n, 0);
  for (std::size_t col = 0; col < dx; ++col) {
    // State rows: output prefix; columns: current memory.
    ComplexMatrix state = ComplexMatrix::Ones(1, 1);
    std::size_t prev_z = 1;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t dyk = prof.outputs[k].dim;
      const std::size_t dzk = desc.memory_dims[k];
      const ComplexMatrix block = desc.isometries[k].middleCols(
          static_cast<Eigen::Index>(digit[k] * prev_z),
          static_cast<Eigen::Index>(prev_z));
      const ComplexMatrix flat = state * block.transpose();
      ComplexMatrix next(flat.rows() * static_cast<Eigen::Index>(dyk),
                         static_cast<Eigen::Index>(dzk));
      for (Eigen::Index p = 0; p < flat.rows(); ++p) {
        for (std::size_t y = 0; y < dyk; ++y) {
          for (std::size_t z = 0; z < dzk; ++z) {
            next(p * static_cast<Eigen::Index>(dyk) + static_cast<Eigen::Index>(y),
                 static_cast<Eigen::Index>(z)) =
                flat(p, static_cast<Eigen::Index>(y * dzk + z));
          }
        }
      }
      state = std::move(next);
      prev_z = dzk;
    }
    for (Eigen::Index y = 0; y < state.rows(); ++y) {
      for (Eigen::Index z = 0; z < state.cols(); ++z) {
        a(y * state.cols() + z, static_cast<Eigen::Index>(col)) = state(y, z);
      }
    }
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return a;
}

StrategyRep represent_strategy(const StrategyDescription& desc) {
  StrategyDescription plain = desc;
  plain.measurement.reset();
  plain.check();
  auto mats = strategy_rep_matrices(plain);
  return {desc.profile, RepKind::strategy,
          HermOp(desc.profile.rep_space(), mats.begin()->second)};
}

MeasuringRep represent_measuring_strategy(const StrategyDescription& desc) {
  desc.check();
  MeasuringRep rep{desc.profile, RepKind::strategy, {}};
  const SpaceList space = desc.profile.rep_space();
  for (auto& [label, m] : strategy_rep_matrices(desc)) {
    rep.outcomes.emplace(label, HermOp(space, m));
  }
  return rep;
}

StrategyDescription lift_costrategy(const CoStrategyDescription& desc) {
  const std::size_t n = desc.profile.turns();
  const std::size_t env = std::max<std::size_t>(1, numerical_rank(desc.initial_state));
  const ComplexMatrix root = purify(desc.initial_state, env);
  StrategyDescription lifted;
  lifted.profile = lifted_profile(desc.profile);
  const ComplexMatrix env_id = ComplexMatrix::Identity(
      static_cast<Eigen::Index>(env), static_cast<Eigen::Index>(env));
  lifted.memory_dims.push_back(desc.memory_dims[0] * env);
  lifted.isometries.push_back(vec(root));
  for (std::size_t k = 0; k < n; ++k) {
    lifted.memory_dims.push_back(desc.memory_dims[k + 1] * env);
    lifted.isometries.push_back(env == 1 ? desc.isometries[k]
                                         : kron(desc.isometries[k], env_id));
  }
  if (desc.measurement) {
    Measurement m;
    for (const auto& [label, op] : *desc.measurement) {
      m[label] = env == 1 ? op : kron(op, env_id);
    }
    lifted.measurement = std::move(m);
  }
  return lifted;
}

StrategyRep represent_costrategy(const CoStrategyDescription& desc) {
  CoStrategyDescription plain = desc;
  plain.measurement.reset();
  auto ops = costrategy_rep_ops(plain);
  return {desc.profile, RepKind::costrategy, ops.begin()->second};
}

MeasuringRep represent_measuring_costrategy(const CoStrategyDescription& desc) {
  return {desc.profile, RepKind::costrategy, costrategy_rep_ops(desc)};
}

double ValidationReport::max_residual() const {
  double m = psd_residual;
  for (const auto& l : levels) m = std::max(m, l.residual);
  return m;
}

ValidationReport validate(const HermOp& rep, const SpaceProfile& profile,
                          RepKind kind, double tol) {
  const SpaceList space = profile.rep_space();
  if (rep.space().dims() != space.dims()) {
    throw ProfileMismatchError("representation on " + to_string(rep.space()) +
                               " does not match profile space " + to_string(space));
  }
  // Work on the profile's labels regardless of how the operator was tagged.
  const HermOp q(space, rep.matrix());
  const std::size_t n = profile.turns();
  ValidationReport report;
  report.kind = kind;
  report.tol = tol;
  report.psd_residual = std::max(0.0, -min_eigenvalue(q.matrix()));

  if (kind == RepKind::strategy) {
    for (std::size_t k = n; k >= 2; --k) {
      const auto ys = label_range(profile.outputs, k - 1, n);
      const auto xs = label_range(profile.inputs, k - 1, n);
      const HermOp traced = partial_trace(q, ys);
      HermOp expected =
          partial_trace(traced, xs) * (1.0 / static_cast<double>(profile.input_dim(k - 1, n)));
      for (std::size_t j = k - 1; j < n; ++j) {
        expected = tensor_with_identity(expected, profile.inputs[j],
                                        expected.space().size());
      }
      report.levels.push_back(
          {"tr_Y" + std::to_string(k) + ".." + std::to_string(n) + "(Q) = Q" +
               std::to_string(k - 1) + " (x) I_X" + std::to_string(k) + ".." +
               std::to_string(n),
           k, max_abs_diff(traced.matrix(), expected.matrix())});
    }
    const HermOp top = partial_trace(q, label_range(profile.outputs, 0, n));
    report.levels.push_back(
        {"tr_Y1.." + std::to_string(n) + "(Q) = I", 1,
         max_abs_diff(top.matrix(), HermOp::identity(top.space()).matrix())});
  } else {
    HermOp cur = q;
    for (std::size_t k = n; k >= 1; --k) {
      const Space& yk = profile.outputs[k - 1];
      const HermOp r =
          partial_trace(cur, {yk.label}) * (1.0 / static_cast<double>(yk.dim));
      const HermOp expected = tensor_with_identity(r, yk, k - 1);
      report.levels.push_back({"Q" + std::to_string(k) + " = R" + std::to_string(k) +
                                   " (x) I_Y" + std::to_string(k),
                               k, max_abs_diff(cur.matrix(), expected.matrix())});
      cur = partial_trace(r, {profile.inputs[k - 1].label});
    }
    report.levels.push_back({"tr(Q0) = 1", 0, std::abs(cur.trace() - 1.0)});
  }
  if (n == 0 && kind == RepKind::strategy) {
    report.levels.back().residual = std::abs(q.trace() - 1.0);
  }
  report.valid = report.max_residual() <= tol;
  return report;
}

ValidationReport validate(const StrategyRep& rep, double tol) {
  return validate(rep.op, rep.profile, rep.kind, tol);
}

ValidationReport validate(const MeasuringRep& rep, double tol) {
  ValidationReport report = validate(rep.total(), rep.profile, rep.kind, tol);
  for (const auto& [label, op] : rep.outcomes) {
    report.psd_residual =
        std::max(report.psd_residual, std::max(0.0, -min_eigenvalue(op.matrix())));
  }
  report.valid = report.max_residual() <= tol;
  return report;
}

StrategyRep extract_marginal(const StrategyRep& rep, std::size_t k, double tol) {
  const std::size_t n = rep.profile.turns();
  if (k < 1 || k > n) throw ContractViolation("marginal turn out of range");
  const auto report = validate(rep, tol);
  if (!report.valid) {
    throw ValidationError("cannot take the marginal of an invalid representation");
  }
  const SpaceProfile& prof = rep.profile;
  const HermOp q(prof.rep_space(), rep.op.matrix());
  const auto traced = set_union(label_range(prof.outputs, k, n),
                                label_range(prof.inputs, k, n));
  const double norm = rep.kind == RepKind::strategy
                          ? static_cast<double>(prof.input_dim(k, n))
                          : static_cast<double>(prof.output_dim(k, n));
  return {prof.truncated(k), rep.kind, partial_trace(q, traced) * (1.0 / norm)};
}

SynthesisResult synthesize(const StrategyRep& rep, double tol, double rank_tol) {
  if (rep.kind != RepKind::strategy) {
    throw ContractViolation("synthesize expects a strategy representation");
  }
  if (!validate(rep, tol).valid) {
    throw ValidationError("cannot synthesize from an invalid representation");
  }
  const SpaceProfile& prof = rep.profile;
  const std::size_t n = prof.turns();
  const HermOp q(prof.rep_space(), rep.op.matrix());
  SynthesisResult result;
  StrategyDescription& desc = result.description;
  desc.profile = prof;

  ComplexMatrix prev_a = ComplexMatrix::Ones(1, 1);
  std::size_t prev_r = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto traced = set_union(label_range(prof.outputs, k, n),
                                  label_range(prof.inputs, k, n));
    const HermOp qk =
        partial_trace(q, traced) * (1.0 / static_cast<double>(prof.input_dim(k, n)));

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(qk.matrix(), Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double ev = es.eigenvalues()(i);
      if (ev > rank_tol * top) ++r;
      if (ev > 1e-3 * rank_tol * top && ev < 1e3 * rank_tol * top) {
        result.warnings.push_back("rank-tolerance: eigenvalue " + std::to_string(ev) +
                                  " of Q" + std::to_string(k) +
                                  " is close to the rank threshold");
      }
    }
    r = std::max<std::size_t>(r, 1);
    const ComplexMatrix pur = purify(qk, r, rank_tol);

    const std::size_t dy_prev = prof.output_dim(0, k - 1);
    const std::size_t dx_prev = prof.input_dim(0, k - 1);
    const std::size_t dyk = prof.outputs[k - 1].dim;
    const std::size_t dxk = prof.inputs[k - 1].dim;
    const std::size_t sys = dy_prev * dx_prev * dxk;

    // Both factors purify Q_{k-1} (x) I_{X_k} on Y_1..k-1 (x) X_1..k.
    ComplexMatrix ma = ComplexMatrix::Zero(static_cast<Eigen::Index>(prev_r * dxk),
                                           static_cast<Eigen::Index>(sys));
    ComplexMatrix mb(static_cast<Eigen::Index>(dyk * r), static_cast<Eigen::Index>(sys));
    for (std::size_t yp = 0; yp < dy_prev; ++yp) {
      for (std::size_t xp = 0; xp < dx_prev; ++xp) {
        for (std::size_t xk = 0; xk < dxk; ++xk) {
          const auto col = static_cast<Eigen::Index>((yp * dx_prev + xp) * dxk + xk);
          for (std::size_t zp = 0; zp < prev_r; ++zp) {
            ma(static_cast<Eigen::Index>(zp * dxk + xk), col) =
                prev_a(static_cast<Eigen::Index>(yp * prev_r + zp),
                       static_cast<Eigen::Index>(xp));
          }
          for (std::size_t yk = 0; yk < dyk; ++yk) {
            const std::size_t y_full = yp * dyk + yk;
            const std::size_t x_full = xp * dxk + xk;
            for (std::size_t z = 0; z < r; ++z) {
              mb(static_cast<Eigen::Index>(yk * r + z), col) =
                  pur(static_cast<Eigen::Index>(y_full * dx_prev * dxk + x_full),
                      static_cast<Eigen::Index>(z));
            }
          }
        }
      }
    }
    const ComplexMatrix overlap = mb * ma.adjoint();
    if (overlap.rows() < overlap.cols()) {
      throw ValidationError("purification dimensions inconsistent at turn " +
                            std::to_string(k));
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(overlap, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const ComplexMatrix u = svd.matrixU() * svd.matrixV().adjoint();

    // Reorder the connecting isometry's input from (z_prev, x_k) to (x_k, z_prev).
    ComplexMatrix ak(u.rows(), u.cols());
    for (std::size_t xk = 0; xk < dxk; ++xk) {
      for (std::size_t zp = 0; zp < prev_r; ++zp) {
        ak.col(static_cast<Eigen::Index>(xk * prev_r + zp)) =
            u.col(static_cast<Eigen::Index>(zp * dxk + xk));
      }
    }
    desc.memory_dims.push_back(r);
    desc.isometries.push_back(std::move(ak));
    StrategyDescription partial = desc;
    partial.profile = prof.truncated(k);
    prev_a = combined_isometry(partial);
    prev_r = r;
  }
  return result;
}

Measurement random_projective_measurement(std::size_t dim, std::size_t n_outcomes,
                                          std::uint64_t seed) {
  if (n_outcomes == 0) throw ContractViolation("measurement needs outcomes");
  const ComplexMatrix u = haar_isometry(dim, dim, seed);
  Measurement m;
  std::size_t start = 0;
  for (std::size_t j = 0; j < n_outcomes; ++j) {
    const std::size_t count = dim / n_outcomes + (j < dim % n_outcomes ? 1 : 0);
    const ComplexMatrix cols = u.middleCols(static_cast<Eigen::Index>(start),
                                            static_cast<Eigen::Index>(count));
    m[std::to_string(j)] = cols * cols.adjoint();
    if (count == 0) {
      m[std::to_string(j)] = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
    }
    start += count;
  }
  return m;
}

StrategyDescription random_strategy(const SpaceProfile& profile,
                                    std::size_t n_outcomes, std::uint64_t seed) {
  StrategyDescription desc;
  desc.profile = profile;
  const std::size_t n = profile.turns();
  std::size_t prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t z = profile.input_dim(0, k + 1) * profile.output_dim(0, k + 1);
    desc.memory_dims.push_back(z);
    desc.isometries.push_back(haar_isometry(profile.inputs[k].dim * prev,
                                            profile.outputs[k].dim * z,
                                            mix_seed(seed, k)));
    prev = z;
  }
  if (n_outcomes > 0) {
    desc.measurement = random_projective_measurement(prev, n_outcomes, mix_seed(seed, 1000));
  }
  return desc;
}

CoStrategyDescription random_costrategy(const SpaceProfile& profile,
                                        std::size_t n_outcomes, std::uint64_t seed) {
  if (profile.turns() == 0) throw ContractViolation("co-strategy needs a turn");
  const StrategyDescription lifted =
      random_strategy(lifted_profile(profile), n_outcomes, seed);
  CoStrategyDescription desc;
  desc.profile = profile;
  desc.memory_dims = lifted.memory_dims;
  const ComplexVector u = lifted.isometries[0].col(0);
  desc.initial_state = u * u.adjoint();
  desc.isometries.assign(lifted.isometries.begin() + 1, lifted.isometries.end());
  desc.measurement = lifted.measurement;
  return desc;
}

}  // namespace qstrat
