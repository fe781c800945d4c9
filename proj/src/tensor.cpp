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

#include "qstrat/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qstrat {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

// Splits every composite index of `space` into the index over the kept
// factors and the index over the selected factors.
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> selected;
  std::size_t kept_dim = 1;
  std::size_t selected_dim = 1;
};

IndexSplit split_indices(const SpaceList& space,
                         const std::set<std::string>& selected) {
  IndexSplit out;
  const auto dims = space.dims();
  std::vector<bool> is_sel(dims.size());
  std::vector<std::size_t> kept_dims, sel_dims;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    is_sel[i] = selected.count(space[i].label) > 0;
    (is_sel[i] ? sel_dims : kept_dims).push_back(dims[i]);
  }
  for (auto d : kept_dims) out.kept_dim *= d;
  for (auto d : sel_dims) out.selected_dim *= d;
  const std::size_t total = space.total_dim();
  out.kept.resize(total);
  out.selected.resize(total);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t k = 0, s = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (is_sel[i]) {
        s = s * dims[i] + digit[i];
      } else {
        k = k * dims[i] + digit[i];
      }
    }
    out.kept[idx] = k;
    out.selected[idx] = s;
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return out;
}

void check_labels(const std::set<std::string>& labels, const SpaceList& space) {
  for (const auto& l : labels) {
    if (!space.contains(l)) throw LabelNotFoundError(l);
  }
}

}  // namespace

SpaceList::SpaceList(std::initializer_list<Space> factors)
    : SpaceList(std::vector<Space>(factors)) {}

SpaceList::SpaceList(std::vector<Space> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw ContractViolation("space '" + f.label + "' has dim 0");
    if (!seen.insert(f.label).second) {
      throw ContractViolation("duplicate space label '" + f.label + "'");
    }
  }
}

std::size_t SpaceList::total_dim() const {
  std::size_t d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

bool SpaceList::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Space& s) { return s.label == label; });
}

std::size_t SpaceList::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw LabelNotFoundError(label);
}

std::vector<std::string> SpaceList::labels() const {
  std::vector<std::string> out;
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

std::vector<std::size_t> SpaceList::dims() const {
  std::vector<std::size_t> out;
  for (const auto& f : factors_) out.push_back(f.dim);
  return out;
}

SpaceList SpaceList::concat(const SpaceList& other) const {
  auto f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return SpaceList(std::move(f));
}

SpaceList SpaceList::without(const std::set<std::string>& labels) const {
  std::vector<Space> f;
  for (const auto& s : factors_) {
    if (!labels.count(s.label)) f.push_back(s);
  }
  return SpaceList(std::move(f));
}

SpaceList SpaceList::only(const std::set<std::string>& labels) const {
  std::vector<Space> f;
  for (const auto& s : factors_) {
    if (labels.count(s.label)) f.push_back(s);
  }
  return SpaceList(std::move(f));
}

SpaceList SpaceList::inserted(const Space& factor, std::size_t position) const {
  if (position > factors_.size()) {
    throw ContractViolation("insert position out of range");
  }
  auto f = factors_;
  f.insert(f.begin() + static_cast<std::ptrdiff_t>(position), factor);
  return SpaceList(std::move(f));
}

std::string to_string(const SpaceList& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ", ";
    os << s[i].label << ":" << s[i].dim;
  }
  os << "]";
  return os.str();
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractViolation("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= tol * scale;
}

HermOp::HermOp(SpaceList space, ComplexMatrix matrix, double herm_tol)
    : space_(std::move(space)) {
  const auto d = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix.rows() != d || matrix.cols() != d) {
    throw ContractViolation("operator side " + std::to_string(matrix.rows()) +
                            "x" + std::to_string(matrix.cols()) +
                            " does not match space " + to_string(space_));
  }
  if (!is_hermitian(matrix, herm_tol)) {
    throw ContractViolation("operator on " + to_string(space_) +
                            " is not Hermitian");
  }
  matrix_ = (matrix + matrix.adjoint()) * 0.5;
}

HermOp HermOp::operator+(const HermOp& other) const {
  if (!(space_ == other.space_)) {
    throw ProfileMismatchError("adding operators on " + to_string(space_) +
                               " and " + to_string(other.space_));
  }
  return HermOp(space_, matrix_ + other.matrix_);
}

HermOp HermOp::operator-(const HermOp& other) const {
  if (!(space_ == other.space_)) {
    throw ProfileMismatchError("subtracting operators on " + to_string(space_) +
                               " and " + to_string(other.space_));
  }
  return HermOp(space_, matrix_ - other.matrix_);
}

HermOp HermOp::operator*(double s) const { return HermOp(space_, matrix_ * s); }

double HermOp::trace() const { return matrix_.trace().real(); }

HermOp HermOp::identity(const SpaceList& space) {
  const auto d = static_cast<Eigen::Index>(space.total_dim());
  return HermOp(space, ComplexMatrix::Identity(d, d));
}

HermOp HermOp::scalar(double value) {
  return HermOp(SpaceList{}, ComplexMatrix::Constant(1, 1, value));
}

Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractViolation("inner: shape mismatch");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

double inner(const HermOp& a, const HermOp& b) {
  if (!(a.space() == b.space())) {
    throw ProfileMismatchError("inner product of operators on " +
                               to_string(a.space()) + " and " +
                               to_string(b.space()));
  }
  return inner(a.matrix(), b.matrix()).real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vec(const ComplexMatrix& a) {
  ComplexVector v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    throw ContractViolation("unvec: size mismatch");
  }
  ComplexMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  }
  return a;
}

std::vector<std::size_t> permutation_map(const SpaceList& from,
                                         const SpaceList& to) {
  if (from.size() != to.size()) {
    throw ContractViolation("permutation between " + to_string(from) +
                            " and " + to_string(to) + ": factor count differs");
  }
  const auto from_strides = strides_of(from.dims());
  std::vector<std::size_t> to_pos_stride(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    const std::size_t j = from.index_of(to[i].label);
    if (from[j].dim != to[i].dim) {
      throw ContractViolation("permutation: dimension of '" + to[i].label +
                              "' differs");
    }
    to_pos_stride[i] = from_strides[j];
  }
  const auto dims = to.dims();
  const std::size_t total = to.total_dim();
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) src += digit[i] * to_pos_stride[i];
    map[idx] = src;
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return map;
}

ComplexMatrix permute_matrix(const ComplexMatrix& m, const SpaceList& from,
                             const SpaceList& to) {
  const auto map = permutation_map(from, to);
  const auto d = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(map[i]),
                    static_cast<Eigen::Index>(map[j]));
    }
  }
  return out;
}

HermOp permute(const HermOp& op, const SpaceList& order) {
  return HermOp(order, permute_matrix(op.matrix(), op.space(), order));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceList& space,
                            const std::set<std::string>& traced_labels) {
  check_labels(traced_labels, space);
  const auto split = split_indices(space, traced_labels);
  // Group composite indices by their traced digits.
  std::vector<std::vector<std::size_t>> groups(split.selected_dim);
  for (std::size_t idx = 0; idx < split.kept.size(); ++idx) {
    groups[split.selected[idx]].push_back(idx);
  }
  const auto kd = static_cast<Eigen::Index>(split.kept_dim);
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (const auto& g : groups) {
    for (auto a : g) {
      for (auto b : g) {
        out(static_cast<Eigen::Index>(split.kept[a]),
            static_cast<Eigen::Index>(split.kept[b])) +=
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  }
  return out;
}

HermOp partial_trace(const HermOp& op,
                     const std::set<std::string>& traced_labels) {
  return HermOp(op.space().without(traced_labels),
                partial_trace(op.matrix(), op.space(), traced_labels));
}

HermOp tensor_with_identity(const HermOp& op, const Space& new_factor,
                            std::size_t position) {
  const SpaceList out_space = op.space().inserted(new_factor, position);
  const auto split = split_indices(out_space, {new_factor.label});
  const auto d = static_cast<Eigen::Index>(out_space.total_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      if (split.selected[a] != split.selected[b]) continue;
      out(a, b) = op.matrix()(static_cast<Eigen::Index>(split.kept[a]),
                              static_cast<Eigen::Index>(split.kept[b]));
    }
  }
  return HermOp(out_space, std::move(out));
}

double min_eigenvalue(const ComplexMatrix& m) {
  if (!is_hermitian(m)) {
    throw ContractViolation("eigenvalues requested for a non-Hermitian matrix");
  }
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  return min_eigenvalue(m) >= -tol;
}

bool is_psd(const HermOp& op, double tol) { return is_psd(op.matrix(), tol); }

std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  if (top <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rel_tol * top) ++r;
  }
  return r;
}

ComplexMatrix purify(const ComplexMatrix& op, std::size_t env_dim,
                     double rank_tol) {
  if (!is_hermitian(op)) throw ContractViolation("purify: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op);
  const auto& ev = es.eigenvalues();
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  if (ev.size() && ev.minCoeff() < -kPsdTol * std::max(1.0, top)) {
    throw ContractViolation("purify: input not positive semidefinite");
  }
  std::vector<Eigen::Index> kept;
  // Largest eigenvalues first so column order is stable.
  for (Eigen::Index i = ev.size(); i-- > 0;) {
    if (top > 0.0 && ev(i) > rank_tol * top) kept.push_back(i);
  }
  if (kept.size() > env_dim) {
    throw InsufficientEnvironmentError(
        "purify: rank " + std::to_string(kept.size()) +
        " exceeds environment dimension " + std::to_string(env_dim));
  }
  ComplexMatrix b = ComplexMatrix::Zero(op.rows(), static_cast<Eigen::Index>(env_dim));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    b.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(kept[c]) * std::sqrt(ev(kept[c]));
  }
  return b;
}

ComplexMatrix purify(const HermOp& op, std::size_t env_dim, double rank_tol) {
  return purify(op.matrix(), env_dim, rank_tol);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix haar_isometry(std::size_t in_dim, std::size_t out_dim,
                            std::uint64_t seed) {
  if (in_dim > out_dim) {
    throw NoIsometryError("no isometry from dimension " + std::to_string(in_dim) +
                          " into dimension " + std::to_string(out_dim));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto rows = static_cast<Eigen::Index>(out_dim);
  const auto cols = static_cast<Eigen::Index>(in_dim);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

}  // namespace qstrat
