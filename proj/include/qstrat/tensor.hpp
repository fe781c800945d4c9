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

// Dense complex linear algebra over labeled tensor-product spaces.
//
// Index convention: the first listed factor is the most significant digit
// of a composite index (big-endian), so kron(a, b) places a's indices in
// the high position. vec() flattens row-major, giving vec(|i><j|) = |i>|j>.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qstrat/errors.hpp"

namespace qstrat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-8;

struct Space {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Space&, const Space&) = default;
};

/// Ordered list of tensor factors with unique labels.
class SpaceList {
 public:
  SpaceList() = default;
  SpaceList(std::initializer_list<Space> factors);
  explicit SpaceList(std::vector<Space> factors);

  const std::vector<Space>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  const Space& operator[](std::size_t i) const { return factors_[i]; }

  std::size_t total_dim() const;
  bool contains(const std::string& label) const;
  /// Position of a label; throws LabelNotFoundError.
  std::size_t index_of(const std::string& label) const;
  std::vector<std::string> labels() const;
  std::vector<std::size_t> dims() const;

  /// Concatenation; labels must stay unique.
  SpaceList concat(const SpaceList& other) const;
  SpaceList without(const std::set<std::string>& labels) const;
  SpaceList only(const std::set<std::string>& labels) const;
  SpaceList inserted(const Space& factor, std::size_t position) const;

  friend bool operator==(const SpaceList&, const SpaceList&) = default;

 private:
  std::vector<Space> factors_;
};

std::string to_string(const SpaceList& s);

/// Hermitian operator tagged with the factors it acts on. Construction
/// checks the side length and Hermiticity (relative to the max entry) and
/// stores the exactly-Hermitian part.
class HermOp {
 public:
  HermOp() = default;
  HermOp(SpaceList space, ComplexMatrix matrix, double herm_tol = kHermTol);

  const SpaceList& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  HermOp operator+(const HermOp& other) const;
  HermOp operator-(const HermOp& other) const;
  HermOp operator*(double s) const;
  friend HermOp operator*(double s, const HermOp& op) { return op * s; }

  /// Real trace.
  double trace() const;

  static HermOp identity(const SpaceList& space);
  static HermOp scalar(double value);

 private:
  SpaceList space_;
  ComplexMatrix matrix_;
};

/// Hilbert-Schmidt inner product <a, b> = tr(a^* b).
Complex inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Real Hilbert-Schmidt inner product of Hermitian operators.
double inner(const HermOp& a, const HermOp& b);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major flattening into a column vector.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, std::size_t rows, std::size_t cols);

/// For each composite index of `to`, the composite index of `from` that
/// carries the same digits. Both lists must hold the same labels.
std::vector<std::size_t> permutation_map(const SpaceList& from,
                                         const SpaceList& to);

/// Reorders the factors of op to `order` (same label set).
HermOp permute(const HermOp& op, const SpaceList& order);
ComplexMatrix permute_matrix(const ComplexMatrix& m, const SpaceList& from,
                             const SpaceList& to);

HermOp partial_trace(const HermOp& op,
                     const std::set<std::string>& traced_labels);
ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceList& space,
                            const std::set<std::string>& traced_labels);

/// op (x) I with the new factor placed at `position` of the factor list.
HermOp tensor_with_identity(const HermOp& op, const Space& new_factor,
                            std::size_t position);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);
bool is_psd(const ComplexMatrix& m, double tol = kPsdTol);
bool is_psd(const HermOp& op, double tol = kPsdTol);

/// Number of eigenvalues above rel_tol * lambda_max.
std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol = 1e-9);

/// Returns B (dim x env_dim) with B B^* = op, i.e. the environment factor
/// traced from vec(B) vec(B)^* reproduces op. Columns are eigenvectors
/// scaled by sqrt(eigenvalue); extra columns are zero.
ComplexMatrix purify(const HermOp& op, std::size_t env_dim,
                     double rank_tol = 1e-9);
ComplexMatrix purify(const ComplexMatrix& op, std::size_t env_dim,
                     double rank_tol = 1e-9);

/// Principal square root of a PSD matrix (negative eigenvalues clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Haar-distributed isometry (out_dim x in_dim), deterministic per seed.
ComplexMatrix haar_isometry(std::size_t in_dim, std::size_t out_dim,
                            std::uint64_t seed);

}  // namespace qstrat
