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

// Linear expressions in named Hermitian matrix variables. An expression is a
// sum of terms M_v vec(X_v), each M_v a sparse complex matrix from the
// variable's vec space to the output's vec space.

#include <map>
#include <set>
#include <string>

#include <Eigen/SparseCore>

#include "qstrat/tensor.hpp"

namespace qstrat {

using SparseComplex = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

struct LinTerm {
  SpaceList var_space;
  SparseComplex coeff;  // vec(out) x vec(var)
};

class LinExpr {
 public:
  LinExpr() = default;

  static LinExpr variable(const std::string& name, const SpaceList& space);
  /// The zero map into `space`.
  static LinExpr zero(const SpaceList& space);

  const SpaceList& space() const { return space_; }
  const std::map<std::string, LinTerm>& terms() const { return terms_; }
  std::size_t dim() const { return space_.total_dim(); }

  /// Factor orders must match exactly; reorder with permute() first.
  LinExpr operator+(const LinExpr& other) const;
  LinExpr operator-(const LinExpr& other) const;
  LinExpr operator*(double s) const;
  friend LinExpr operator*(double s, const LinExpr& e) { return e * s; }

  /// Applies the linear map T (vec(new) x vec(old)).
  LinExpr mapped(const SparseComplex& t, SpaceList new_space) const;

  /// Evaluates at the given variable values (missing variables are zero).
  ComplexMatrix evaluate(const std::map<std::string, ComplexMatrix>& values) const;

 private:
  SpaceList space_;
  std::map<std::string, LinTerm> terms_;
};

LinExpr partial_trace(const LinExpr& e, const std::set<std::string>& traced_labels);
/// Full trace, a scalar expression.
LinExpr trace(const LinExpr& e);
LinExpr tensor_identity(const LinExpr& e, const Space& factor, std::size_t position);
LinExpr permute(const LinExpr& e, const SpaceList& order);

/// tr_S((X (x) I) R) for X = e on the factors S of R; the result lives on the
/// remaining factors of R in R's order.
LinExpr hardwire(const LinExpr& e, const HermOp& r);

/// <C, X> = tr(C X) as a scalar expression.
LinExpr inner_with(const LinExpr& e, const HermOp& c);

}  // namespace qstrat
