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

// Semidefinite programs over named Hermitian PSD blocks, compiled to a real
// symmetric standard form, solved by a primal-dual interior-point method,
// and exchanged in SDPA sparse format.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qstrat/lin_expr.hpp"

namespace qstrat {

enum class Sense { minimize, maximize };
enum class SdpStatus { optimal, infeasible_suspected, max_iterations };
std::string to_string(SdpStatus status);

struct SdpOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  double psd_tol = 1e-8;
  int max_iter = 200;
};

struct SdpEquality {
  LinExpr lhs;
  HermOp rhs;
  std::string label;
};

struct SdpInequality {
  LinExpr lhs;  // lhs >= rhs in the Loewner order
  HermOp rhs;
};

/// Every variable is a Hermitian PSD block.
class SdpProblem {
 public:
  LinExpr add_variable(const std::string& name, const SpaceList& space);
  void add_equality(const LinExpr& lhs, const HermOp& rhs, std::string label = {});
  /// lhs - rhs = 0.
  void add_equality(const LinExpr& lhs, const LinExpr& rhs, std::string label = {});
  void set_psd_inequality(const LinExpr& lhs, const HermOp& rhs);
  void set_psd_inequality(const LinExpr& lhs, const LinExpr& rhs);
  /// The objective is the real part of a scalar expression.
  void set_objective(Sense sense, const LinExpr& scalar);

  const std::map<std::string, SpaceList>& variables() const { return variables_; }
  const std::vector<SdpEquality>& equalities() const { return equalities_; }
  const std::optional<SdpInequality>& psd_inequality() const { return inequality_; }
  Sense sense() const { return sense_; }
  const LinExpr& objective() const { return objective_; }

  /// Reserved name of the inequality's slack block.
  static constexpr const char* kSlackName = "~slack";

 private:
  void check_expr(const LinExpr& e) const;

  std::map<std::string, SpaceList> variables_;
  std::vector<SdpEquality> equalities_;
  std::optional<SdpInequality> inequality_;
  Sense sense_ = Sense::minimize;
  LinExpr objective_;
  bool has_objective_ = false;
};

/// One upper-triangular entry of a symmetric block matrix (0-based).
struct SdpEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// min <C, Y> s.t. <A_i, Y> = b_i, Y >= 0 with Y block diagonal. Matrices
/// are symmetric and stored by their upper triangles.
struct RealSdp {
  std::vector<int> block_sizes;
  std::vector<SdpEntry> c;
  std::vector<std::vector<SdpEntry>> a;
  std::vector<double> b;
};

struct RealSolution {
  SdpStatus status = SdpStatus::max_iterations;
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> z;
  Eigen::VectorXd y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double complementarity = 0.0;
  int iterations = 0;
  /// Primal minus dual objective at the returned iterate; negative values
  /// flag a weak-duality violation.
  double final_gap = 0.0;
};

RealSolution solve_real(const RealSdp& problem, const SdpOptions& options = {});

/// The real standard form of a complex problem and the block bookkeeping.
struct CompiledSdp {
  RealSdp real;
  std::vector<std::string> block_names;  // variables by name, slack last
  std::vector<SpaceList> block_spaces;
  double objective_sign = 1.0;  // problem objective = sign * <C, Y>
};

CompiledSdp compile(const SdpProblem& problem);

struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  double objective_value = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double complementarity = 0.0;
  double max_constraint_residual = 0.0;
  double min_block_eigenvalue = 0.0;
  int iterations = 0;
  std::map<std::string, HermOp> blocks;
  std::optional<HermOp> slack;
};

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

/// Residuals of the problem's constraints at the given variable values.
double max_constraint_residual(const SdpProblem& problem,
                               const std::map<std::string, ComplexMatrix>& values);

/// [[Re H, -Im H], [Im H, Re H]].
Eigen::MatrixXd realify(const ComplexMatrix& h);
/// (Y11 + Y22)/2 + i (Y21 - Y12)/2.
ComplexMatrix derealify(const Eigen::MatrixXd& y);

/// SDPA sparse text; F0 = -C, F_i = A_i, c = b, so SDPA's maximization of
/// <F0, Y> is the negated minimization.
std::string export_sdpa(const RealSdp& problem, const std::string& comment = {});
std::string export_sdpa(const SdpProblem& problem);
/// Throws ParseError.
RealSdp parse_sdpa(const std::string& text);

}  // namespace qstrat
