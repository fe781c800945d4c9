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

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qstrat/errors.hpp"
#include "qstrat/sdp.hpp"

namespace qstrat {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Blocks = std::vector<Mat>;

constexpr double kStepFraction = 0.95;
constexpr double kDivergence = 1e12;

// <A, K> for symmetric A given by its upper triangle and any square K.
double inner_entries(const std::vector<SdpEntry>& a, const Blocks& k) {
  double s = 0.0;
  for (const auto& e : a) {
    const Mat& m = k[static_cast<std::size_t>(e.block)];
    s += e.row == e.col ? e.value * m(e.row, e.col)
                        : e.value * (m(e.row, e.col) + m(e.col, e.row));
  }
  return s;
}

void add_entries(Blocks& out, const std::vector<SdpEntry>& a, double s) {
  for (const auto& e : a) {
    Mat& m = out[static_cast<std::size_t>(e.block)];
    m(e.row, e.col) += s * e.value;
    if (e.row != e.col) m(e.col, e.row) += s * e.value;
  }
}

double inner_blocks(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
  return s;
}

Blocks zeros_like(const std::vector<int>& sizes) {
  Blocks out;
  for (int n : sizes) out.push_back(Mat::Zero(n, n));
  return out;
}

double max_abs_blocks(const Blocks& b) {
  double m = 0.0;
  for (const auto& x : b) {
    if (x.size()) m = std::max(m, x.cwiseAbs().maxCoeff());
  }
  return m;
}

void symmetrize(Blocks& b) {
  for (auto& x : b) x = 0.5 * (x + x.transpose()).eval();
}

// Largest alpha with X + alpha dX >= 0 (infinity if unbounded, 0 if X is
// not positive definite).
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    Eigen::LLT<Mat> llt(x[i]);
    if (llt.info() != Eigen::Success) return 0.0;
    const Mat l = llt.matrixL();
    Mat w = l.triangularView<Eigen::Lower>().solve(dx[i]);
    w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (w + w.transpose()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

double frob_block(const std::vector<SdpEntry>& a, int block) {
  double s = 0.0;
  for (const auto& e : a) {
    if (e.block == block) s += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  }
  return std::sqrt(s);
}

// Indices of a maximal linearly independent subset of the constraint rows.
std::vector<std::size_t> independent_rows(const RealSdp& p) {
  std::vector<std::size_t> offset(p.block_sizes.size() + 1, 0);
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    const auto n = static_cast<std::size_t>(p.block_sizes[b]);
    offset[b + 1] = offset[b] + n * (n + 1) / 2;
  }
  const std::size_t m = p.a.size();
  Mat at = Mat::Zero(static_cast<Eigen::Index>(offset.back()), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    double norm = 0.0;
    for (const auto& e : p.a[i]) norm = std::max(norm, std::abs(e.value));
    for (const auto& e : p.a[i]) {
      const auto b = static_cast<std::size_t>(e.block);
      const auto n = static_cast<std::size_t>(p.block_sizes[b]);
      const std::size_t r = static_cast<std::size_t>(e.row), c = static_cast<std::size_t>(e.col);
      // Upper-triangular packed index of (r, c), r <= c.
      const std::size_t idx = offset[b] + r * n - r * (r + 1) / 2 + c;
      at(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(i)) +=
          (r == c ? 1.0 : std::sqrt(2.0)) * e.value / norm;
    }
  }
  Eigen::ColPivHouseholderQR<Mat> qr(at);
  qr.setThreshold(1e-10);
  const auto rank = static_cast<std::size_t>(qr.rank());
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < rank; ++k) {
    keep.push_back(static_cast<std::size_t>(qr.colsPermutation().indices()(static_cast<Eigen::Index>(k))));
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

class InteriorPoint {
 public:
  InteriorPoint(const RealSdp& p, const SdpOptions& opt) : full_(p), opt_(opt) {
    for (int n : p.block_sizes) {
      if (n <= 0) throw ModelError("SDP block of size 0");
    }
    if (p.a.size() != p.b.size()) throw ModelError("constraint count mismatch");
    keep_ = independent_rows(p);
    for (auto i : keep_) {
      a_.push_back(p.a[i]);
      b_.push_back(p.b[i]);
    }
    c_ = zeros_like(p.block_sizes);
    add_entries(c_, p.c, 1.0);
    // Constraint indices touching each block, with that block's entries.
    by_block_.resize(p.block_sizes.size());
    for (std::size_t i = 0; i < a_.size(); ++i) {
      std::vector<std::vector<SdpEntry>> per(p.block_sizes.size());
      for (const auto& e : a_[i]) per[static_cast<std::size_t>(e.block)].push_back(e);
      for (std::size_t b = 0; b < per.size(); ++b) {
        if (!per[b].empty()) by_block_[b].push_back({i, std::move(per[b])});
      }
    }
  }

  RealSolution run() {
    const std::size_t nb = full_.block_sizes.size();
    const std::size_t m = a_.size();
    Blocks x(nb), z(nb);
    std::size_t total_dim = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      const int n = full_.block_sizes[b];
      total_dim += static_cast<std::size_t>(n);
      const double rn = std::sqrt(static_cast<double>(n));
      double xi = std::max(10.0, rn), eta = std::max(10.0, rn);
      double cnorm = c_[b].norm();
      for (std::size_t i = 0; i < m; ++i) {
        const double an = frob_block(a_[i], static_cast<int>(b));
        xi = std::max(xi, rn * (1.0 + std::abs(b_[i])) / (1.0 + an));
        cnorm = std::max(cnorm, an);
      }
      eta = std::max(eta, (1.0 + cnorm) / rn);
      x[b] = xi * Mat::Identity(n, n);
      z[b] = eta * Mat::Identity(n, n);
    }
    Vec y = Vec::Zero(static_cast<Eigen::Index>(m));
    Vec bvec(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) bvec(static_cast<Eigen::Index>(i)) = b_[i];

    RealSolution sol;
    sol.status = SdpStatus::max_iterations;
    for (int iter = 0;; ++iter) {
      const Vec rp = bvec - apply_a(x);
      Blocks rd = c_;
      for (std::size_t b = 0; b < nb; ++b) rd[b] -= z[b];
      add_at_y(rd, y, -1.0);
      const double pobj = inner_blocks(c_, x);
      const double dobj = bvec.dot(y);
      const double xz = inner_blocks(x, z);
      const double pres = m ? rp.cwiseAbs().maxCoeff() : 0.0;
      const double dres = max_abs_blocks(rd);
      record(sol, x, y, z, pobj, dobj, pres, dres, xz, iter);
      if (std::abs(pobj - dobj) <= opt_.gap_tol && pres <= opt_.feas_tol &&
          dres <= opt_.feas_tol) {
        sol.status = SdpStatus::optimal;
        break;
      }
      if (max_abs_blocks(x) > kDivergence || max_abs_blocks(z) > kDivergence) {
        sol.status = SdpStatus::infeasible_suspected;
        break;
      }
      if (iter >= opt_.max_iter) break;

      Blocks zinv(nb);
      bool ok = true;
      for (std::size_t b = 0; b < nb; ++b) {
        Eigen::LLT<Mat> llt(z[b]);
        if (llt.info() != Eigen::Success) {
          ok = false;
          break;
        }
        zinv[b] = llt.solve(Mat::Identity(z[b].rows(), z[b].cols()));
        zinv[b] = 0.5 * (zinv[b] + zinv[b].transpose()).eval();
      }
      if (!ok) break;
      const Mat schur = schur_matrix(x, zinv);
      Eigen::LLT<Mat> chol(schur);
      Eigen::LDLT<Mat> ldlt;
      const bool use_llt = chol.info() == Eigen::Success;
      if (!use_llt) ldlt.compute(schur);
      auto solve_m = [&](const Vec& rhs) -> Vec {
        return use_llt ? Vec(chol.solve(rhs)) : Vec(ldlt.solve(rhs));
      };

      const double mu = xz / static_cast<double>(total_dim);
      Blocks xrdz(nb);
      for (std::size_t b = 0; b < nb; ++b) xrdz[b] = x[b] * rd[b] * zinv[b];

      // Predictor.
      Blocks k(nb);
      for (std::size_t b = 0; b < nb; ++b) k[b] = -x[b] - xrdz[b];
      Blocks dxp, dzp;
      Vec dyp;
      direction(k, rp, rd, x, zinv, solve_m, dxp, dyp, dzp);
      const double ap = std::min(1.0, kStepFraction * max_step(x, dxp));
      const double ad = std::min(1.0, kStepFraction * max_step(z, dzp));
      double trial = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        trial += ((x[b] + ap * dxp[b]).cwiseProduct(z[b] + ad * dzp[b])).sum();
      }
      const double sigma = std::clamp(std::pow(trial / xz, 3.0), 0.0, 1.0);

      // Corrector.
      for (std::size_t b = 0; b < nb; ++b) {
        k[b] = sigma * mu * zinv[b] - x[b] - xrdz[b] - dxp[b] * dzp[b] * zinv[b];
      }
      Blocks dx, dz;
      Vec dy;
      direction(k, rp, rd, x, zinv, solve_m, dx, dy, dz);
      const double alpha_p = std::min(1.0, kStepFraction * max_step(x, dx));
      const double alpha_d = std::min(1.0, kStepFraction * max_step(z, dz));
      if (alpha_p < 1e-12 && alpha_d < 1e-12) break;
      for (std::size_t b = 0; b < nb; ++b) {
        x[b] += alpha_p * dx[b];
        z[b] += alpha_d * dz[b];
      }
      y += alpha_d * dy;
    }
    // Report y over all rows; dropped dependent rows carry zero multipliers.
    Vec full_y = Vec::Zero(static_cast<Eigen::Index>(full_.a.size()));
    for (std::size_t i = 0; i < keep_.size(); ++i) {
      full_y(static_cast<Eigen::Index>(keep_[i])) = sol.y(static_cast<Eigen::Index>(i));
    }
    sol.y = full_y;
    double pres_full = 0.0;
    for (std::size_t i = 0; i < full_.a.size(); ++i) {
      pres_full = std::max(pres_full, std::abs(full_.b[i] - inner_entries(full_.a[i], sol.x)));
    }
    sol.primal_residual = pres_full;
    if (sol.status == SdpStatus::optimal && pres_full > opt_.feas_tol) {
      sol.status = SdpStatus::infeasible_suspected;
    }
    return sol;
  }

 private:
  Vec apply_a(const Blocks& k) const {
    Vec out(static_cast<Eigen::Index>(a_.size()));
    for (std::size_t i = 0; i < a_.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = inner_entries(a_[i], k);
    }
    return out;
  }

  void add_at_y(Blocks& out, const Vec& y, double s) const {
    for (std::size_t i = 0; i < a_.size(); ++i) {
      add_entries(out, a_[i], s * y(static_cast<Eigen::Index>(i)));
    }
  }

  // M_ij = <A_i, X A_j Z^-1>.
  Mat schur_matrix(const Blocks& x, const Blocks& zinv) const {
    const auto m = static_cast<Eigen::Index>(a_.size());
    Mat schur = Mat::Zero(m, m);
    for (std::size_t b = 0; b < by_block_.size(); ++b) {
      const Eigen::Index n = x[b].rows();
      for (const auto& [j, entries] : by_block_[b]) {
        // Touched columns of X A_j.
        std::vector<Eigen::Index> cols;
        Mat xa = Mat::Zero(n, n);
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (const auto& e : entries) {
          xa.col(e.col) += e.value * x[b].col(e.row);
          used[static_cast<std::size_t>(e.col)] = true;
          if (e.row != e.col) {
            xa.col(e.row) += e.value * x[b].col(e.col);
            used[static_cast<std::size_t>(e.row)] = true;
          }
        }
        for (Eigen::Index c = 0; c < n; ++c) {
          if (used[static_cast<std::size_t>(c)]) cols.push_back(c);
        }
        Mat g;
        if (cols.size() * 2 < static_cast<std::size_t>(n)) {
          g = Mat::Zero(n, n);
          for (auto c : cols) g.noalias() += xa.col(c) * zinv[b].row(c);
        } else {
          g.noalias() = xa * zinv[b];
        }
        for (const auto& [i, ientries] : by_block_[b]) {
          double s = 0.0;
          for (const auto& e : ientries) {
            s += e.row == e.col ? e.value * g(e.row, e.col)
                                : e.value * (g(e.row, e.col) + g(e.col, e.row));
          }
          schur(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += s;
        }
      }
    }
    return 0.5 * (schur + schur.transpose());
  }

  template <typename Solve>
  void direction(const Blocks& k, const Vec& rp, const Blocks& rd, const Blocks& x,
                 const Blocks& zinv, Solve& solve_m, Blocks& dx, Vec& dy,
                 Blocks& dz) const {
    dy = solve_m(Vec(rp - apply_a(k)));
    dz = rd;
    add_at_y(dz, dy, -1.0);
    symmetrize(dz);
    Blocks aty = zeros_like(full_.block_sizes);
    add_at_y(aty, dy, 1.0);
    dx.resize(k.size());
    for (std::size_t b = 0; b < k.size(); ++b) dx[b] = k[b] + x[b] * aty[b] * zinv[b];
    symmetrize(dx);
  }

  void record(RealSolution& sol, const Blocks& x, const Vec& y, const Blocks& z, double pobj,
              double dobj, double pres, double dres, double xz, int iter) const {
    sol.x = x;
    sol.z = z;
    sol.y = y;
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.complementarity = xz;
    sol.iterations = iter;
    sol.final_gap = pobj - dobj;
  }

  const RealSdp& full_;
  SdpOptions opt_;
  std::vector<std::size_t> keep_;
  std::vector<std::vector<SdpEntry>> a_;
  std::vector<double> b_;
  Blocks c_;
  std::vector<std::vector<std::pair<std::size_t, std::vector<SdpEntry>>>> by_block_;
};

}  // namespace

RealSolution solve_real(const RealSdp& problem, const SdpOptions& options) {
  auto rows = problem.a;
  rows.push_back(problem.c);
  for (const auto& row : rows) {
    for (const auto& e : row) {
      if (e.block < 0 || static_cast<std::size_t>(e.block) >= problem.block_sizes.size() ||
          e.row < 0 || e.col < e.row ||
          e.col >= problem.block_sizes[static_cast<std::size_t>(e.block)]) {
        throw ModelError("SDP entry outside its block or below the diagonal");
      }
    }
  }
  InteriorPoint ip(problem, options);
  return ip.run();
}

}  // namespace qstrat
