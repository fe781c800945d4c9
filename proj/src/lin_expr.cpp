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

#include "qstrat/lin_expr.hpp"

#include <vector>

#include "qstrat/errors.hpp"

namespace qstrat {

namespace {

using Triplet = Eigen::Triplet<Complex>;

SparseComplex from_triplets(std::size_t rows, std::size_t cols,
                            const std::vector<Triplet>& t) {
  SparseComplex m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// vec-space map of X -> P X P^T for the index map of a factor reordering.
SparseComplex permutation_operator(const SpaceList& from, const SpaceList& to) {
  const auto map = permutation_map(from, to);
  const std::size_t d = map.size();
  std::vector<Triplet> t;
  t.reserve(d * d);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < d; ++q) {
      t.emplace_back(static_cast<int>(p * d + q), static_cast<int>(map[p] * d + map[q]),
                     1.0);
    }
  }
  return from_triplets(d * d, d * d, t);
}

void require_same_space(const SpaceList& a, const SpaceList& b, const char* op) {
  if (!(a == b)) {
    throw ModelError(std::string(op) + " of expressions on " + to_string(a) + " and " +
                     to_string(b) + "; permute explicitly first");
  }
}

}  // namespace

LinExpr LinExpr::variable(const std::string& name, const SpaceList& space) {
  LinExpr e;
  e.space_ = space;
  const std::size_t d = space.total_dim();
  SparseComplex id(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
  id.setIdentity();
  e.terms_[name] = {space, id};
  return e;
}

LinExpr LinExpr::zero(const SpaceList& space) {
  LinExpr e;
  e.space_ = space;
  return e;
}

LinExpr LinExpr::operator+(const LinExpr& other) const {
  require_same_space(space_, other.space_, "sum");
  LinExpr out = *this;
  for (const auto& [name, term] : other.terms_) {
    auto it = out.terms_.find(name);
    if (it == out.terms_.end()) {
      out.terms_[name] = term;
      continue;
    }
    if (!(it->second.var_space == term.var_space)) {
      throw ModelError("variable '" + name + "' used with two different spaces");
    }
    it->second.coeff = it->second.coeff + term.coeff;
  }
  return out;
}

LinExpr LinExpr::operator-(const LinExpr& other) const { return *this + other * -1.0; }

LinExpr LinExpr::operator*(double s) const {
  LinExpr out = *this;
  for (auto& [name, term] : out.terms_) term.coeff = term.coeff * Complex(s);
  return out;
}

LinExpr LinExpr::mapped(const SparseComplex& t, SpaceList new_space) const {
  const std::size_t d = new_space.total_dim();
  if (static_cast<std::size_t>(t.rows()) != d * d ||
      static_cast<std::size_t>(t.cols()) != dim() * dim()) {
    throw ModelError("linear map has the wrong shape");
  }
  LinExpr out;
  out.space_ = std::move(new_space);
  for (const auto& [name, term] : terms_) {
    SparseComplex c = t * term.coeff;
    c.prune(Complex(0.0));
    out.terms_[name] = {term.var_space, std::move(c)};
  }
  return out;
}

ComplexMatrix LinExpr::evaluate(const std::map<std::string, ComplexMatrix>& values) const {
  const auto d = static_cast<Eigen::Index>(dim());
  ComplexVector acc = ComplexVector::Zero(d * d);
  for (const auto& [name, term] : terms_) {
    const auto it = values.find(name);
    if (it == values.end()) continue;
    const auto vd = static_cast<Eigen::Index>(term.var_space.total_dim());
    if (it->second.rows() != vd || it->second.cols() != vd) {
      throw ModelError("value for '" + name + "' has the wrong size");
    }
    acc += term.coeff * vec(it->second);
  }
  return unvec(acc, dim(), dim());
}

LinExpr partial_trace(const LinExpr& e, const std::set<std::string>& traced_labels) {
  for (const auto& l : traced_labels) {
    if (!e.space().contains(l)) throw LabelNotFoundError(l);
  }
  const SpaceList kept = e.space().without(traced_labels);
  const SpaceList traced = e.space().only(traced_labels);
  const auto map = permutation_map(e.space(), kept.concat(traced));
  const std::size_t d = e.dim(), dk = kept.total_dim(), dt = traced.total_dim();
  std::vector<Triplet> t;
  t.reserve(dk * dk * dt);
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      for (std::size_t s = 0; s < dt; ++s) {
        t.emplace_back(static_cast<int>(i * dk + j),
                       static_cast<int>(map[i * dt + s] * d + map[j * dt + s]), 1.0);
      }
    }
  }
  return e.mapped(from_triplets(dk * dk, d * d, t), kept);
}

LinExpr trace(const LinExpr& e) {
  const auto labels = e.space().labels();
  return partial_trace(e, std::set<std::string>(labels.begin(), labels.end()));
}

LinExpr tensor_identity(const LinExpr& e, const Space& factor, std::size_t position) {
  if (position > e.space().size()) throw ModelError("identity position out of range");
  const SpaceList appended = e.space().concat(SpaceList{factor});
  const std::size_t d = e.dim(), f = factor.dim, da = d * f;
  std::vector<Triplet> t;
  t.reserve(d * d * f);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t u = 0; u < f; ++u) {
        t.emplace_back(static_cast<int>((i * f + u) * da + (j * f + u)),
                       static_cast<int>(i * d + j), 1.0);
      }
    }
  }
  LinExpr out = e.mapped(from_triplets(da * da, d * d, t), appended);
  const SpaceList target = e.space().inserted(factor, position);
  if (target == appended) return out;
  return out.mapped(permutation_operator(appended, target), target);
}

LinExpr permute(const LinExpr& e, const SpaceList& order) {
  return e.mapped(permutation_operator(e.space(), order), order);
}

LinExpr hardwire(const LinExpr& e, const HermOp& r) {
  const auto labels = e.space().labels();
  const std::set<std::string> s_labels(labels.begin(), labels.end());
  for (const auto& f : e.space().factors()) {
    if (!r.space().contains(f.label) ||
        r.space()[r.space().index_of(f.label)].dim != f.dim) {
      throw ModelError("hard-wired operator lacks factor '" + f.label + "'");
    }
  }
  const SpaceList rest = r.space().without(s_labels);
  const ComplexMatrix rp = permute_matrix(r.matrix(), r.space(), e.space().concat(rest));
  const std::size_t ds = e.dim(), dr = rest.total_dim();
  // Coefficient of X[a, a2] in out[q, q2] is R[(a2, q), (a, q2)].
  std::vector<Triplet> t;
  t.reserve(ds * ds * dr * dr);
  for (std::size_t q = 0; q < dr; ++q) {
    for (std::size_t q2 = 0; q2 < dr; ++q2) {
      for (std::size_t a = 0; a < ds; ++a) {
        for (std::size_t a2 = 0; a2 < ds; ++a2) {
          const Complex v = rp(static_cast<Eigen::Index>(a2 * dr + q),
                               static_cast<Eigen::Index>(a * dr + q2));
          if (v != Complex(0.0)) {
            t.emplace_back(static_cast<int>(q * dr + q2), static_cast<int>(a * ds + a2), v);
          }
        }
      }
    }
  }
  return e.mapped(from_triplets(dr * dr, ds * ds, t), rest);
}

LinExpr inner_with(const LinExpr& e, const HermOp& c) {
  if (!(c.space() == e.space())) {
    throw ModelError("inner product of an expression on " + to_string(e.space()) +
                     " with an operator on " + to_string(c.space()));
  }
  return hardwire(e, c);
}

}  // namespace qstrat
