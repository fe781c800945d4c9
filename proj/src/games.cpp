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

#include "qstrat/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qstrat/errors.hpp"

namespace qstrat {

namespace {

SpaceList prefix(const SpaceList& s, std::size_t k) {
  return SpaceList(std::vector<Space>(s.factors().begin(), s.factors().begin() + k));
}

HermOp relabel(const HermOp& op, const SpaceList& space) {
  return HermOp(space, op.matrix());
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

SpaceList labelled(const std::string& name, const std::vector<std::size_t>& dims) {
  std::vector<Space> f;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    f.push_back({name + std::to_string(k + 1), dims[k]});
  }
  return SpaceList(std::move(f));
}

std::vector<std::size_t> products(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::primal ? "primal" : "dual"; }

Direction direction_from_string(const std::string& s) {
  if (s == "primal") return Direction::primal;
  if (s == "dual") return Direction::dual;
  throw ContractViolation("unknown direction '" + s + "'");
}

StrategyChain add_strategy_chain(SdpProblem& p, const SpaceList& outputs,
                                 const SpaceList& inputs, const std::string& name) {
  const std::size_t n = inputs.size();
  if (n == 0 || outputs.size() != n) {
    throw ContractViolation("strategy chain needs n >= 1 matching input/output spaces");
  }
  StrategyChain chain;
  for (std::size_t k = 1; k <= n; ++k) {
    chain.levels.push_back(p.add_variable(name + "S" + std::to_string(k),
                                          prefix(outputs, k).concat(prefix(inputs, k))));
  }
  for (std::size_t k = 2; k <= n; ++k) {
    const LinExpr lhs = partial_trace(chain.levels[k - 1], {outputs[k - 1].label});
    const LinExpr& prev = chain.levels[k - 2];
    const LinExpr rhs = tensor_identity(prev, inputs[k - 1], prev.space().size());
    p.add_equality(lhs, rhs, name + "S" + std::to_string(k) + " marginal");
  }
  chain.top = partial_trace(chain.levels[0], {outputs[0].label});
  return chain;
}

CoStrategyChain add_costrategy_chain(SdpProblem& p, const SpaceList& outputs,
                                     const SpaceList& inputs, const std::string& name) {
  const std::size_t n = inputs.size();
  if (n == 0 || outputs.size() != n) {
    throw ContractViolation("co-strategy chain needs n >= 1 matching input/output spaces");
  }
  CoStrategyChain chain;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::string idx = std::to_string(k);
    const SpaceList q_space = prefix(outputs, k).concat(prefix(inputs, k));
    const SpaceList p_space = prefix(outputs, k - 1).concat(prefix(inputs, k));
    chain.q.push_back(p.add_variable(name + "Q" + idx, q_space));
    chain.p.push_back(p.add_variable(name + "P" + idx, p_space));
    p.add_equality(chain.q.back(), tensor_identity(chain.p.back(), outputs[k - 1], k - 1),
                   name + "Q" + idx + " = P" + idx + " (x) I");
    if (k >= 2) {
      p.add_equality(partial_trace(chain.p.back(), {inputs[k - 1].label}), chain.q[k - 2],
                     name + "P" + idx + " marginal");
    }
  }
  chain.base = trace(chain.p[0]);
  return chain;
}

SdpProblem forced_output_problem(const MeasuringRep& m, const std::string& outcome,
                                 Direction direction) {
  const auto it = m.outcomes.find(outcome);
  if (it == m.outcomes.end()) {
    throw ContractViolation("outcome '" + outcome + "' not in the measuring representation");
  }
  if (m.profile.turns() == 0) throw ContractViolation("forced output needs n >= 1");
  const ValidationReport report = validate(m, 1e-7);
  if (!report.valid) {
    throw ValidationError("measuring representation fails validation (residual " +
                          std::to_string(report.max_residual()) + ")");
  }
  const HermOp qa = relabel(it->second, m.profile.rep_space());
  const SpaceList& in = m.profile.inputs;
  const SpaceList& out = m.profile.outputs;
  SdpProblem p;
  const bool strategy = m.kind == RepKind::strategy;
  if (direction == Direction::primal) {
    if (strategy) {
      const CoStrategyChain chain = add_costrategy_chain(p, out, in, "R");
      p.add_equality(chain.base, HermOp::scalar(1.0), "tr P1 = 1");
      p.set_objective(Sense::maximize, inner_with(chain.q.back(), qa));
    } else {
      const StrategyChain chain = add_strategy_chain(p, out, in, "R");
      p.add_equality(chain.top, HermOp::identity(chain.top.space()), "tr_Y1 S1 = I");
      p.set_objective(Sense::maximize, inner_with(chain.levels.back(), qa));
    }
  } else {
    if (strategy) {
      const StrategyChain chain = add_strategy_chain(p, out, in, "pR");
      const LinExpr scale = p.add_variable("p", SpaceList{});
      p.add_equality(chain.top, tensor_identity(scale, in[0], 0), "tr_Y1 S1 = p I");
      p.set_psd_inequality(chain.levels.back(), qa);
      p.set_objective(Sense::minimize, scale);
    } else {
      const CoStrategyChain chain = add_costrategy_chain(p, out, in, "pR");
      p.set_psd_inequality(chain.q.back(), qa);
      p.set_objective(Sense::minimize, chain.base);
    }
  }
  return p;
}

ForcedOutputResult max_forced_output(const MeasuringRep& m, const std::string& outcome,
                                     Direction direction, const SdpOptions& options) {
  const SdpProblem problem = forced_output_problem(m, outcome, direction);
  ForcedOutputResult r;
  r.direction = direction;
  r.solution = solve(problem, options);
  r.status = r.solution.status;
  r.raw_value = r.solution.objective_value;
  r.probability = clamp01(r.raw_value);
  r.duality_gap = r.solution.duality_gap;
  const bool strategy = m.kind == RepKind::strategy;
  const std::string top = std::to_string(m.profile.turns());
  r.witness.profile = m.profile;
  if (direction == Direction::primal) {
    r.witness.kind = strategy ? RepKind::costrategy : RepKind::strategy;
    r.witness.op = r.solution.blocks.at(strategy ? "RQ" + top : "RS" + top);
  } else {
    r.witness.kind = m.kind;
    r.witness.op = r.solution.blocks.at(strategy ? "pRS" + top : "pRQ" + top);
  }
  return r;
}

SpaceProfile Referee::profile() const {
  return make_profile(products(a_dims, b_dims), products(c_dims, d_dims));
}

SpaceList Referee::fine_space() const {
  std::vector<Space> f;
  for (std::size_t k = 0; k < turns(); ++k) {
    f.push_back({"C" + std::to_string(k + 1), c_dims[k]});
    f.push_back({"D" + std::to_string(k + 1), d_dims[k]});
  }
  for (std::size_t k = 0; k < turns(); ++k) {
    f.push_back({"A" + std::to_string(k + 1), a_dims[k]});
    f.push_back({"B" + std::to_string(k + 1), b_dims[k]});
  }
  return SpaceList(std::move(f));
}

SpaceProfile Referee::alice_profile() const {
  return SpaceProfile(labelled("A", a_dims), labelled("C", c_dims));
}

SpaceProfile Referee::bob_profile() const {
  return SpaceProfile(labelled("B", b_dims), labelled("D", d_dims));
}

MeasuringRep Referee::rep() const {
  MeasuringRep m;
  m.profile = profile();
  m.kind = RepKind::costrategy;
  for (const auto& [label, op] : outcomes) m.outcomes[label] = relabel(op, m.profile.rep_space());
  return m;
}

void Referee::check(double tol) const {
  const std::size_t n = turns();
  if (n == 0) throw RefereeModelError("referee needs at least one turn");
  if (b_dims.size() != n || c_dims.size() != n || d_dims.size() != n) {
    throw RefereeModelError("factor lists A, B, C, D must all have length n");
  }
  for (const auto* dims : {&a_dims, &b_dims, &c_dims, &d_dims}) {
    for (std::size_t d : *dims) {
      if (d == 0) throw RefereeModelError("factor dimensions must be positive");
    }
  }
  if (outcomes.empty()) throw RefereeModelError("referee has no outcomes");
  const std::size_t side = profile().rep_space().total_dim();
  for (const auto& [label, op] : outcomes) {
    if (op.dim() != side) {
      throw RefereeModelError("outcome '" + label + "' has side " + std::to_string(op.dim()) +
                              ", factor pairs give " + std::to_string(side));
    }
    if (!payoff.contains(label)) {
      throw RefereeModelError("no payoff for outcome '" + label + "'");
    }
    if (!std::isfinite(payoff.at(label))) {
      throw RefereeModelError("payoff for outcome '" + label + "' is not finite");
    }
  }
  for (const auto& [label, v] : payoff) {
    if (!outcomes.contains(label)) {
      throw RefereeModelError("payoff for unknown outcome '" + label + "'");
    }
  }
  const ValidationReport report = validate(rep(), tol);
  if (!report.valid) {
    throw RefereeModelError("referee is not a valid measuring co-strategy (residual " +
                            std::to_string(report.max_residual()) + ")");
  }
}

Referee make_referee(const std::vector<std::size_t>& a_dims,
                     const std::vector<std::size_t>& b_dims,
                     const std::vector<std::size_t>& c_dims,
                     const std::vector<std::size_t>& d_dims, const MeasuringRep& rep,
                     std::map<std::string, double> payoff) {
  Referee ref;
  ref.a_dims = a_dims;
  ref.b_dims = b_dims;
  ref.c_dims = c_dims;
  ref.d_dims = d_dims;
  if (rep.kind != RepKind::costrategy) {
    throw RefereeModelError("a referee is a measuring co-strategy");
  }
  const std::size_t n = a_dims.size();
  if (b_dims.size() != n || c_dims.size() != n || d_dims.size() != n ||
      rep.profile.turns() != n ||
      rep.profile.inputs.dims() != products(a_dims, b_dims) ||
      rep.profile.outputs.dims() != products(c_dims, d_dims)) {
    throw RefereeModelError("factor pairs do not multiply to the referee's profile");
  }
  ref.outcomes = rep.outcomes;
  ref.payoff = std::move(payoff);
  ref.check();
  return ref;
}

SdpProblem game_value_problem(const Referee& ref, bool swap_roles) {
  ref.check();
  const SpaceList fine = ref.fine_space();
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [label, v] : ref.payoff) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  // Alice hard-wired: minimize Bob's weight of sum (max V - V(a)) R_a.
  // Bob hard-wired: minimize Alice's weight of sum (V(a) - min V) R_a.
  HermOp weighted(fine, ComplexMatrix::Zero(static_cast<Eigen::Index>(fine.total_dim()),
                                            static_cast<Eigen::Index>(fine.total_dim())));
  for (const auto& [label, op] : ref.outcomes) {
    const double v = ref.payoff.at(label);
    const double w = swap_roles ? v - lo : hi - v;
    if (w != 0.0) weighted = weighted + relabel(op, fine) * w;
  }
  const SpaceProfile hard = swap_roles ? ref.bob_profile() : ref.alice_profile();
  const SpaceProfile opp = swap_roles ? ref.alice_profile() : ref.bob_profile();
  SdpProblem p;
  const StrategyChain player = add_strategy_chain(p, hard.outputs, hard.inputs, "H");
  p.add_equality(player.top, HermOp::identity(player.top.space()), "tr_Y1 S1 = I");
  const LinExpr omega = hardwire(player.levels.back(), weighted);
  const CoStrategyChain bound = add_costrategy_chain(p, opp.outputs, opp.inputs, "W");
  p.set_psd_inequality(bound.q.back(), omega);
  p.set_objective(Sense::minimize, bound.base);
  return p;
}

GameValueResult game_value(const Referee& ref, bool swap_roles, const SdpOptions& options) {
  const SdpProblem problem = game_value_problem(ref, swap_roles);
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [label, v] : ref.payoff) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  const SdpSolution sol = solve(problem, options);
  GameValueResult r;
  r.swapped = swap_roles;
  r.status = sol.status;
  r.opponent_value = sol.objective_value;
  r.raw_value = swap_roles ? lo + sol.objective_value : hi - sol.objective_value;
  r.value = std::clamp(r.raw_value, lo, hi);
  r.duality_gap = sol.duality_gap;
  const std::string top = std::to_string(ref.turns());
  const SpaceProfile hard = swap_roles ? ref.bob_profile() : ref.alice_profile();
  r.strategy = {hard, RepKind::strategy, sol.blocks.at("HS" + top)};
  r.strategy_report = validate(r.strategy, 1e-6);
  r.costrategy_witness = sol.blocks.at("WQ" + top);
  return r;
}

MinMaxResult minmax_check(const Referee& ref, const SdpOptions& options) {
  MinMaxResult r;
  r.alice = game_value(ref, false, options);
  r.bob = game_value(ref, true, options);
  r.maximin = r.alice.value;
  r.minimax = r.bob.value;
  return r;
}

}  // namespace qstrat
