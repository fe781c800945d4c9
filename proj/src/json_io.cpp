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

#include "qstrat/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qstrat/errors.hpp"

namespace qstrat::io {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<std::size_t> dims_from_json(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) {
    const auto d = v.get<long long>();
    if (d <= 0) throw ParseError("dimensions must be positive integers");
    out.push_back(static_cast<std::size_t>(d));
  }
  return out;
}

Json measurement_to_json(const Measurement& m) {
  Json j = Json::object();
  for (const auto& [label, op] : m) j[label] = to_json(op);
  return j;
}

Measurement measurement_from_json(const Json& j) {
  Measurement m;
  for (const auto& [label, op] : j.items()) m[label] = matrix_from_json(op);
  return m;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j) {
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json j = Json::array();
  for (const auto& m : ms) j.push_back(to_json(m));
  return j;
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

Json round_floats(const Json& j) {
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    const double v = std::stod(buf);
    return v == 0.0 ? 0.0 : v;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(round_floats(v));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = round_floats(v);
    return out;
  }
  return j;
}

std::string dump(const Json& j) { return round_floats(j).dump(2) + "\n"; }

std::string dump_exact(const Json& j) { return j.dump() + "\n"; }

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      entries.push_back({m(i, k).real(), m(i, k).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const long long rows = j.at("rows").get<long long>();
    const long long cols = j.at("cols").get<long long>();
    if (rows < 0 || cols < 0) throw ParseError("matrix: negative shape");
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows * cols)) {
      throw ParseError("matrix: expected " + std::to_string(rows * cols) + " entries");
    }
    ComplexMatrix m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index k = 0; k < cols; ++k, ++idx) {
        const Json& e = entries.at(idx);
        if (e.is_number()) {
          m(i, k) = e.get<double>();
        } else {
          if (e.size() != 2) throw ParseError("matrix: entries are [re, im] pairs");
          m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
      }
    }
    return m;
  });
}

Json to_json(const SpaceList& s) {
  Json j = Json::array();
  for (const auto& f : s.factors()) j.push_back({{"label", f.label}, {"dim", f.dim}});
  return j;
}

SpaceList spaces_from_json(const Json& j, const std::string& prefix) {
  return guarded("space list", [&] {
    std::vector<Space> f;
    for (const auto& e : j) {
      Space s;
      if (e.is_number_integer()) {
        s = {prefix + std::to_string(f.size() + 1), 0};
        const long long d = e.get<long long>();
        if (d <= 0) throw ParseError("dimensions must be positive integers");
        s.dim = static_cast<std::size_t>(d);
      } else {
        const long long d = e.at("dim").get<long long>();
        if (d <= 0) throw ParseError("dimensions must be positive integers");
        s = {e.at("label").get<std::string>(), static_cast<std::size_t>(d)};
      }
      f.push_back(s);
    }
    return SpaceList(std::move(f));
  });
}

Json to_json(const SpaceProfile& p) {
  return {{"inputs", to_json(p.inputs)}, {"outputs", to_json(p.outputs)}};
}

SpaceProfile profile_from_json(const Json& j) {
  return guarded("profile", [&] {
    SpaceList in = spaces_from_json(j.at("inputs"), "X");
    SpaceList out = spaces_from_json(j.at("outputs"), "Y");
    if (in.size() != out.size()) throw ParseError("profile: inputs/outputs lengths differ");
    return SpaceProfile(std::move(in), std::move(out));
  });
}

Json to_json(const StrategyDescription& d) {
  Json j = {{"type", "strategy"},
            {"profile", to_json(d.profile)},
            {"memory_dims", d.memory_dims},
            {"isometries", matrices_to_json(d.isometries)}};
  if (d.measurement) j["measurement"] = measurement_to_json(*d.measurement);
  return j;
}

Json to_json(const CoStrategyDescription& d) {
  Json j = {{"type", "costrategy"},
            {"profile", to_json(d.profile)},
            {"memory_dims", d.memory_dims},
            {"initial_state", to_json(d.initial_state)},
            {"isometries", matrices_to_json(d.isometries)}};
  if (d.measurement) j["measurement"] = measurement_to_json(*d.measurement);
  return j;
}

StrategyDescription strategy_from_json(const Json& j) {
  return guarded("strategy description", [&] {
    StrategyDescription d;
    d.profile = profile_from_json(j.at("profile"));
    d.memory_dims = dims_from_json(j.at("memory_dims"));
    d.isometries = matrices_from_json(j.at("isometries"));
    if (j.contains("measurement")) d.measurement = measurement_from_json(j.at("measurement"));
    return d;
  });
}

CoStrategyDescription costrategy_from_json(const Json& j) {
  return guarded("co-strategy description", [&] {
    CoStrategyDescription d;
    d.profile = profile_from_json(j.at("profile"));
    d.memory_dims = dims_from_json(j.at("memory_dims"));
    d.initial_state = matrix_from_json(j.at("initial_state"));
    d.isometries = matrices_from_json(j.at("isometries"));
    if (j.contains("measurement")) d.measurement = measurement_from_json(j.at("measurement"));
    return d;
  });
}

Json to_json(const StrategyRep& r) {
  return {{"kind", to_string(r.kind)},
          {"profile", to_json(r.profile)},
          {"matrix", to_json(r.op.matrix())}};
}

StrategyRep rep_from_json(const Json& j) {
  return guarded("representation", [&] {
    StrategyRep r;
    r.profile = profile_from_json(j.at("profile"));
    r.kind = rep_kind_from_string(j.at("kind").get<std::string>());
    r.op = HermOp(r.profile.rep_space(), matrix_from_json(j.at("matrix")));
    return r;
  });
}

Json to_json(const MeasuringRep& m) {
  Json outcomes = Json::object();
  for (const auto& [label, op] : m.outcomes) outcomes[label] = to_json(op.matrix());
  return {{"kind", to_string(m.kind)}, {"profile", to_json(m.profile)}, {"outcomes", outcomes}};
}

MeasuringRep measuring_from_json(const Json& j) {
  return guarded("measuring representation", [&] {
    MeasuringRep m;
    m.profile = profile_from_json(j.at("profile"));
    m.kind = rep_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& [label, op] : j.at("outcomes").items()) {
      m.outcomes[label] = HermOp(m.profile.rep_space(), matrix_from_json(op));
    }
    if (m.outcomes.empty()) throw ParseError("measuring representation has no outcomes");
    return m;
  });
}

MeasuringRep measuring_from_any_json(const Json& j) {
  if (j.is_object() && j.contains("type")) {
    const std::string type = guarded("description", [&] { return j.at("type").get<std::string>(); });
    if (type == "strategy") return represent_measuring_strategy(strategy_from_json(j));
    if (type == "costrategy") return represent_measuring_costrategy(costrategy_from_json(j));
    throw ParseError("unknown description type '" + type + "'");
  }
  return measuring_from_json(j);
}

Json to_json(const Referee& r) {
  const SpaceProfile prof = r.profile();
  Json inputs = Json::array(), outputs = Json::array();
  for (std::size_t k = 0; k < r.turns(); ++k) {
    const std::string idx = std::to_string(k + 1);
    inputs.push_back({{"label", prof.inputs[k].label},
                      {"dim", prof.inputs[k].dim},
                      {"factors", {{{"label", "A" + idx}, {"dim", r.a_dims[k]}},
                                   {{"label", "B" + idx}, {"dim", r.b_dims[k]}}}}});
    outputs.push_back({{"label", prof.outputs[k].label},
                       {"dim", prof.outputs[k].dim},
                       {"factors", {{{"label", "C" + idx}, {"dim", r.c_dims[k]}},
                                    {{"label", "D" + idx}, {"dim", r.d_dims[k]}}}}});
  }
  Json outcomes = Json::object();
  for (const auto& [label, op] : r.outcomes) outcomes[label] = to_json(op.matrix());
  Json payoff = Json::object();
  for (const auto& [label, v] : r.payoff) payoff[label] = v;
  return {{"profile", {{"inputs", inputs}, {"outputs", outputs}}},
          {"outcomes", outcomes},
          {"payoff", payoff}};
}

Referee referee_from_json(const Json& j) {
  return guarded("referee", [&] {
    Referee r;
    const Json& prof = j.at("profile");
    // Each message space is the pair (Alice's factor, Bob's factor).
    const auto split = [](const Json& list, std::vector<std::size_t>& first,
                          std::vector<std::size_t>& second) {
      for (const auto& e : list) {
        const Json& f = e.at("factors");
        if (f.size() != 2) throw RefereeModelError("each referee space needs two factors");
        const auto dim_of = [](const Json& x) {
          const long long d = x.is_number_integer() ? x.get<long long>() : x.at("dim").get<long long>();
          if (d <= 0) throw RefereeModelError("factor dimensions must be positive");
          return static_cast<std::size_t>(d);
        };
        first.push_back(dim_of(f.at(0)));
        second.push_back(dim_of(f.at(1)));
        if (e.contains("dim") && e.at("dim").get<long long>() !=
                                     static_cast<long long>(first.back() * second.back())) {
          throw RefereeModelError("factor pair does not multiply to the space dimension");
        }
      }
    };
    split(prof.at("inputs"), r.a_dims, r.b_dims);
    split(prof.at("outputs"), r.c_dims, r.d_dims);
    for (const auto& [label, op] : j.at("outcomes").items()) {
      const ComplexMatrix m = matrix_from_json(op);
      if (m.rows() != m.cols()) throw RefereeModelError("outcome '" + label + "' is not square");
      std::vector<Space> side;
      side.push_back({"R", static_cast<std::size_t>(m.rows())});
      r.outcomes[label] = HermOp(SpaceList(side), m);
    }
    for (const auto& [label, v] : j.at("payoff").items()) r.payoff[label] = v.get<double>();
    r.check();
    const SpaceList space = r.profile().rep_space();
    for (auto& [label, op] : r.outcomes) op = HermOp(space, op.matrix());
    return r;
  });
}

Json to_json(const ValidationReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"constraint", l.constraint}, {"level", l.level}, {"residual", l.residual}});
  }
  return {{"kind", to_string(r.kind)},
          {"tol", r.tol},
          {"valid", r.valid},
          {"psd_residual", r.psd_residual},
          {"max_residual", r.max_residual()},
          {"levels", levels}};
}

Json to_json(const OutcomeDistribution& d) {
  Json outcomes = Json::array();
  for (const auto& [pair, p] : d.entries) outcomes.push_back({pair.first, pair.second, p});
  return {{"outcomes", outcomes}, {"total", d.total()}};
}

OutcomeDistribution distribution_from_json(const Json& j) {
  return guarded("distribution", [&] {
    OutcomeDistribution d;
    for (const auto& e : j.at("outcomes")) {
      d.entries[{e.at(0).get<std::string>(), e.at(1).get<std::string>()}] = e.at(2).get<double>();
    }
    return d;
  });
}

Json to_json(const ForcedOutputResult& r) {
  return {{"probability", r.probability},
          {"raw_value", r.raw_value},
          {"direction", to_string(r.direction)},
          {"status", to_string(r.status)},
          {"duality_gap", r.duality_gap},
          {"iterations", r.solution.iterations},
          {"max_constraint_residual", r.solution.max_constraint_residual}};
}

Json to_json(const GameValueResult& r) {
  return {{"value", r.value},
          {"raw_value", r.raw_value},
          {"opponent_value", r.opponent_value},
          {"duality_gap", r.duality_gap},
          {"status", to_string(r.status)},
          {"swapped", r.swapped},
          {"strategy", to_json(r.strategy)},
          {"strategy_validation", to_json(r.strategy_report)},
          {"costrategy_witness", to_json(r.costrategy_witness.matrix())}};
}

Json to_json(const CoinFlipReport& r) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    outcomes.push_back({{"outcome", o.outcome},
                        {"honest_agreement", o.honest_agreement},
                        {"p_alice", o.p_alice},
                        {"p_bob", o.p_bob},
                        {"p_alice_dual", o.p_alice_dual},
                        {"p_bob_dual", o.p_bob_dual},
                        {"max_cheat", std::max(o.p_alice, o.p_bob)},
                        {"product", o.p_alice * o.p_bob},
                        {"bound_ok", o.bound_ok},
                        {"product_ok", o.product_ok}});
  }
  return {{"outcomes", outcomes},
          {"honest_abort", r.honest_abort},
          {"honest_disagreement", r.honest_disagreement},
          {"honest_ok", r.honest_ok},
          {"bound", r.bound},
          {"bound_ok", r.bound_ok}};
}

}  // namespace qstrat::io
