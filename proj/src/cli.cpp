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

#include "qstrat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "qstrat/errors.hpp"
#include "qstrat/fixtures.hpp"
#include "qstrat/json_io.hpp"

namespace qstrat {

namespace {

using io::Json;

struct Outcome {
  int code = kExitOk;
  Json payload;
  bool exact = false;  // data documents keep round-trip precision
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ContractViolation("cannot write " + path);
  f << text;
}

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("QSTRAT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ContractViolation(std::string("QSTRAT_SEED is not an integer: ") + env);
    }
  }
  return seed;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const long long v = std::stoll(item);
      if (v <= 0) throw ContractViolation("dimensions must be positive: " + s);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw ContractViolation("bad dimension list '" + s + "'");
    }
  }
  return out;
}

struct ValidateArgs {
  std::string rep, profile, kind;
  double tol = 1e-8;
};

Outcome cmd_validate(const ValidateArgs& a) {
  const Json rep = io::read_file(a.rep);
  const Json* body = &rep;
  std::optional<SpaceProfile> profile;
  std::optional<RepKind> kind;
  if (rep.is_object() && rep.contains("matrix")) {
    body = &rep.at("matrix");
    if (rep.contains("profile")) profile = io::profile_from_json(rep.at("profile"));
    if (rep.contains("kind") && rep.at("kind").is_string()) {
      kind = rep_kind_from_string(rep.at("kind").get<std::string>());
    }
  }
  if (!a.profile.empty()) profile = io::profile_from_json(io::read_file(a.profile));
  if (!a.kind.empty()) kind = rep_kind_from_string(a.kind);
  if (!profile) throw ContractViolation("no profile: pass --profile or embed one in the rep");
  const ComplexMatrix m = io::matrix_from_json(*body);
  const auto side = static_cast<Eigen::Index>(profile->rep_space().total_dim());
  if (m.rows() != side || m.cols() != side) {
    throw ContractViolation("rep is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", profile needs side " +
                            std::to_string(side));
  }
  const ValidationReport r =
      validate(HermOp(profile->rep_space(), m, 1e-8), *profile, kind.value_or(RepKind::strategy),
               a.tol);
  return {r.valid ? kExitOk : kExitInvalid, {{"command", "validate"}, {"report", io::to_json(r)}}};
}

struct InteractArgs {
  std::string strategy, costrategy, method = "both";
};

Outcome cmd_interact(const InteractArgs& a) {
  const Json sj = io::read_file(a.strategy);
  const Json cj = io::read_file(a.costrategy);
  Json payload = {{"command", "interact"}, {"method", a.method}};
  std::optional<OutcomeDistribution> via_reps, via_sim;
  if (a.method == "reps" || a.method == "both") {
    const MeasuringRep s = io::measuring_from_any_json(sj);
    const MeasuringRep c = io::measuring_from_any_json(cj);
    via_reps = distribution_via_reps(s, c);
    payload["reps"] = io::to_json(*via_reps);
  }
  if (a.method == "simulate" || a.method == "both") {
    via_sim = simulate_interaction(io::strategy_from_json(sj), io::costrategy_from_json(cj));
    payload["simulate"] = io::to_json(*via_sim);
  }
  if (via_reps && via_sim) payload["max_gap"] = max_gap(*via_reps, *via_sim);
  return {kExitOk, payload};
}

struct MaxProbArgs {
  std::string rep, outcome, direction = "both";
};

Outcome cmd_maxprob(const MaxProbArgs& a) {
  const MeasuringRep m = io::measuring_from_any_json(io::read_file(a.rep));
  Json payload = {{"command", "maxprob"}, {"outcome", a.outcome}};
  Json witness = Json::object();
  std::optional<double> primal, dual;
  for (Direction d : {Direction::primal, Direction::dual}) {
    const std::string name = to_string(d);
    if (a.direction != name && a.direction != "both") continue;
    const ForcedOutputResult r = max_forced_output(m, a.outcome, d);
    payload[name] = io::to_json(r);
    witness[name] = io::to_json(r.witness);
    (d == Direction::primal ? primal : dual) = r.probability;
  }
  payload["probability"] = primal ? *primal : *dual;
  if (primal && dual) payload["gap"] = std::abs(*primal - *dual);
  const std::string path = a.rep + ".witness.json";
  write_file(path, io::dump_exact(witness));
  payload["witness"] = path;
  return {kExitOk, payload};
}

struct GameArgs {
  std::string referee, export_path;
  bool swap = false;
  bool no_solve = false;
};

Outcome cmd_game_value(const GameArgs& a) {
  const Referee ref = io::referee_from_json(io::read_file(a.referee));
  Json payload = {{"command", "game-value"}};
  if (!a.export_path.empty()) {
    write_file(a.export_path, export_sdpa(game_value_problem(ref)));
    payload["sdpa"] = a.export_path;
  }
  if (a.no_solve) return {kExitOk, payload};
  if (a.swap) {
    const MinMaxResult r = minmax_check(ref);
    payload["maximin"] = r.maximin;
    payload["minimax"] = r.minimax;
    payload["agreement"] = std::abs(r.maximin - r.minimax);
    payload["alice"] = io::to_json(r.alice);
    payload["bob"] = io::to_json(r.bob);
    payload["value"] = r.maximin;
  } else {
    const GameValueResult r = game_value(ref);
    payload["game"] = io::to_json(r);
    payload["value"] = r.value;
  }
  return {kExitOk, payload};
}

struct CoinFlipArgs {
  std::string alice, bob;
};

Outcome cmd_coinflip(const CoinFlipArgs& a) {
  const MeasuringRep alice = io::measuring_from_any_json(io::read_file(a.alice));
  const MeasuringRep bob = io::measuring_from_any_json(io::read_file(a.bob));
  return {kExitOk, {{"command", "coinflip"}, {"report", io::to_json(coinflip_analyze(alice, bob))}}};
}

struct ExportArgs {
  std::string referee, rep, outcome, direction = "primal", out;
  bool swap = false;
};

Outcome cmd_export(const ExportArgs& a) {
  if (a.referee.empty() == a.rep.empty()) {
    throw ContractViolation("export-sdpa needs exactly one of --referee and --measuring-rep");
  }
  SdpProblem p;
  if (!a.referee.empty()) {
    p = game_value_problem(io::referee_from_json(io::read_file(a.referee)), a.swap);
  } else {
    if (a.outcome.empty()) throw ContractViolation("--measuring-rep needs --outcome");
    p = forced_output_problem(io::measuring_from_any_json(io::read_file(a.rep)), a.outcome,
                              direction_from_string(a.direction));
  }
  const std::string text = export_sdpa(p);
  write_file(a.out, text);
  const CompiledSdp c = compile(p);
  return {kExitOk,
          {{"command", "export-sdpa"},
           {"path", a.out},
           {"bytes", text.size()},
           {"constraints", c.real.b.size()},
           {"blocks", c.real.block_sizes}}};
}

struct RandomArgs {
  std::string kind = "strategy", inputs, outputs;
  std::size_t outcomes = 0;
  std::uint64_t seed = 1;
  bool rep = false;
};

Outcome cmd_random(const RandomArgs& a) {
  const SpaceProfile prof = make_profile(parse_dims(a.inputs), parse_dims(a.outputs));
  const std::uint64_t seed = effective_seed(a.seed);
  if (rep_kind_from_string(a.kind) == RepKind::strategy) {
    const StrategyDescription d = random_strategy(prof, a.outcomes, seed);
    return {kExitOk, a.rep ? io::to_json(represent_measuring_strategy(d)) : io::to_json(d), true};
  }
  const CoStrategyDescription d = random_costrategy(prof, a.outcomes, seed);
  return {kExitOk, a.rep ? io::to_json(represent_measuring_costrategy(d)) : io::to_json(d), true};
}

struct FixtureArgs {
  std::string name;
  std::uint64_t seed = 1;
};

Outcome cmd_fixture(const FixtureArgs& a) {
  const std::map<std::string, std::function<Json()>> table = {
      {"coinflip-alice", [] { return io::to_json(fixtures::coinflip_alice()); }},
      {"coinflip-bob", [] { return io::to_json(fixtures::coinflip_bob()); }},
      {"xor-alice", [] { return io::to_json(fixtures::xor_alice()); }},
      {"xor-bob", [] { return io::to_json(fixtures::xor_bob()); }},
      {"coin-ignoring", [] { return io::to_json(fixtures::coin_ignoring_referee()); }},
      {"alice-controlled", [] { return io::to_json(fixtures::alice_controlled_referee()); }},
      {"matching-pennies", [] { return io::to_json(fixtures::matching_pennies_referee()); }},
      {"random-referee",
       [&] { return io::to_json(fixtures::random_referee(effective_seed(a.seed))); }},
  };
  const auto it = table.find(a.name);
  if (it == table.end()) throw ContractViolation("unknown fixture '" + a.name + "'");
  return {kExitOk, it->second(), true};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum strategy toolkit", "qstrat"};
  app.require_subcommand(1);
  std::function<Outcome()> action;

  ValidateArgs va;
  auto* v = app.add_subcommand("validate", "check a representation against a profile");
  v->add_option("--rep", va.rep, "representation JSON")->required();
  v->add_option("--profile", va.profile, "profile JSON");
  v->add_option("--kind", va.kind, "strategy | costrategy")
      ->check(CLI::IsMember({"strategy", "costrategy"}));
  v->add_option("--tol", va.tol, "residual tolerance");
  v->callback([&] { action = [&] { return cmd_validate(va); }; });

  InteractArgs ia;
  auto* i = app.add_subcommand("interact", "outcome distribution of an interaction");
  i->add_option("--strategy", ia.strategy)->required();
  i->add_option("--costrategy", ia.costrategy)->required();
  i->add_option("--method", ia.method)->check(CLI::IsMember({"reps", "simulate", "both"}));
  i->callback([&] { action = [&] { return cmd_interact(ia); }; });

  MaxProbArgs ma;
  auto* m = app.add_subcommand("maxprob", "maximum forced-output probability");
  m->add_option("--measuring-rep", ma.rep)->required();
  m->add_option("--outcome", ma.outcome)->required();
  m->add_option("--direction", ma.direction)->check(CLI::IsMember({"primal", "dual", "both"}));
  m->callback([&] { action = [&] { return cmd_maxprob(ma); }; });

  GameArgs ga;
  auto* g = app.add_subcommand("game-value", "value of a zero-sum refereed game");
  g->add_option("--referee", ga.referee)->required();
  g->add_flag("--swap-roles", ga.swap, "also solve the Bob-hard-wired program");
  g->add_option("--export-sdpa", ga.export_path, "write the SDPA file of the program");
  g->add_flag("--no-solve", ga.no_solve, "only export");
  g->callback([&] { action = [&] { return cmd_game_value(ga); }; });

  CoinFlipArgs ca;
  auto* c = app.add_subcommand("coinflip", "strong coin-flipping cheat analysis");
  c->add_option("--alice", ca.alice)->required();
  c->add_option("--bob", ca.bob)->required();
  c->callback([&] { action = [&] { return cmd_coinflip(ca); }; });

  ExportArgs ea;
  auto* e = app.add_subcommand("export-sdpa", "write a program in SDPA sparse format");
  e->add_option("--referee", ea.referee);
  e->add_flag("--swap-roles", ea.swap);
  e->add_option("--measuring-rep", ea.rep);
  e->add_option("--outcome", ea.outcome);
  e->add_option("--direction", ea.direction)->check(CLI::IsMember({"primal", "dual"}));
  e->add_option("--out", ea.out)->required();
  e->callback([&] { action = [&] { return cmd_export(ea); }; });

  RandomArgs ra;
  auto* r = app.add_subcommand("random", "random strategy or co-strategy description");
  r->add_option("--kind", ra.kind)->check(CLI::IsMember({"strategy", "costrategy"}));
  r->add_option("--inputs", ra.inputs, "comma-separated input dims")->required();
  r->add_option("--outputs", ra.outputs, "comma-separated output dims")->required();
  r->add_option("--outcomes", ra.outcomes, "measurement outcomes (0 = none)");
  r->add_option("--seed", ra.seed);
  r->add_flag("--rep", ra.rep, "emit the measuring representation");
  r->callback([&] { action = [&] { return cmd_random(ra); }; });

  FixtureArgs fa;
  auto* f = app.add_subcommand("fixture", "emit a shipped protocol or referee");
  f->add_option("name", fa.name)->required();
  f->add_option("--seed", fa.seed);
  f->callback([&] { action = [&] { return cmd_fixture(fa); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    const Outcome o = action();
    out << (o.exact ? io::dump_exact(o.payload) : io::dump(o.payload));
    return o.code;
  } catch (const ValidationError& ex) {
    err << "validation error: " << ex.what() << "\n";
    out << io::dump({{"error", ex.what()}, {"type", "validation"}});
    return kExitInvalid;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    out << io::dump({{"error", ex.what()}, {"type", "error"}});
    return kExitError;
  }
}

}  // namespace qstrat
