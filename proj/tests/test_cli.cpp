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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qstrat/errors.hpp"
#include "qstrat/json_io.hpp"

namespace qstrat {
namespace {

namespace fs = std::filesystem;
using io::Json;

const fs::path kData = QSTRAT_TEST_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return io::parse(out); }
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return (kData / name).string(); }

// Scratch copy of a data file, since maxprob writes its witness beside it.
std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qstrat_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::copy_file(kData / name, p, fs::copy_options::overwrite_existing);
  return p.string();
}

TEST(CliValidate, ValidRepExitsZero) {
  const CliRun r = run({"validate", "--rep", data("valid-rep.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.json()["report"]["valid"].get<bool>());
}

TEST(CliValidate, DoubledRepExitsTwoWithResidual) {
  const CliRun r = run({"validate", "--rep", data("doubled-rep.json"), "--profile",
                     data("profile-2-2.json"), "--kind", "strategy", "--tol", "1e-8"});
  EXPECT_EQ(r.code, kExitInvalid);
  const Json report = r.json()["report"];
  EXPECT_FALSE(report["valid"].get<bool>());
  EXPECT_NEAR(report["max_residual"].get<double>(), 1.0, 1e-9);
}

TEST(CliValidate, GarbageExitsOneWithLocation) {
  const CliRun r = run({"validate", "--rep", data("garbage.json"), "--profile",
                     data("profile-2-2.json")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("line 1, column"), std::string::npos) << r.err;
}

TEST(CliValidate, MissingFileExitsOne) {
  EXPECT_EQ(run({"validate", "--rep", data("no-such-file.json")}).code, kExitError);
}

TEST(CliUsage, UnknownCommandAndMissingOptionExitOne) {
  EXPECT_EQ(run({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run({"maxprob", "--outcome", "0"}).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
}

TEST(CliInteract, CoinFlipBothMethodsAgree) {
  const CliRun r = run({"interact", "--strategy", data("coinflip-alice.json"), "--costrategy",
                     data("coinflip-bob.json"), "--method", "both"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_LE(j["max_gap"].get<double>(), 1e-8);
  const OutcomeDistribution d = io::distribution_from_json(j["simulate"]);
  EXPECT_NEAR(d.at("0", "0"), 0.5, 1e-12);
  EXPECT_NEAR(d.at("1", "1"), 0.5, 1e-12);
}

TEST(CliInteract, SingleOutcomeIsCertain) {
  const CliRun r = run({"interact", "--strategy", data("single-strategy.json"), "--costrategy",
                     data("single-costrategy.json"), "--method", "reps"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const OutcomeDistribution d = io::distribution_from_json(r.json()["reps"]);
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_NEAR(d.at("*", "*"), 1.0, 1e-12);
}

TEST(CliInteract, MismatchedDimsExitOne) {
  const CliRun r = run({"interact", "--strategy", data("single-strategy.json"), "--costrategy",
                     data("mismatch-costrategy.json")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(r.json().contains("error"));
}

TEST(CliMaxProb, CertainOutcome) {
  const CliRun r = run({"maxprob", "--measuring-rep", scratch("single-strategy.json"),
                     "--outcome", "*", "--direction", "both"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(r.json()["probability"].get<double>(), 1.0, 1e-6);
}

TEST(CliMaxProb, HonestCoinFlipPartyAtLeastHalf) {
  for (const std::string b : {"0", "1"}) {
    const CliRun r = run({"maxprob", "--measuring-rep", scratch("coinflip-alice.json"),
                       "--outcome", b, "--direction", "primal"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_GE(r.json()["probability"].get<double>(), 0.5);
  }
}

TEST(CliMaxProb, OneTurnPrimalDualAndWitnessFile) {
  const std::string in = scratch("measuring-one-turn.json");
  const CliRun r = run({"maxprob", "--measuring-rep", in, "--outcome", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_LE(j["gap"].get<double>(), 1e-5);
  EXPECT_EQ(j["witness"].get<std::string>(), in + ".witness.json");
  const Json w = io::read_file(in + ".witness.json");
  const StrategyRep primal = io::rep_from_json(w["primal"]);
  EXPECT_EQ(primal.kind, RepKind::costrategy);
  const MeasuringRep m = io::measuring_from_json(io::read_file(in));
  EXPECT_NEAR(inner(m.outcomes.at("0"), primal.op), j["primal"]["raw_value"].get<double>(),
              1e-6);
}

TEST(CliMaxProb, UnknownOutcomeExitsOne) {
  EXPECT_EQ(run({"maxprob", "--measuring-rep", scratch("measuring-one-turn.json"),
                 "--outcome", "7"})
                .code,
            kExitError);
}

TEST(CliGameValue, CoinIgnoringIsHalf) {
  const CliRun r = run({"game-value", "--referee", data("coin-ignoring.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(r.json()["value"].get<double>(), 0.5, 1e-6);
}

TEST(CliGameValue, MatchingPenniesIsHalf) {
  const CliRun r = run({"game-value", "--referee", data("matching-pennies.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(r.json()["value"].get<double>(), 0.5, 1e-5);
  EXPECT_TRUE(r.json()["game"]["strategy_validation"]["valid"].get<bool>());
}

TEST(CliGameValue, SwapRolesAgree) {
  const CliRun r = run({"game-value", "--referee", data("random-referee.json"), "--swap-roles"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LE(r.json()["agreement"].get<double>(), 1e-5);
}

TEST(CliGameValue, ExportWithoutSolving) {
  const fs::path out = fs::temp_directory_path() / "qstrat_cli_test" / "mp.dat-s";
  fs::create_directories(out.parent_path());
  const CliRun r = run({"game-value", "--referee", data("matching-pennies.json"), "--export-sdpa",
                     out.string(), "--no-solve"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_FALSE(r.json().contains("value"));
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  const RealSdp p = parse_sdpa(ss.str());
  EXPECT_FALSE(p.b.empty());
  const RealSolution s = solve_real(p);
  EXPECT_NEAR(s.primal_objective, 0.5, 1e-6);  // Bob's win probability
}

TEST(CliGameValue, BrokenRefereeExitsOne) {
  Json j = io::read_file(data("matching-pennies.json"));
  j["profile"]["inputs"][0]["factors"][0]["dim"] = 3;
  const fs::path p = fs::temp_directory_path() / "qstrat_cli_test" / "bad-referee.json";
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump();
  EXPECT_EQ(run({"game-value", "--referee", p.string()}).code, kExitError);
}

TEST(CliCoinFlip, ShippedProtocolCertifiesBounds) {
  const CliRun r = run({"coinflip", "--alice", data("coinflip-alice.json"), "--bob",
                     data("coinflip-bob.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json rep = r.json()["report"];
  EXPECT_TRUE(rep["honest_ok"].get<bool>());
  EXPECT_TRUE(rep["bound_ok"].get<bool>());
  EXPECT_NEAR(rep["bound"].get<double>(), 0.7071067811, 1e-10);
  for (const auto& o : rep["outcomes"]) {
    EXPECT_NEAR(o["honest_agreement"].get<double>(), 0.5, 1e-9);
    EXPECT_TRUE(o["product_ok"].get<bool>());
  }
}

TEST(CliCoinFlip, XorToyHasPerfectCheater) {
  const CliRun r =
      run({"coinflip", "--alice", data("xor-alice.json"), "--bob", data("xor-bob.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const auto& o : r.json()["report"]["outcomes"]) {
    EXPECT_NEAR(o["max_cheat"].get<double>(), 1.0, 1e-6);
  }
}

TEST(CliCoinFlip, WrongShapeExitsOne) {
  EXPECT_EQ(run({"coinflip", "--alice", data("measuring-one-turn.json"), "--bob",
                 data("coinflip-bob.json")})
                .code,
            kExitError);
}

TEST(CliExport, ByteDeterministic) {
  const fs::path dir = fs::temp_directory_path() / "qstrat_cli_test";
  fs::create_directories(dir);
  std::string texts[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("fo" + std::to_string(k) + ".dat-s");
    const CliRun r = run({"export-sdpa", "--measuring-rep", data("measuring-one-turn.json"),
                       "--outcome", "1", "--direction", "dual", "--out", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream f(out, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    texts[k] = ss.str();
  }
  EXPECT_EQ(texts[0], texts[1]);
  EXPECT_FALSE(texts[0].empty());
}

TEST(CliExport, NeedsExactlyOneSource) {
  EXPECT_EQ(run({"export-sdpa", "--out", "/tmp/x.dat-s"}).code, kExitError);
}

TEST(CliDeterminism, IdenticalPayloads) {
  const std::vector<std::string> args = {"coinflip", "--alice", data("coinflip-alice.json"),
                                         "--bob", data("coinflip-bob.json")};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliRoundTrip, PayloadsReparseToSameDocument) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"interact", "--strategy", data("coinflip-alice.json"), "--costrategy",
            data("coinflip-bob.json")},
           {"game-value", "--referee", data("alice-controlled.json")},
           {"fixture", "matching-pennies"},
           {"validate", "--rep", data("valid-rep.json")}}) {
    const CliRun r = run(args);
    ASSERT_EQ(r.code, kExitOk) << args[0] << ": " << r.err;
    const Json j = r.json();
    const bool exact = args[0] == "fixture";
    EXPECT_EQ(exact ? io::dump_exact(j) : io::dump(j), r.out) << args[0];
  }
}

TEST(CliRoundTrip, FixtureParsesBackToReferee) {
  const CliRun r = run({"fixture", "coin-ignoring"});
  ASSERT_EQ(r.code, kExitOk);
  const Referee ref = io::referee_from_json(r.json());
  EXPECT_EQ(ref.outcomes.size(), 2u);
  EXPECT_NO_THROW(ref.check());
}

TEST(CliRandom, SeedEnvOverride) {
  const std::vector<std::string> args = {"random", "--inputs", "2", "--outputs", "2",
                                         "--seed", "1"};
  const std::string plain = run(args).out;
  ::setenv("QSTRAT_SEED", "99", 1);
  const std::string overridden = run(args).out;
  std::vector<std::string> args99 = args;
  args99.back() = "99";
  ::unsetenv("QSTRAT_SEED");
  EXPECT_NE(plain, overridden);
  EXPECT_EQ(overridden, run(args99).out);
}

TEST(CliRandom, OutputIsValidDescription) {
  const CliRun r = run({"random", "--kind", "costrategy", "--inputs", "2,1", "--outputs", "1,2",
                     "--outcomes", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CoStrategyDescription d = io::costrategy_from_json(r.json());
  EXPECT_NO_THROW(d.check());
  EXPECT_TRUE(validate(represent_measuring_costrategy(d)).valid);
}

TEST(JsonIo, MatrixEncodingRoundTripsExactly) {
  ComplexMatrix m(2, 3);
  m << Complex(1, 2), Complex(0.1, 0), Complex(-3, 1e-17), Complex(0, -1), Complex(5, 5),
      Complex(1.0 / 3.0, 0);
  const Json j = io::to_json(m);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 3);
  EXPECT_EQ(j["entries"].size(), 6u);
  EXPECT_EQ(j["entries"][1], Json::array({0.1, 0.0}));
  EXPECT_EQ(io::matrix_from_json(io::parse(io::dump_exact(j))), m);
}

TEST(JsonIo, MalformedMatricesAreParseErrors) {
  EXPECT_THROW(io::matrix_from_json(io::parse(R"({"rows":2,"cols":2,"entries":[[1,0]]})")),
               ParseError);
  EXPECT_THROW(io::matrix_from_json(io::parse(R"({"rows":1,"cols":1,"entries":[[1,0,2]]})")),
               ParseError);
  EXPECT_THROW(io::matrix_from_json(io::parse(R"({"cols":1,"entries":[[1,0]]})")), ParseError);
}

TEST(JsonIo, SpaceListsKeepLabels) {
  const SpaceList s = io::spaces_from_json(
      io::parse(R"([{"label":"Q","dim":2},{"label":"R","dim":3}])"), "X");
  EXPECT_EQ(s, (SpaceList{{"Q", 2}, {"R", 3}}));
  EXPECT_EQ(io::spaces_from_json(io::parse("[2, 3]"), "X"), (SpaceList{{"X1", 2}, {"X2", 3}}));
  EXPECT_EQ(io::to_json(s), io::parse(R"([{"dim":2,"label":"Q"},{"dim":3,"label":"R"}])"));
  EXPECT_THROW(io::spaces_from_json(io::parse("[0]"), "X"), ParseError);
}

TEST(JsonIo, DistributionUsesOutcomeTriples) {
  OutcomeDistribution d;
  d.entries[{"a", "b"}] = 0.25;
  d.entries[{"a", "c"}] = 0.75;
  const Json j = io::to_json(d);
  EXPECT_EQ(j["outcomes"][0], Json::array({"a", "b", 0.25}));
  EXPECT_EQ(io::distribution_from_json(j).entries, d.entries);
}

TEST(JsonIo, RefereeFactorPairsAreChecked) {
  Json j = io::read_file(data("matching-pennies.json"));
  EXPECT_EQ(j["profile"]["inputs"][0]["factors"].size(), 2u);
  EXPECT_NO_THROW(io::referee_from_json(j));
  j["profile"]["outputs"][0]["dim"] = 5;
  EXPECT_THROW(io::referee_from_json(j), RefereeModelError);
}

TEST(JsonIo, DescriptionsRoundTrip) {
  const Json j = io::read_file(data("coinflip-bob.json"));
  EXPECT_EQ(io::to_json(io::costrategy_from_json(j)), j);
  const Json s = io::read_file(data("coinflip-alice.json"));
  EXPECT_EQ(io::to_json(io::strategy_from_json(s)), s);
}

}  // namespace
}  // namespace qstrat
