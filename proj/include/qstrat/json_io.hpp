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

// JSON encodings of the library's inputs and reports. Matrices are
// {"rows": r, "cols": c, "entries": [[re, im], ...]} in row-major order;
// space lists are [{"label": "X1", "dim": 2}, ...]; distributions are
// {"outcomes": [["a", "b", p], ...]}.

#include <string>

#include <json.hpp>

#include "qstrat/games.hpp"
#include "qstrat/interaction.hpp"
#include "qstrat/strategy.hpp"

namespace qstrat::io {

using Json = nlohmann::json;

/// Parses text; syntax errors become ParseError with the location.
Json parse(const std::string& text, const std::string& source = "input");
Json read_file(const std::string& path);
/// Rounds every float to 12 significant digits and dumps with sorted keys.
std::string dump(const Json& j);
Json round_floats(const Json& j);
/// Compact, sorted keys, floats at round-trip precision.
std::string dump_exact(const Json& j);

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const SpaceList& s);
/// Bare integers get labels prefix1, prefix2, ...
SpaceList spaces_from_json(const Json& j, const std::string& prefix);
Json to_json(const SpaceProfile& p);
SpaceProfile profile_from_json(const Json& j);

Json to_json(const StrategyDescription& d);
Json to_json(const CoStrategyDescription& d);
StrategyDescription strategy_from_json(const Json& j);
CoStrategyDescription costrategy_from_json(const Json& j);

Json to_json(const StrategyRep& r);
StrategyRep rep_from_json(const Json& j);
Json to_json(const MeasuringRep& m);
MeasuringRep measuring_from_json(const Json& j);
/// Accepts a measuring representation, a strategy description
/// ("type": "strategy") or a co-strategy description ("type": "costrategy").
MeasuringRep measuring_from_any_json(const Json& j);

Json to_json(const Referee& r);
Referee referee_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const OutcomeDistribution& d);
OutcomeDistribution distribution_from_json(const Json& j);
Json to_json(const ForcedOutputResult& r);
Json to_json(const GameValueResult& r);
Json to_json(const CoinFlipReport& r);

}  // namespace qstrat::io
