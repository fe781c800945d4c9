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

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qstrat/errors.hpp"
#include "qstrat/sdp.hpp"

namespace qstrat {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_entries(std::ostringstream& os, int matrix, const std::vector<SdpEntry>& row,
                   double sign) {
  for (const auto& e : row) {
    os << matrix << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' '
       << format_double(sign * e.value) << '\n';
  }
}

}  // namespace

std::string export_sdpa(const RealSdp& problem, const std::string& comment) {
  std::ostringstream os;
  os << '"' << (comment.empty() ? std::string("qstrat") : comment) << "\"\n";
  os << problem.a.size() << " = mDIM\n";
  os << problem.block_sizes.size() << " = nBLOCK\n";
  for (std::size_t b = 0; b < problem.block_sizes.size(); ++b) {
    os << (b ? " " : "") << problem.block_sizes[b];
  }
  os << " = bLOCKsTRUCT\n";
  for (std::size_t i = 0; i < problem.b.size(); ++i) {
    os << (i ? " " : "") << format_double(problem.b[i]);
  }
  os << '\n';
  write_entries(os, 0, problem.c, -1.0);
  for (std::size_t i = 0; i < problem.a.size(); ++i) {
    write_entries(os, static_cast<int>(i + 1), problem.a[i], 1.0);
  }
  return os.str();
}

std::string export_sdpa(const SdpProblem& problem) {
  const CompiledSdp compiled = compile(problem);
  std::string comment = "qstrat blocks:";
  for (const auto& name : compiled.block_names) comment += " " + name;
  comment += compiled.objective_sign < 0 ? "; maximize" : "; minimize";
  return export_sdpa(compiled.real, comment);
}

RealSdp parse_sdpa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string body;
  std::size_t line_no = 0;
  std::vector<std::size_t> line_of_token;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && (line[0] == '"' || line[0] == '*')) continue;
    // Header lines may carry "= name" annotations.
    const auto eq = line.find('=');
    if (eq != std::string::npos) line = line.substr(0, eq);
    for (char& ch : line) {
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      tokens.push_back(tok);
      line_of_token.push_back(line_no);
    }
  }
  std::size_t pos = 0;
  auto next_number = [&](const char* what) -> double {
    if (pos >= tokens.size()) {
      throw ParseError(std::string("SDPA: unexpected end of input reading ") + what);
    }
    const std::string& t = tokens[pos];
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') {
      throw ParseError("SDPA line " + std::to_string(line_of_token[pos]) + ": bad " + what +
                       " '" + t + "'");
    }
    ++pos;
    return v;
  };
  auto next_int = [&](const char* what) -> int {
    const double v = next_number(what);
    if (v != static_cast<double>(static_cast<long>(v))) {
      throw ParseError(std::string("SDPA: non-integer ") + what);
    }
    return static_cast<int>(v);
  };

  RealSdp p;
  const int m = next_int("mDIM");
  const int nblock = next_int("nBLOCK");
  if (m < 0 || nblock <= 0) throw ParseError("SDPA: invalid mDIM or nBLOCK");
  for (int b = 0; b < nblock; ++b) {
    const int s = next_int("block size");
    if (s == 0) throw ParseError("SDPA: zero block size");
    p.block_sizes.push_back(std::abs(s));
  }
  for (int i = 0; i < m; ++i) p.b.push_back(next_number("objective coefficient"));
  p.a.resize(static_cast<std::size_t>(m));
  while (pos < tokens.size()) {
    const int k = next_int("matrix index");
    const int b = next_int("block index");
    int r = next_int("row index");
    int c = next_int("column index");
    const double v = next_number("entry value");
    if (k < 0 || k > m || b < 1 || b > nblock) throw ParseError("SDPA: entry index out of range");
    const int size = p.block_sizes[static_cast<std::size_t>(b - 1)];
    if (r < 1 || c < 1 || r > size || c > size) throw ParseError("SDPA: entry outside block");
    if (r > c) std::swap(r, c);
    const SdpEntry e{b - 1, r - 1, c - 1, k == 0 ? -v : v};
    (k == 0 ? p.c : p.a[static_cast<std::size_t>(k - 1)]).push_back(e);
  }
  return p;
}

}  // namespace qstrat
