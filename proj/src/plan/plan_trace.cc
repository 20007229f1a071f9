// Copyright 2026 The L2P Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "l2p/plan/plan_trace.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "l2p/common/errors.h"

namespace l2p {

std::vector<Action> PlanTrace::actions() const {
  std::vector<Action> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.action);
  return out;
}

std::string format_score(double v) {
  if (v == kNegInf) return "-inf";
  if (v == -kNegInf) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_score(const std::string& s) {
  if (s == "-inf") return kNegInf;
  if (s == "inf") return -kNegInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad score '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad score '" + s + "'");
  return v;
}

namespace {

const char* termination_word(Termination t) {
  switch (t) {
    case Termination::kHalt:
      return "HALT";
    case Termination::kNatural:
      return "NATURAL";
    case Termination::kBudget:
      return "BUDGET";
  }
  return "HALT";
}

}  // namespace

void write_trace_log(const PlanTrace& trace, std::ostream& out) {
  std::size_t step = 0;
  for (const auto& s : trace.steps) {
    out << step++ << '\t' << (s.action.star + 1) << '\t' << s.action.delta << '\t' << format_score(s.lb) << '\t'
        << format_score(s.ub) << '\t' << s.cost << '\n';
  }
  out << step << '\t' << termination_word(trace.termination) << '\t' << 0 << '\t' << format_score(trace.final_lb)
      << '\t' << format_score(trace.final_ub) << '\t' << trace.cost << '\n';
}

std::string trace_log(const PlanTrace& trace) {
  std::ostringstream os;
  write_trace_log(trace, os);
  return os.str();
}

std::vector<LoggedStep> read_trace_log(std::istream& in) {
  std::vector<LoggedStep> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    LoggedStep s{};
    std::string lb, ub;
    if (!(fields >> s.step >> s.star >> s.delta >> lb >> ub >> s.cost)) {
      throw ParseError("trace", line_no, "expected step<TAB>star<TAB>delta<TAB>LB<TAB>UB<TAB>cost");
    }
    s.lb = parse_score(lb);
    s.ub = parse_score(ub);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace l2p
