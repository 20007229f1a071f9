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


#include "l2p/oracle/plan_corpus.h"

#include <fstream>
#include <sstream>

#include "l2p/common/errors.h"
#include "l2p/plan/plan_trace.h"

namespace l2p {
namespace {

constexpr const char* kMagic = "# l2p plan corpus v1";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void write_plan_corpus(const PlanCorpus& corpus, std::ostream& out) {
  out << kMagic << "\n";
  out << "# k=" << corpus.k << " theta=" << format_score(corpus.theta) << " weights=" << format_score(corpus.weights.w[0])
      << "," << format_score(corpus.weights.w[1]) << "," << format_score(corpus.weights.w[2]) << "\n";
  for (const auto& r : corpus.records) {
    out << r.query_id << "\t";
    if (!r.plan) {
      out << "0\t0\t0\t0\t0\t0\t-\n";
      continue;
    }
    const TargetPlan& p = *r.plan;
    out << "1\t" << p.cost << "\t" << p.ta_cost << "\t" << p.fetches << "\t" << p.ta_fetches << "\t"
        << format_score(p.quality) << "\t";
    if (p.actions.empty()) out << "-";
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
      if (i > 0) out << " ";
      out << p.actions[i].star + 1 << ":" << p.actions[i].delta;
    }
    out << "\n";
  }
}

void write_plan_corpus(const PlanCorpus& corpus, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  write_plan_corpus(corpus, out);
}

PlanCorpus read_plan_corpus(std::istream& in, const std::string& name) {
  PlanCorpus c;
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != kMagic) throw ParseError(name, lineno, "not a plan corpus");
  ++lineno;
  if (!std::getline(in, line)) throw ParseError(name, lineno, "missing parameter line");
  {
    std::istringstream hdr(line);
    std::string hash, tok;
    hdr >> hash;
    bool k = false, theta = false, weights = false;
    while (hdr >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError(name, lineno, "bad parameter '" + tok + "'");
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      try {
        if (key == "k") {
          c.k = std::stoi(val);
          k = true;
        } else if (key == "theta") {
          c.theta = parse_score(val);
          theta = true;
        } else if (key == "weights") {
          auto parts = split(val, ',');
          if (parts.size() != 3) throw ParseError(name, lineno, "weights need three values");
          for (std::size_t i = 0; i < 3; ++i) c.weights.w[i] = parse_score(parts[i]);
          weights = true;
        }
      } catch (const std::logic_error&) {
        throw ParseError(name, lineno, "bad value for " + key);
      }
    }
    if (!k || !theta || !weights) throw ParseError(name, lineno, "parameter line needs k, theta and weights");
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f.size() != 8) throw ParseError(name, lineno, "expected 8 tab-separated fields");
    PlanRecord r;
    r.query_id = f[0];
    try {
      if (f[1] == "1") {
        TargetPlan p;
        p.query_id = f[0];
        p.cost = std::stoull(f[2]);
        p.ta_cost = std::stoull(f[3]);
        p.fetches = std::stoull(f[4]);
        p.ta_fetches = std::stoull(f[5]);
        p.quality = parse_score(f[6]);
        if (f[7] != "-") {
          std::istringstream acts(f[7]);
          std::string a;
          while (acts >> a) {
            auto colon = a.find(':');
            if (colon == std::string::npos) throw ParseError(name, lineno, "bad action '" + a + "'");
            int star = std::stoi(a.substr(0, colon));
            int delta = std::stoi(a.substr(colon + 1));
            if (star < 1 || delta < 1) throw ParseError(name, lineno, "bad action '" + a + "'");
            p.actions.push_back(Action::fetch(static_cast<StarIndex>(star - 1), delta));
          }
        }
        r.plan = std::move(p);
      } else if (f[1] != "0") {
        throw ParseError(name, lineno, "found flag must be 0 or 1");
      }
    } catch (const std::logic_error&) {
      throw ParseError(name, lineno, "bad numeric field");
    }
    c.records.push_back(std::move(r));
  }
  return c;
}

PlanCorpus read_plan_corpus(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  return read_plan_corpus(in, file.string());
}

}  // namespace l2p
