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


#include "l2p/eval/experiment.h"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "l2p/common/errors.h"
#include "l2p/common/hash.h"
#include "l2p/common/parallel.h"
#include "l2p/learning/learned_policy.h"
#include "l2p/plan/executor.h"

namespace l2p {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kHalt:
      return "halt";
    case Termination::kNatural:
      return "natural";
    case Termination::kBudget:
      return "budget";
  }
  return "natural";
}

Termination parse_termination(const std::string& s) {
  if (s == "halt") return Termination::kHalt;
  if (s == "natural") return Termination::kNatural;
  if (s == "budget") return Termination::kBudget;
  throw ParseError("unknown termination '" + s + "'");
}

bool is_stochastic(MethodSpec::Kind k) { return k == MethodSpec::Kind::kRandom; }

MethodRow aggregate(const std::string& name, const std::vector<QueryResult>& ta, const std::vector<QueryResult>& rs) {
  if (ta.size() != rs.size()) throw ValidationError("method " + name + " has a different number of queries than TA");
  std::vector<double> spd, acc, cost, fetches, joins, overhead, wall;
  for (std::size_t q = 0; q < rs.size(); ++q) {
    spd.push_back(floored_speedup(ta[q], rs[q]));
    acc.push_back(accuracy(ta[q], rs[q]));
    cost.push_back(static_cast<double>(rs[q].cost));
    fetches.push_back(static_cast<double>(rs[q].fetches));
    joins.push_back(static_cast<double>(rs[q].joins));
    overhead.push_back(static_cast<double>(rs[q].ml_overhead));
    wall.push_back(rs[q].wall_ms);
  }
  return {name, mean(spd), mean(acc), mean(cost), mean(fetches), mean(joins), mean(overhead), mean(wall)};
}

}  // namespace

std::vector<MethodRow> summarize(const std::vector<MethodRuns>& runs) {
  if (runs.empty() || runs.front().repeats.size() != 1) throw ValidationError("report must start with one TA run");
  const auto& ta = runs.front().repeats.front();
  std::vector<MethodRow> rows;
  for (const auto& m : runs) {
    if (m.repeats.empty()) throw ValidationError("method " + m.method + " has no runs");
    MethodRow sum{m.method};
    for (const auto& rep : m.repeats) {
      MethodRow r = aggregate(m.method, ta, rep);
      sum.speedup += r.speedup;
      sum.accuracy += r.accuracy;
      sum.cost += r.cost;
      sum.fetches += r.fetches;
      sum.joins += r.joins;
      sum.ml_overhead += r.ml_overhead;
      sum.wall_ms += r.wall_ms;
    }
    const double n = static_cast<double>(m.repeats.size());
    for (double* v : {&sum.speedup, &sum.accuracy, &sum.cost, &sum.fetches, &sum.joins, &sum.ml_overhead, &sum.wall_ms}) {
      *v /= n;
    }
    rows.push_back(sum);
  }
  return rows;
}

ExperimentReport run_experiment(const DataGraph& g, const std::vector<GraphQuery>& queries,
                                const std::vector<MethodSpec>& methods, const ExperimentConfig& cfg,
                                const std::string& label) {
  if (queries.empty()) throw ConfigError("experiment needs at least one query");
  if (cfg.repeats < 1) throw ConfigError("repeats must be at least 1");
  for (const auto& m : methods) {
    bool needs_policy = m.kind == MethodSpec::Kind::kPolicy || m.kind == MethodSpec::Kind::kFetchOnly;
    if (needs_policy && m.policy == nullptr) throw ConfigError("method " + m.name + " has no policy");
  }
  const std::size_t n = queries.size();
  std::vector<Clock::duration> ta_time(n);
  std::vector<OracleInstance> instances(n);
  parallel_for(
      n,
      [&](std::size_t q) {
        auto start = Clock::now();
        instances[q].ctx = std::make_unique<QueryContext>(g, queries[q], cfg.k, cfg.theta);
        instances[q].ref = make_reference(*instances[q].ctx);
        ta_time[q] = Clock::now() - start;
      },
      cfg.threads);

  ExperimentReport report;
  report.label = label;
  report.k = cfg.k;
  report.theta = cfg.theta;
  report.repeats = cfg.repeats;
  report.seed = cfg.seed;
  report.wall_clock = cfg.wall_clock;

  auto wall = [&](double ms) { return cfg.wall_clock ? ms : 0.0; };
  MethodRuns ta{"ta", {std::vector<QueryResult>(n)}};
  for (std::size_t q = 0; q < n; ++q) {
    ta.repeats[0][q] = result_of(instances[q].ref.trace, wall(std::chrono::duration<double, std::milli>(ta_time[q]).count()));
  }
  report.runs.push_back(std::move(ta));

  for (const auto& m : methods) {
    if (m.kind == MethodSpec::Kind::kTa) continue;
    MethodRuns runs{m.name, {}};
    const std::size_t reps = is_stochastic(m.kind) ? cfg.repeats : 1;
    for (std::size_t r = 0; r < reps; ++r) {
      std::vector<QueryResult> results(n);
      const RandomPolicy random(hash_combine(cfg.seed, r));
      std::optional<FetchOnlyPolicy> fetch_only;
      if (m.kind == MethodSpec::Kind::kFetchOnly) fetch_only.emplace(*m.policy);
      parallel_for(
          n,
          [&](std::size_t q) {
            QueryContext& ctx = *instances[q].ctx;
            auto start = Clock::now();
            switch (m.kind) {
              case MethodSpec::Kind::kOracle: {
                auto plan = beam_search_tqp(ctx, instances[q].ref, cfg.weights, cfg.oracle);
                if (plan) {
                  results[q] = result_of(replay(ctx, plan->actions, Termination::kHalt), wall(elapsed_ms(start)));
                } else {
                  results[q] = result_of(instances[q].ref.trace, wall(elapsed_ms(start)));
                }
                break;
              }
              case MethodSpec::Kind::kRandom:
                results[q] = result_of(execute_policy(ctx, random), 0.0);
                break;
              case MethodSpec::Kind::kPolicy:
                results[q] = result_of(execute_policy(ctx, *m.policy), 0.0);
                break;
              case MethodSpec::Kind::kFetchOnly:
                results[q] = result_of(execute_policy(ctx, *fetch_only), 0.0);
                break;
              case MethodSpec::Kind::kTa:
                break;
            }
            if (m.kind != MethodSpec::Kind::kOracle) results[q].wall_ms = wall(elapsed_ms(start));
          },
          cfg.threads);
      runs.repeats.push_back(std::move(results));
    }
    report.runs.push_back(std::move(runs));
  }
  report.rows = summarize(report.runs);
  return report;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "l2p-report/1";
  j["label"] = r.label;
  j["cost_model"] = "cost units: one per partial-match expansion plus one per join attempt; speedup = TA cost / method cost";
  j["k"] = r.k;
  j["theta"] = r.theta;
  j["repeats"] = r.repeats;
  j["seed"] = r.seed;
  j["wall_clock"] = r.wall_clock;
  j["queries"] = r.runs.empty() || r.runs.front().repeats.empty() ? 0 : r.runs.front().repeats.front().size();
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json o;
    o["method"] = row.method;
    o["speedup"] = row.speedup;
    o["accuracy"] = row.accuracy;
    o["cost"] = row.cost;
    o["fetches"] = row.fetches;
    o["joins"] = row.joins;
    o["ml_overhead"] = row.ml_overhead;
    if (r.wall_clock) o["wall_ms"] = row.wall_ms;
    rows.push_back(std::move(o));
  }
  j["methods"] = std::move(rows);
  ordered_json runs = ordered_json::array();
  for (const auto& m : r.runs) {
    ordered_json reps = ordered_json::array();
    for (const auto& rep : m.repeats) {
      ordered_json qs = ordered_json::array();
      for (const auto& q : rep) {
        ordered_json o;
        o["id"] = q.query_id;
        o["cost"] = q.cost;
        o["fetches"] = q.fetches;
        o["joins"] = q.joins;
        o["ml_overhead"] = q.ml_overhead;
        o["termination"] = termination_name(q.termination);
        ordered_json scores = ordered_json::array();
        for (const auto& a : q.answers) scores.push_back(a.score);
        o["scores"] = std::move(scores);
        if (r.wall_clock) o["wall_ms"] = q.wall_ms;
        qs.push_back(std::move(o));
      }
      reps.push_back(std::move(qs));
    }
    runs.push_back({{"method", m.method}, {"repeats", std::move(reps)}});
  }
  j["runs"] = std::move(runs);
  return j;
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "l2p-report/1") throw ParseError("unsupported report schema");
    ExperimentReport r;
    r.label = j.at("label").get<std::string>();
    r.k = j.at("k").get<int>();
    r.theta = j.at("theta").get<double>();
    r.repeats = j.at("repeats").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_clock = j.at("wall_clock").get<bool>();
    for (const auto& m : j.at("runs")) {
      MethodRuns runs{m.at("method").get<std::string>(), {}};
      for (const auto& rep : m.at("repeats")) {
        std::vector<QueryResult> qs;
        for (const auto& o : rep) {
          QueryResult q;
          q.query_id = o.at("id").get<std::string>();
          q.cost = o.at("cost").get<std::uint64_t>();
          q.fetches = o.at("fetches").get<std::uint64_t>();
          q.joins = o.at("joins").get<std::uint64_t>();
          q.ml_overhead = o.at("ml_overhead").get<std::uint64_t>();
          q.termination = parse_termination(o.at("termination").get<std::string>());
          for (const auto& s : o.at("scores")) q.answers.push_back(CompleteMatch{{}, s.get<double>()});
          if (o.contains("wall_ms")) q.wall_ms = o.at("wall_ms").get<double>();
          qs.push_back(std::move(q));
        }
        runs.repeats.push_back(std::move(qs));
      }
      r.runs.push_back(std::move(runs));
    }
    r.rows = summarize(r.runs);
    const auto& stored = j.at("methods");
    if (stored.size() != r.rows.size()) throw ValidationError("report rows do not match its runs");
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto& o = stored[i];
      const MethodRow& row = r.rows[i];
      auto same = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
      if (o.at("method").get<std::string>() != row.method || !same(o.at("speedup").get<double>(), row.speedup) ||
          !same(o.at("accuracy").get<double>(), row.accuracy) || !same(o.at("cost").get<double>(), row.cost) ||
          !same(o.at("fetches").get<double>(), row.fetches) || !same(o.at("joins").get<double>(), row.joins) ||
          !same(o.at("ml_overhead").get<double>(), row.ml_overhead)) {
        throw ValidationError("report row '" + row.method + "' does not match its runs");
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string format_report(const ExperimentReport& r) {
  std::ostringstream out;
  out << "# " << (r.label.empty() ? "experiment" : r.label) << ": k=" << r.k << " theta=" << r.theta
      << " repeats=" << r.repeats << "\n";
  out << "# speedup is TA cost units over method cost units (mean of per-query ratios)\n\n";
  out << std::left << std::setw(14) << "method" << std::right << std::setw(10) << "speedup" << std::setw(10)
      << "accuracy" << std::setw(16) << "cost";
  if (r.wall_clock) out << std::setw(12) << "wall_ms";
  out << "\n" << std::fixed;
  for (const auto& row : r.rows) {
    out << std::left << std::setw(14) << row.method << std::right << std::setw(10) << std::setprecision(2)
        << row.speedup << std::setw(9) << std::setprecision(1) << row.accuracy * 100.0 << "%" << std::setw(16)
        << std::setprecision(1) << row.cost;
    if (r.wall_clock) out << std::setw(12) << std::setprecision(3) << row.wall_ms;
    out << "\n";
  }
  out << "\n" << std::left << std::setw(14) << "method" << std::right << std::setw(12) << "fetches" << std::setw(16)
      << "joins" << std::setw(14) << "ml_overhead" << "\n";
  for (const auto& row : r.rows) {
    out << std::left << std::setw(14) << row.method << std::right << std::setw(12) << std::setprecision(2)
        << row.fetches << std::setw(16) << std::setprecision(1) << row.joins << std::setw(14) << std::setprecision(1)
        << row.ml_overhead << "\n";
  }
  return out.str();
}

std::vector<std::string> parse_method_list(const std::string& list) {
  static const std::vector<std::string> kKnown = {"ta", "oracle", "random", "l2p", "l2p-exact", "l2p-dagger",
                                                  "fetch-only"};
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(kKnown.begin(), kKnown.end(), item) == kKnown.end()) throw ConfigError("unknown method '" + item + "'");
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("no methods given");
  return out;
}

}  // namespace l2p
