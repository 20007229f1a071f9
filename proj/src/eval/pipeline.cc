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


#include "l2p/eval/pipeline.h"

#include <iomanip>
#include <sstream>

#include <spdlog/spdlog.h>

#include "l2p/common/errors.h"

namespace l2p {

PipelineResult run_pipeline(const DataGraph& g, const PipelineConfig& cfg, const std::string& label) {
  auto templates = generate_templates(g, cfg.templates, cfg.seed);
  return run_pipeline(g, instantiate(templates, cfg.per_template, cfg.perturbation, cfg.seed, cfg.fractions), cfg,
                      label);
}

PipelineResult run_pipeline(const DataGraph& g, WorkloadSplit split, const PipelineConfig& cfg,
                            const std::string& label) {
  if (split.train.empty() || split.test.empty()) throw ConfigError("workload needs training and test queries");
  PipelineResult out;
  out.split = std::move(split);
  auto train_set = prepare_instances(g, out.split.train, cfg.k, cfg.theta, cfg.threads);

  if (cfg.oracle.bo_iterations > 0) {
    std::size_t n = cfg.tune_queries == 0 ? out.split.train.size() : std::min(cfg.tune_queries, out.split.train.size());
    std::vector<GraphQuery> head(out.split.train.begin(), out.split.train.begin() + static_cast<std::ptrdiff_t>(n));
    auto tune_set = prepare_instances(g, head, cfg.k, cfg.theta, cfg.threads);
    out.weights = tune_weights(tune_set, cfg.oracle, &out.bo);
    spdlog::info("tuned weights ({:.4f}, {:.4f}, {:.4f}), plan value {:.4f}", out.weights.w[0], out.weights.w[1],
                 out.weights.w[2], out.bo.best_value);
  }

  auto plans = compute_plans(out.weights, train_set, cfg.oracle);
  out.corpus.k = cfg.k;
  out.corpus.theta = cfg.theta;
  out.corpus.weights = out.weights;
  std::size_t found = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    found += plans[i].has_value();
    out.corpus.records.push_back({out.split.train[i].id, plans[i]});
  }
  spdlog::info("oracle found {}/{} target plans", found, plans.size());

  out.dataset = build_exact_imitation(train_set, plans);
  out.exact = train(out.dataset, cfg.learner, {"exact", 1, cfg.seed, 0, 0});

  const Policy* l2p = &*out.exact;
  if (cfg.dagger_iterations > 0) {
    DaggerConfig dc;
    dc.iterations = cfg.dagger_iterations;
    dc.beta0 = cfg.beta0;
    dc.seed = cfg.seed;
    dc.learner = cfg.learner;
    dc.weights = out.weights;
    dc.oracle = cfg.oracle;
    dc.threads = cfg.threads;
    out.dagger = dagger(train_set, out.dataset, dc);
    auto validation = prepare_instances(g, out.split.validation, cfg.k, cfg.theta, cfg.threads);
    std::vector<const Policy*> candidates;
    for (const auto& p : out.dagger.policies) candidates.push_back(&p);
    out.selected = validation.empty() ? candidates.size() - 1
                                      : select_policy(candidates, validation, &out.validation, cfg.threads);
    l2p = &out.dagger.policies[out.selected];
  }

  std::vector<GraphQuery> test = out.split.test;
  if (cfg.test_queries > 0 && test.size() > cfg.test_queries) test.resize(cfg.test_queries);
  std::vector<MethodSpec> methods = {{"oracle", MethodSpec::Kind::kOracle, nullptr},
                                     {"random", MethodSpec::Kind::kRandom, nullptr},
                                     {"l2p-exact", MethodSpec::Kind::kPolicy, &*out.exact}};
  if (cfg.dagger_iterations > 0) methods.push_back({"l2p-dagger", MethodSpec::Kind::kPolicy, l2p});
  if (cfg.fetch_only) methods.push_back({"fetch-only", MethodSpec::Kind::kFetchOnly, l2p});
  ExperimentConfig ec;
  ec.k = cfg.k;
  ec.theta = cfg.theta;
  ec.repeats = cfg.repeats;
  ec.seed = cfg.seed;
  ec.weights = out.weights;
  ec.oracle = cfg.oracle;
  ec.threads = cfg.threads;
  out.report = run_experiment(g, test, methods, ec, label);
  return out;
}

TransferMatrix transfer_protocol(const std::vector<NamedGraph>& graphs, const PipelineConfig& cfg) {
  if (graphs.size() < 2) throw ConfigError("transfer needs at least two graphs");
  struct Source {
    std::string name;
    WorkloadSplit split;
    ImitationDataset data;
    HeuristicWeights weights;
  };
  std::vector<Source> sources;
  for (const auto& ng : graphs) {
    if (ng.graph == nullptr) throw ConfigError("transfer graph " + ng.name + " is missing");
    auto templates = generate_templates(*ng.graph, cfg.templates, cfg.seed);
    WorkloadSplit split = instantiate(templates, cfg.per_template, cfg.perturbation, cfg.seed, cfg.fractions);
    auto train_set = prepare_instances(*ng.graph, split.train, cfg.k, cfg.theta, cfg.threads);
    HeuristicWeights w;
    if (cfg.oracle.bo_iterations > 0) {
      std::size_t n = cfg.tune_queries == 0 ? split.train.size() : std::min(cfg.tune_queries, split.train.size());
      std::vector<GraphQuery> head(split.train.begin(), split.train.begin() + static_cast<std::ptrdiff_t>(n));
      auto tune_set = prepare_instances(*ng.graph, head, cfg.k, cfg.theta, cfg.threads);
      w = tune_weights(tune_set, cfg.oracle);
    }
    auto plans = compute_plans(w, train_set, cfg.oracle);
    sources.push_back({ng.name, std::move(split), build_exact_imitation(train_set, plans), w});
  }

  std::vector<std::pair<std::string, LearnedPolicy>> policies;
  ImitationDataset combined;
  for (const auto& s : sources) {
    policies.emplace_back(s.name, train(s.data, cfg.learner, {"exact", 1, cfg.seed, 0, 0}));
    combined.append(s.data);
  }
  policies.emplace_back("combined", train(combined, cfg.learner, {"exact", 1, cfg.seed, 0, 0}));

  TransferMatrix m;
  for (const auto& p : policies) m.train_sources.push_back(p.first);
  for (const auto& s : sources) m.test_graphs.push_back(s.name);
  for (const auto& p : policies) {
    for (std::size_t t = 0; t < sources.size(); ++t) {
      std::vector<GraphQuery> test = sources[t].split.test;
      if (cfg.test_queries > 0 && test.size() > cfg.test_queries) test.resize(cfg.test_queries);
      ExperimentConfig ec;
      ec.k = cfg.k;
      ec.theta = cfg.theta;
      ec.repeats = 1;
      ec.seed = cfg.seed;
      ec.weights = sources[t].weights;
      ec.oracle = cfg.oracle;
      ec.threads = cfg.threads;
      auto report = run_experiment(*graphs[t].graph, test, {{"l2p", MethodSpec::Kind::kPolicy, &p.second}}, ec,
                                   p.first + " -> " + sources[t].name);
      m.cells.push_back({p.first, sources[t].name, report.rows.back().speedup, report.rows.back().accuracy});
      m.reports.push_back(std::move(report));
    }
  }
  return m;
}

nlohmann::ordered_json transfer_to_json(const TransferMatrix& m) {
  nlohmann::ordered_json j;
  j["schema"] = "l2p-transfer/1";
  j["train_sources"] = m.train_sources;
  j["test_graphs"] = m.test_graphs;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    const auto& c = m.cells[i];
    cells.push_back({{"train", c.train}, {"test", c.test}, {"speedup", c.speedup}, {"accuracy", c.accuracy},
                     {"report", report_to_json(m.reports[i])}});
  }
  j["cells"] = std::move(cells);
  return j;
}

std::string format_transfer(const TransferMatrix& m) {
  std::ostringstream out;
  out << "# speedup / accuracy of each training source (rows) on each test graph (columns)\n";
  out << std::left << std::setw(14) << "train";
  for (const auto& t : m.test_graphs) out << std::right << std::setw(20) << t;
  out << "\n" << std::fixed;
  for (std::size_t r = 0; r < m.train_sources.size(); ++r) {
    out << std::left << std::setw(14) << m.train_sources[r];
    for (std::size_t c = 0; c < m.test_graphs.size(); ++c) {
      const auto& cell = m.cells[r * m.test_graphs.size() + c];
      std::ostringstream v;
      v << std::fixed << std::setprecision(2) << cell.speedup << " / " << std::setprecision(1)
        << cell.accuracy * 100.0 << "%";
      out << std::right << std::setw(20) << v.str();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace l2p
