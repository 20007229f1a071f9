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


// l2p: command-line front end for graph ingestion, workload generation, TA,
// oracle planning, policy training and evaluation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "l2p/common/errors.h"
#include "l2p/eval/pipeline.h"
#include "l2p/graph/graph_io.h"
#include "l2p/plan/executor.h"
#include "l2p/query/query_io.h"

namespace fs = std::filesystem;
using namespace l2p;

namespace {

HeuristicWeights parse_weights(const std::string& s) {
  HeuristicWeights w;
  std::stringstream ss(s);
  std::string item;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::getline(ss, item, ',')) throw ConfigError("weights need three comma-separated values");
    w.w[i] = std::stod(item);
  }
  if (std::getline(ss, item, ',')) throw ConfigError("weights need three comma-separated values");
  w.validate();
  return w;
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << text;
}

void write_json(const fs::path& file, const nlohmann::ordered_json& j) { write_text(file, j.dump(2) + "\n"); }

std::string print_answers(const std::vector<CompleteMatch>& answers) {
  std::ostringstream out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    out << "  #" << i + 1 << " score " << format_score(answers[i].score) << " mapping";
    for (NodeId v : answers[i].mapping) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_logger_mt("l2p"));
  CLI::App app{"Learning-to-plan top-k graph query engine"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load TSV nodes/edges and write a binary snapshot");
  std::string nodes_file, edges_file, out_file;
  ingest->add_option("--nodes", nodes_file, "Node file: id<TAB>label")->required();
  ingest->add_option("--edges", edges_file, "Edge file: src<TAB>label<TAB>dst")->required();
  ingest->add_option("--out", out_file, "Snapshot path")->required();

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "Generate a synthetic Zipf-labeled graph");
  GraphGenConfig gcfg;
  std::string tsv_dir;
  gen_graph->add_option("--nodes", gcfg.nodes, "Node count")->capture_default_str();
  gen_graph->add_option("--edges", gcfg.edges, "Edge count")->capture_default_str();
  gen_graph->add_option("--node-vocab", gcfg.node_vocab, "Distinct node labels")->capture_default_str();
  gen_graph->add_option("--edge-vocab", gcfg.edge_vocab, "Distinct edge labels")->capture_default_str();
  gen_graph->add_option("--exponent", gcfg.exponent, "Zipf exponent")->capture_default_str();
  gen_graph->add_option("--seed", gcfg.seed, "Seed")->capture_default_str();
  gen_graph->add_option("--out", out_file, "Snapshot path")->required();
  gen_graph->add_option("--tsv", tsv_dir, "Also write nodes.tsv/edges.tsv into this directory");

  // gen-queries
  auto* gen_queries = app.add_subcommand("gen-queries", "Mine query templates and write train/validation/test splits");
  std::string graph_file, out_dir;
  std::size_t templates = 20, per_template = 20;
  double perturbation = 0.3;
  std::uint64_t seed = 1;
  double train_frac = 0.5, val_frac = 0.2;
  gen_queries->add_option("--graph", graph_file, "Graph snapshot or TSV directory")->required();
  gen_queries->add_option("--templates", templates, "Template count")->capture_default_str();
  gen_queries->add_option("--per-template", per_template, "Queries per template")->capture_default_str();
  gen_queries->add_option("--perturbation", perturbation, "Label edit probability")->capture_default_str();
  gen_queries->add_option("--train", train_frac, "Training fraction")->capture_default_str();
  gen_queries->add_option("--validation", val_frac, "Validation fraction")->capture_default_str();
  gen_queries->add_option("--seed", seed, "Seed")->capture_default_str();
  gen_queries->add_option("--out-dir", out_dir, "Output directory")->required();

  // sample-ff
  auto* sample_ff = app.add_subcommand("sample-ff", "Forest-fire node sample as an induced subgraph");
  double fraction = 0.5, forward = 0.7;
  sample_ff->add_option("--graph", graph_file, "Graph snapshot or TSV directory")->required();
  sample_ff->add_option("--fraction", fraction, "Fraction of nodes to keep")->capture_default_str();
  sample_ff->add_option("--forward", forward, "Forward burning probability")->capture_default_str();
  sample_ff->add_option("--seed", seed, "Seed")->capture_default_str();
  sample_ff->add_option("--out", out_file, "Snapshot path")->required();

  // ta
  auto* ta = app.add_subcommand("ta", "Run the TA baseline on a query file");
  std::string queries_file, trace_dir;
  int k = 3;
  double theta = 0.5;
  ta->add_option("--graph", graph_file, "Graph snapshot or TSV directory")->required();
  ta->add_option("--queries", queries_file, "Query JSON file")->required();
  ta->add_option("--k", k, "Answers per query")->capture_default_str();
  ta->add_option("--theta", theta, "Node similarity threshold")->capture_default_str();
  ta->add_option("--trace-dir", trace_dir, "Write one trace log per query here");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Tune heuristic weights and compute target plans");
  OracleConfig ocfg;
  std::size_t tune_queries = 50;
  std::string weights_str;
  oracle->add_option("--graph", graph_file, "Graph snapshot or TSV directory")->required();
  oracle->add_option("--queries", queries_file, "Training query JSON file")->required();
  oracle->add_option("--k", k, "Answers per query")->capture_default_str();
  oracle->add_option("--theta", theta, "Node similarity threshold")->capture_default_str();
  oracle->add_option("--beam", ocfg.beam_width, "Beam width")->capture_default_str();
  oracle->add_option("--depth-factor", ocfg.depth_factor, "Depth budget in TA steps")->capture_default_str();
  oracle->add_option("--bo-iters", ocfg.bo_iterations, "Bayesian optimization evaluations (0 = no tuning)")
      ->capture_default_str();
  oracle->add_option("--tune-queries", tune_queries, "Queries used for tuning (0 = all)")->capture_default_str();
  oracle->add_option("--weights", weights_str, "Fixed weights w1,w2,w3 instead of tuning");
  oracle->add_option("--seed", ocfg.seed, "Seed")->capture_default_str();
  oracle->add_option("--out", out_file, "Plan corpus path")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Learn a policy from a plan corpus");
  std::string plans_file, mode = "exact", validation_file;
  std::size_t iters = 5;
  double beta = 0.8;
  LearnerConfig lcfg;
  train_cmd->add_option("--plans", plans_file, "Plan corpus")->required();
  train_cmd->add_option("--graph", graph_file, "Graph snapshot or TSV directory")->required();
  train_cmd->add_option("--queries", queries_file, "Training queries the plans were computed on")->required();
  train_cmd->add_option("--mode", mode, "exact or dagger")->check(CLI::IsMember({"exact", "dagger"}))
      ->capture_default_str();
  train_cmd->add_option("--iters", iters, "DAgger iterations")->capture_default_str();
  train_cmd->add_option("--beta", beta, "DAgger mixture base")->capture_default_str();
  train_cmd->add_option("--validation", validation_file, "Validation queries for DAgger policy selection");
  train_cmd->add_option("--rounds", lcfg.select.rounds, "Boosting rounds")->capture_default_str();
  train_cmd->add_option("--depth", lcfg.select.max_depth, "Tree depth")->capture_default_str();
  train_cmd->add_option("--learning-rate", lcfg.select.learning_rate, "Shrinkage")->capture_default_str();
  train_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  train_cmd->add_option("--out", out_file, "Policy path")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Compare methods on a query file");
  std::string policy_file, methods_str = "ta,oracle,random,l2p", table_file;
  std::size_t repeats = 3;
  bool wall_clock = false;
  eval->add_option("--graph", graph_file, "Graph snapshot or TSV directory")->required();
  eval->add_option("--queries", queries_file, "Test query JSON file")->required();
  eval->add_option("--k", k, "Answers per query")->capture_default_str();
  eval->add_option("--theta", theta, "Node similarity threshold")->capture_default_str();
  eval->add_option("--policy", policy_file, "Learned policy (for l2p and fetch-only)");
  eval->add_option("--methods", methods_str, "Comma-separated: ta,oracle,random,l2p,fetch-only")->capture_default_str();
  eval->add_option("--repeats", repeats, "Runs of stochastic methods")->capture_default_str();
  eval->add_option("--weights", weights_str, "Oracle weights w1,w2,w3")->default_str("1,1,1");
  eval->add_option("--seed", seed, "Seed")->capture_default_str();
  eval->add_flag("--wall-clock", wall_clock, "Record wall-clock times (reports stop being reproducible)");
  eval->add_option("--out", out_file, "Report JSON path")->required();
  eval->add_option("--table", table_file, "Also write the text tables here");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Generate, plan, train and evaluate end to end");
  PipelineConfig pcfg;
  experiment->add_option("--graph", graph_file, "Graph snapshot or TSV directory (generated when omitted)");
  experiment->add_option("--seed", pcfg.seed, "Seed for every stage")->capture_default_str();
  experiment->add_option("--templates", pcfg.templates, "Template count")->capture_default_str();
  experiment->add_option("--per-template", pcfg.per_template, "Queries per template")->capture_default_str();
  experiment->add_option("--perturbation", pcfg.perturbation, "Label edit probability")->capture_default_str();
  experiment->add_option("--test-queries", pcfg.test_queries, "Test queries evaluated (0 = all)")->capture_default_str();
  experiment->add_option("--k", pcfg.k, "Answers per query")->capture_default_str();
  experiment->add_option("--bo-iters", pcfg.oracle.bo_iterations, "Bayesian optimization evaluations")
      ->capture_default_str();
  experiment->add_option("--tune-queries", pcfg.tune_queries, "Queries used for tuning")->capture_default_str();
  experiment->add_option("--iters", pcfg.dagger_iterations, "DAgger iterations (0 = none)")->capture_default_str();
  experiment->add_option("--beta", pcfg.beta0, "DAgger mixture base")->capture_default_str();
  experiment->add_option("--repeats", pcfg.repeats, "Runs of stochastic methods")->capture_default_str();
  experiment->add_option("--out-dir", out_dir, "Output directory")->required();

  // transfer
  auto* transfer = app.add_subcommand("transfer", "Cross-graph policy transfer matrix");
  std::vector<std::string> graph_files, graph_names;
  PipelineConfig tcfg;
  transfer->add_option("--graphs", graph_files, "Two or more graphs")->required()->expected(2, -1);
  transfer->add_option("--names", graph_names, "Display names (default: file stems)");
  transfer->add_option("--seed", tcfg.seed, "Seed")->capture_default_str();
  transfer->add_option("--templates", tcfg.templates, "Template count")->capture_default_str();
  transfer->add_option("--per-template", tcfg.per_template, "Queries per template")->capture_default_str();
  transfer->add_option("--k", tcfg.k, "Answers per query")->capture_default_str();
  transfer->add_option("--bo-iters", tcfg.oracle.bo_iterations, "Bayesian optimization evaluations")
      ->capture_default_str();
  transfer->add_option("--out", out_file, "Matrix JSON path")->required();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*ingest) {
      DataGraph g = load_graph(nodes_file, edges_file);
      save_snapshot(g, out_file);
      std::cout << "wrote " << out_file << ": " << g.num_nodes() << " nodes, " << g.num_edges() << " edges\n";
    } else if (*gen_graph) {
      DataGraph g = generate_graph(gcfg);
      save_snapshot(g, out_file);
      if (!tsv_dir.empty()) {
        fs::create_directories(tsv_dir);
        write_graph_tsv(g, fs::path(tsv_dir) / "nodes.tsv", fs::path(tsv_dir) / "edges.tsv");
      }
      std::cout << "wrote " << out_file << ": " << g.num_nodes() << " nodes, " << g.num_edges() << " edges\n";
    } else if (*gen_queries) {
      DataGraph g = load_any_graph(graph_file);
      auto specs = generate_templates(g, templates, seed);
      WorkloadSplit split = instantiate(specs, per_template, perturbation, seed, {train_frac, val_frac});
      save_workload(split, out_dir, seed);
      std::cout << "wrote " << split.train.size() << "/" << split.validation.size() << "/" << split.test.size()
                << " queries to " << out_dir << "\n";
    } else if (*sample_ff) {
      DataGraph g = load_any_graph(graph_file);
      DataGraph s = forest_fire_sample(g, fraction, seed, forward);
      save_snapshot(s, out_file);
      std::cout << "wrote " << out_file << ": " << s.num_nodes() << " nodes, " << s.num_edges() << " edges\n";
    } else if (*ta) {
      DataGraph g = load_any_graph(graph_file);
      auto queries = load_queries(queries_file);
      if (!trace_dir.empty()) fs::create_directories(trace_dir);
      for (const auto& q : queries) {
        QueryContext ctx(g, q, k, theta);
        PlanTrace t = run_ta(ctx);
        std::cout << q.id << ": cost " << t.cost << ", " << t.fetches << " fetches, " << t.answers.size()
                  << " answers\n"
                  << print_answers(t.answers);
        if (!trace_dir.empty()) write_text(fs::path(trace_dir) / (q.id + ".log"), trace_log(t));
      }
    } else if (*oracle) {
      DataGraph g = load_any_graph(graph_file);
      auto queries = load_queries(queries_file);
      auto instances = prepare_instances(g, queries, k, theta);
      PlanCorpus corpus;
      corpus.k = k;
      corpus.theta = theta;
      if (!weights_str.empty()) {
        corpus.weights = parse_weights(weights_str);
      } else if (ocfg.bo_iterations > 0) {
        std::size_t n = tune_queries == 0 ? queries.size() : std::min(tune_queries, queries.size());
        std::vector<GraphQuery> head(queries.begin(), queries.begin() + static_cast<std::ptrdiff_t>(n));
        auto tune_set = prepare_instances(g, head, k, theta);
        corpus.weights = tune_weights(tune_set, ocfg);
      }
      auto plans = compute_plans(corpus.weights, instances, ocfg);
      std::size_t found = 0;
      for (std::size_t i = 0; i < plans.size(); ++i) {
        found += plans[i].has_value();
        corpus.records.push_back({queries[i].id, plans[i]});
      }
      write_plan_corpus(corpus, fs::path(out_file));
      std::cout << "weights " << corpus.weights.w[0] << "," << corpus.weights.w[1] << "," << corpus.weights.w[2]
                << "; found " << found << "/" << plans.size() << " plans; mean quality "
                << plan_value(corpus.weights, instances, ocfg) << "\n";
    } else if (*train_cmd) {
      DataGraph g = load_any_graph(graph_file);
      PlanCorpus corpus = read_plan_corpus(fs::path(plans_file));
      auto queries = load_queries(queries_file);
      auto instances = prepare_instances(g, queries, corpus.k, corpus.theta);
      std::vector<std::optional<TargetPlan>> plans;
      for (const auto& r : corpus.records) plans.push_back(r.plan);
      ImitationDataset data = build_exact_imitation(instances, plans);
      lcfg.fetch.rounds = lcfg.select.rounds;
      lcfg.fetch.max_depth = lcfg.select.max_depth;
      lcfg.fetch.learning_rate = lcfg.select.learning_rate;
      lcfg.select.seed = lcfg.fetch.seed = seed;
      if (mode == "exact") {
        LearnedPolicy p = train(data, lcfg, {"exact", 1, seed, 0, 0});
        p.save(fs::path(out_file));
        std::cout << "trained on " << data.select.size() << " selection and " << data.fetch.size()
                  << " fetch examples\n";
      } else {
        DaggerConfig dc;
        dc.iterations = iters;
        dc.beta0 = beta;
        dc.seed = seed;
        dc.learner = lcfg;
        dc.weights = corpus.weights;
        DaggerResult r = dagger(instances, data, dc);
        std::size_t pick = r.policies.size() - 1;
        if (!validation_file.empty()) {
          auto validation = prepare_instances(g, load_queries(validation_file), corpus.k, corpus.theta);
          std::vector<const Policy*> candidates;
          for (const auto& p : r.policies) candidates.push_back(&p);
          std::vector<PolicyScore> scores;
          pick = select_policy(candidates, validation, &scores);
          for (std::size_t i = 0; i < scores.size(); ++i) {
            std::cout << "iteration " << i + 1 << ": validation accuracy " << scores[i].accuracy << ", speedup "
                      << scores[i].speedup << "\n";
          }
        }
        r.policies[pick].save(fs::path(out_file));
        std::cout << "saved iteration " << pick + 1 << " of " << r.policies.size() << "\n";
      }
    } else if (*eval) {
      DataGraph g = load_any_graph(graph_file);
      auto queries = load_queries(queries_file);
      std::optional<LearnedPolicy> policy;
      if (!policy_file.empty()) policy = LearnedPolicy::load(fs::path(policy_file));
      std::vector<MethodSpec> methods;
      for (const auto& name : parse_method_list(methods_str)) {
        if (name == "ta") continue;
        if (name == "oracle") methods.push_back({name, MethodSpec::Kind::kOracle, nullptr});
        else if (name == "random") methods.push_back({name, MethodSpec::Kind::kRandom, nullptr});
        else {
          if (!policy) throw ConfigError("method " + name + " needs --policy");
          auto kind = name == "fetch-only" ? MethodSpec::Kind::kFetchOnly : MethodSpec::Kind::kPolicy;
          methods.push_back({name, kind, &*policy});
        }
      }
      ExperimentConfig ec;
      ec.k = k;
      ec.theta = theta;
      ec.repeats = repeats;
      ec.seed = seed;
      ec.weights = parse_weights(weights_str.empty() ? "1,1,1" : weights_str);
      ec.wall_clock = wall_clock;
      ExperimentReport report = run_experiment(g, queries, methods, ec, fs::path(queries_file).stem().string());
      write_json(out_file, report_to_json(report));
      std::string table = format_report(report);
      if (!table_file.empty()) write_text(table_file, table);
      std::cout << table;
    } else if (*experiment) {
      DataGraph g = graph_file.empty() ? generate_graph(GraphGenConfig{.seed = pcfg.seed}) : load_any_graph(graph_file);
      PipelineResult r = run_pipeline(g, pcfg, "experiment");
      fs::create_directories(out_dir);
      fs::path dir(out_dir);
      save_workload(r.split, dir / "workload", pcfg.seed);
      write_plan_corpus(r.corpus, dir / "plans.log");
      r.exact->save(dir / "policy-exact.bin");
      if (!r.dagger.policies.empty()) r.dagger.policies[r.selected].save(dir / "policy-dagger.bin");
      write_json(dir / "report.json", report_to_json(r.report));
      std::string table = format_report(r.report);
      write_text(dir / "report.txt", table);
      std::cout << table;
    } else if (*transfer) {
      if (!graph_names.empty() && graph_names.size() != graph_files.size()) {
        throw ConfigError("--names must match --graphs");
      }
      std::vector<DataGraph> graphs;
      for (const auto& f : graph_files) graphs.push_back(load_any_graph(f));
      std::vector<NamedGraph> named;
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        named.push_back({graph_names.empty() ? fs::path(graph_files[i]).stem().string() : graph_names[i], &graphs[i]});
      }
      TransferMatrix m = transfer_protocol(named, tcfg);
      write_json(out_file, transfer_to_json(m));
      std::cout << format_transfer(m);
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
