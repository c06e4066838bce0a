#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdc/experiment.hpp"
#include "bdc/gen.hpp"
#include "bdc/graph.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch-dynamic distributed graph algorithm simulator"};

  std::string scenario;
  std::string graph_path, gen_spec;
  std::string batches_path, gen_batches_spec;
  std::string labels_path;
  std::string bandwidth = "default";
  std::string oracle = "on";
  std::string metrics_path;
  std::string transcript_path;
  bool summary = false;

  app.add_option("--scenario", scenario,
                 "mst|cliques|local1|universal-apsp|universal-diameter|"
                 "cc-universal|cc-matmul|cc-triangles")
      ->required();
  auto* opt_graph = app.add_option("--graph", graph_path, "graph file (\"n m\" then edges)");
  auto* opt_gen = app.add_option("--gen", gen_spec, "generate graph: KIND,n,seed");
  opt_graph->excludes(opt_gen);
  opt_gen->excludes(opt_graph);
  auto* opt_batches = app.add_option("--batches", batches_path, "batch trace file");
  auto* opt_gen_b =
      app.add_option("--gen-batches", gen_batches_spec, "generate batches: KIND,alpha,count,seed");
  opt_batches->excludes(opt_gen_b);
  opt_gen_b->excludes(opt_batches);
  app.add_option("--labels", labels_path, "initial labelling file (default: generated)");
  app.add_option("--bandwidth", bandwidth, "default|strict")
      ->check(CLI::IsMember({"default", "strict"}));
  app.add_option("--oracle", oracle, "on|off")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--metrics", metrics_path, "metrics CSV output path")->required();
  app.add_option("--transcript", transcript_path, "message transcript output path");
  app.add_flag("--summary", summary, "append fitted round constants to the CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (graph_path.empty() == gen_spec.empty())
      throw bdc::Error(bdc::Err::InfeasibleParams, "provide exactly one of --graph / --gen");
    if (batches_path.empty() == gen_batches_spec.empty())
      throw bdc::Error(bdc::Err::InfeasibleParams,
                       "provide exactly one of --batches / --gen-batches");

    bdc::CommGraph g;
    uint64_t label_seed = 1;
    if (!gen_spec.empty()) {
      auto parts = split_commas(gen_spec);
      if (parts.size() != 3)
        throw bdc::Error(bdc::Err::InfeasibleParams, "--gen expects KIND,n,seed");
      g = bdc::gen::make_graph(parts[0], std::stoi(parts[1]), std::stoull(parts[2]));
      label_seed = std::stoull(parts[2]);
    } else {
      std::ifstream in(graph_path);
      if (!in) throw bdc::Error(bdc::Err::InfeasibleParams, "cannot open " + graph_path);
      g = bdc::load_graph(in);
    }

    bdc::LabelKind kind = bdc::experiment::scenario_label_kind(scenario);
    bdc::Labelling initial;
    if (!labels_path.empty()) {
      std::ifstream in(labels_path);
      if (!in) throw bdc::Error(bdc::Err::InfeasibleParams, "cannot open " + labels_path);
      initial = bdc::load_labelling(in, g, kind);
    } else {
      initial = bdc::gen::make_labelling(g, kind, label_seed);
    }

    std::vector<bdc::BatchUpdate> batches;
    if (!gen_batches_spec.empty()) {
      auto parts = split_commas(gen_batches_spec);
      if (parts.size() != 4)
        throw bdc::Error(bdc::Err::InfeasibleParams, "--gen-batches expects KIND,alpha,count,seed");
      bdc::Labelling cursor = initial;
      batches = bdc::gen::make_batches(cursor, parts[0], std::stoi(parts[1]), std::stoi(parts[2]),
                                       std::stoull(parts[3]));
    } else {
      std::ifstream in(batches_path);
      if (!in) throw bdc::Error(bdc::Err::InfeasibleParams, "cannot open " + batches_path);
      batches = bdc::load_batch_trace(in);
    }

    std::ofstream transcript;
    bdc::experiment::Experiment e;
    e.scenario = scenario;
    e.graph = &g;
    e.initial = std::move(initial);
    e.batches = std::move(batches);
    e.oracle = (oracle == "on");
    if (bandwidth == "strict") {
      e.engine.mode = bdc::sim::BandwidthMode::Strict;
      e.engine.capacity_words = 32;
    }
    if (!transcript_path.empty()) {
      transcript.open(transcript_path);
      if (!transcript)
        throw bdc::Error(bdc::Err::InfeasibleParams, "cannot open " + transcript_path);
      e.engine.transcript = &transcript;
    }

    std::ofstream csv(metrics_path);
    if (!csv) throw bdc::Error(bdc::Err::InfeasibleParams, "cannot open " + metrics_path);
    auto result = bdc::experiment::run_experiment(e, &csv, summary);
    if (!result.all_ok) {
      std::cerr << "oracle mismatch detected\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
