#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bdc/graph.hpp"
#include "bdc/sim.hpp"

namespace bdc::experiment {

// One metrics row per batch.
struct BatchRow {
  int batch_index = 0;
  int64_t alpha = 0;
  int rounds = 0;
  int64_t messages = 0;
  int64_t words = 0;
  int64_t max_aux_bits = 0;
  std::optional<bool> oracle_ok;           // empty when oracle checking is off
  std::map<std::string, int> phases;       // phase completion rounds
};

struct ExperimentResult {
  std::vector<BatchRow> rows;
  bool all_ok = true;  // false iff any oracle check failed
};

struct Experiment {
  std::string scenario;  // mst | cliques | local1 | universal-apsp | universal-diameter |
                         // cc-universal | cc-matmul | cc-triangles
  const CommGraph* graph = nullptr;
  Labelling initial;  // kind must match scenario_label_kind(scenario)
  std::vector<BatchUpdate> batches;
  sim::EngineConfig engine;
  bool oracle = true;
};

LabelKind scenario_label_kind(const std::string& scenario);
bool scenario_needs_clique(const std::string& scenario);

// Runs the batch sequence, appends CSV rows (with header) to csv if non-null,
// then the fitted-constant comment lines if summary is set.
ExperimentResult run_experiment(const Experiment& e, std::ostream* csv = nullptr,
                                bool summary = false);

// Least-squares helpers shared with the acceptance tests.
struct LinearFit {
  double slope = 0;
  double intercept = 0;
};
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);
// Slope of log(y) vs log(x); the fitted exponent of y ~ x^e.
double fit_power_exponent(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace bdc::experiment
