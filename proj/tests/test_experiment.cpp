#include <cmath>
#include <sstream>

#include "bdc/experiment.hpp"
#include "bdc/gen.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bdc;
using experiment::Experiment;

namespace {

Experiment mst_experiment(const CommGraph& g, uint64_t seed, int alpha, int count) {
  Experiment e;
  e.scenario = "mst";
  e.graph = &g;
  e.initial = gen::make_labelling(g, LabelKind::Weight, seed);
  Labelling cursor = e.initial;
  e.batches = gen::make_batches(cursor, "weight", alpha, count, seed + 1);
  return e;
}

}  // namespace

TEST_CASE("scenario input requirements") {
  CHECK(experiment::scenario_label_kind("mst") == LabelKind::Weight);
  CHECK(experiment::scenario_label_kind("cc-matmul") == LabelKind::Weight);
  CHECK(experiment::scenario_label_kind("cliques") == LabelKind::Bit);
  CHECK(experiment::scenario_label_kind("universal-apsp") == LabelKind::Bit);
  CHECK(experiment::scenario_label_kind("cc-triangles") == LabelKind::Bit);
  CHECK(experiment::scenario_needs_clique("cc-universal"));
  CHECK(experiment::scenario_needs_clique("cc-matmul"));
  CHECK(experiment::scenario_needs_clique("cc-triangles"));
  CHECK_FALSE(experiment::scenario_needs_clique("mst"));
  CHECK_FALSE(experiment::scenario_needs_clique("cliques"));
  CHECK_THROWS_AS(experiment::scenario_label_kind("unknown"), Error);
}

TEST_CASE("oracle-checked run reports every batch as correct") {
  CommGraph g = gen::make_graph("gnm", 10, 4);
  Experiment e = mst_experiment(g, 4, 3, 5);
  auto result = experiment::run_experiment(e);
  CHECK(result.all_ok);
  REQUIRE(result.rows.size() == 5);
  for (const auto& row : result.rows) {
    CHECK(row.alpha == 3);
    REQUIRE(row.oracle_ok.has_value());
    CHECK(*row.oracle_ok);
    CHECK(row.rounds > 0);
    CHECK(row.max_aux_bits > 0);
  }
}

TEST_CASE("csv output carries the fixed header and one row per batch") {
  CommGraph g = gen::make_graph("gnm", 8, 1);
  Experiment e = mst_experiment(g, 1, 2, 3);
  std::ostringstream csv;
  experiment::run_experiment(e, &csv, true);
  std::istringstream lines(csv.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "batch_index,alpha,rounds,messages,words,max_aux_bits,oracle_ok");
  int rows = 0, comments = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("# fit", 0) == 0)
      ++comments;
    else
      ++rows;
  }
  CHECK(rows == 3);
  CHECK(comments == 2);
}

TEST_CASE("disabling the oracle leaves the column unclaimed") {
  CommGraph g = gen::make_graph("gnm", 8, 2);
  Experiment e = mst_experiment(g, 2, 2, 2);
  e.oracle = false;
  std::ostringstream csv;
  auto result = experiment::run_experiment(e, &csv);
  CHECK(result.all_ok);
  for (const auto& row : result.rows) CHECK_FALSE(row.oracle_ok.has_value());
  CHECK(csv.str().find(",-") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  CommGraph g = gen::make_graph("gnm", 12, 7);
  auto once = [&] {
    Experiment e = mst_experiment(g, 7, 4, 6);
    std::ostringstream csv;
    experiment::run_experiment(e, &csv, true);
    return csv.str();
  };
  std::string a = once();
  CHECK(a == once());
  CHECK_FALSE(a.empty());
}

TEST_CASE("label kind mismatches are rejected up front") {
  CommGraph g = gen::make_graph("gnm", 8, 3);
  Experiment e;
  e.scenario = "mst";
  e.graph = &g;
  e.initial = gen::make_labelling(g, LabelKind::Bit, 3);  // wrong kind for mst
  try {
    experiment::run_experiment(e);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == Err::InfeasibleParams);
  }
}

TEST_CASE("clique-resident scenarios refuse sparse graphs") {
  CommGraph g = gen::make_graph("cycle", 8, 0);
  Experiment e;
  e.scenario = "cc-universal";
  e.graph = &g;
  e.initial = gen::make_labelling(g, LabelKind::Bit, 1);
  try {
    experiment::run_experiment(e);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == Err::NotAClique);
  }
}

TEST_CASE("every scenario passes its oracle on a small clique") {
  CommGraph g = gen::make_graph("clique", 10, 0);
  for (const char* scenario : {"mst", "cliques", "local1", "universal-apsp",
                               "universal-diameter", "cc-universal", "cc-matmul",
                               "cc-triangles"}) {
    Experiment e;
    e.scenario = scenario;
    e.graph = &g;
    LabelKind kind = experiment::scenario_label_kind(scenario);
    e.initial = gen::make_labelling(g, kind, 5);
    Labelling cursor = e.initial;
    e.batches =
        gen::make_batches(cursor, kind == LabelKind::Weight ? "weight" : "flip", 4, 3, 8);
    auto result = experiment::run_experiment(e);
    INFO("scenario: ", scenario);
    CHECK(result.all_ok);
  }
}

TEST_CASE("least-squares helpers recover planted coefficients") {
  std::vector<double> xs{1, 2, 4, 8, 16};
  std::vector<double> lin, pow;
  for (double x : xs) {
    lin.push_back(3 * x + 5);
    pow.push_back(2 * std::sqrt(x));
  }
  auto f = experiment::fit_linear(xs, lin);
  CHECK(f.slope == doctest::Approx(3.0));
  CHECK(f.intercept == doctest::Approx(5.0));
  CHECK(experiment::fit_power_exponent(xs, pow) == doctest::Approx(0.5));
}
