#include <memory>

#include "bdc/gen.hpp"
#include "bdc/oracles.hpp"
#include "bdc/universal.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bdc;

namespace {

template <class P, class... Args>
std::vector<std::unique_ptr<P>> programs_of(int n, Args&&... args) {
  std::vector<std::unique_ptr<P>> ps;
  for (int v = 0; v < n; ++v) ps.push_back(std::make_unique<P>(args...));
  return ps;
}

sim::Metrics run_universal(std::vector<std::unique_ptr<universal::UniversalProgram>>& ps,
                           const CommGraph& g, const Labelling& l1, const Labelling& l2) {
  return test::run_uniform(ps, g, l1, l2, universal::universal_bootstrap(l1));
}

}  // namespace

TEST_CASE("no changes: outputs recomputed, rounds bounded by the tree build") {
  for (int n : {4, 10, 16}) {
    CommGraph g = test::path_graph(n);
    Labelling l = test::constant_labelling(g, LabelKind::Bit, 1);
    auto ps = programs_of<universal::UniversalProgram>(n, universal::apsp_solver());
    auto m = run_universal(ps, g, l, l);
    CHECK(m.rounds <= 4 * g.diameter() + 8);
    auto dist = oracle::subgraph_apsp(l);
    for (int v = 0; v < n; ++v)
      CHECK(ps[v]->output() ==
            std::vector<int64_t>(dist[v].begin(), dist[v].end()));
  }
}

TEST_CASE("hop distances track a small batch of label changes") {
  CommGraph g = gen::make_graph("gnm", 8, 3);
  Labelling l1 = gen::make_labelling(g, LabelKind::Bit, 3);
  Labelling cursor = l1;
  auto batches = gen::make_batches(cursor, "flip", 2, 1, 9);
  Labelling l2 = apply_batch(l1, batches[0]).after;
  auto ps = programs_of<universal::UniversalProgram>(8, universal::apsp_solver());
  run_universal(ps, g, l1, l2);
  auto dist = oracle::subgraph_apsp(l2);
  for (int v = 0; v < 8; ++v)
    CHECK(ps[v]->output() == std::vector<int64_t>(dist[v].begin(), dist[v].end()));
}

TEST_CASE("component diameter of an embedded path inside a clique") {
  CommGraph g = test::clique_graph(8);
  Labelling l1 = test::constant_labelling(g, LabelKind::Bit, 0);
  Labelling l2 = l1;
  for (NodeId v = 0; v < 5; ++v) l2.set(EdgeId::of(v, v + 1), 1);
  auto ps = programs_of<universal::UniversalProgram>(8, universal::diameter_solver());
  run_universal(ps, g, l1, l2);
  for (NodeId v = 0; v <= 5; ++v) CHECK(ps[v]->output() == std::vector<int64_t>{5});
  for (NodeId v = 6; v < 8; ++v) CHECK(ps[v]->output() == std::vector<int64_t>{0});
}

TEST_CASE("auxiliary state of the full-copy program is the whole labelling") {
  CommGraph g = test::cycle_graph(4);
  Labelling l = test::constant_labelling(g, LabelKind::Bit, 1);
  auto ps = programs_of<universal::UniversalProgram>(4, universal::component_edges_solver());
  auto m = run_universal(ps, g, l, l);
  CHECK(m.max_aux_bits >= 4);  // one bit per edge at least
  for (int v = 0; v < 4; ++v) CHECK(ps[v]->output() == std::vector<int64_t>{4});
}

namespace {

sim::Metrics run_local(std::vector<std::unique_ptr<universal::Local1Program>>& ps,
                       const CommGraph& g, const Labelling& l1, const Labelling& l2, int radius) {
  return test::run_uniform(ps, g, l1, l2, universal::local1_bootstrap(l1, radius));
}

}  // namespace

TEST_CASE("radius-one program rounds are independent of the diameter") {
  int rounds_small = 0, rounds_large = 0;
  for (int n : {8, 64}) {
    CommGraph g = test::path_graph(n);
    Labelling l1 = test::constant_labelling(g, LabelKind::Bit, 0);
    Labelling l2 = l1;
    l2.set(EdgeId::of(0, 1), 1);  // change far from the path's middle
    auto ps = programs_of<universal::Local1Program>(n, 1, universal::degree_solver());
    auto m = run_local(ps, g, l1, l2, 1);
    (n == 8 ? rounds_small : rounds_large) = m.rounds;
  }
  CHECK(rounds_small == rounds_large);
  CHECK(rounds_large <= 6);
}

TEST_CASE("labelled degree reacts exactly at the endpoints of a flip") {
  CommGraph g = gen::make_graph("gnm", 12, 5);
  Labelling l1 = gen::make_labelling(g, LabelKind::Bit, 5);
  EdgeId flipped = g.edges()[3];
  Labelling l2 = l1;
  l2.set(flipped, 1 - l1.at(flipped));

  auto degree_of = [&](const Labelling& l, NodeId v) {
    int64_t d = 0;
    for (const auto& e : g.edges())
      if ((e.u == v || e.v == v) && l.at(e) == 1) ++d;
    return d;
  };

  auto ps = programs_of<universal::Local1Program>(12, 1, universal::degree_solver());
  run_local(ps, g, l1, l2, 1);
  for (NodeId v = 0; v < 12; ++v) {
    CHECK(ps[v]->output() == std::vector<int64_t>{degree_of(l2, v)});
    bool endpoint = v == flipped.u || v == flipped.v;
    if (!endpoint) CHECK(degree_of(l1, v) == degree_of(l2, v));
  }
}

TEST_CASE("radius-two edge counts match the oracle after a batch") {
  CommGraph g = gen::make_graph("gnm", 10, 8);
  Labelling l1 = gen::make_labelling(g, LabelKind::Bit, 8);
  Labelling cursor = l1;
  auto batches = gen::make_batches(cursor, "flip", 3, 1, 2);
  Labelling l2 = apply_batch(l1, batches[0]).after;
  auto ps =
      programs_of<universal::Local1Program>(10, 2, universal::radius_edge_count_solver(2));
  run_local(ps, g, l1, l2, 2);
  for (NodeId v = 0; v < 10; ++v)
    CHECK(ps[v]->output() == std::vector<int64_t>{oracle::edges_within_radius(l2, v, 2)});
}
