#include <sstream>

#include "bdc/gen.hpp"
#include "bdc/graph.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bdc;

TEST_CASE("smallest connected graph") {
  CommGraph g = test::graph_of(2, {{0, 1}});
  CHECK(g.n() == 2);
  CHECK(g.m() == 1);
  CHECK(g.diameter() == 1);
  CHECK(g.is_clique());
}

TEST_CASE("four-cycle has diameter 2") {
  CommGraph g = test::cycle_graph(4);
  CHECK(g.diameter() == 2);
  CHECK(g.m() == 4);
  CHECK_FALSE(g.is_clique());
}

TEST_CASE("disconnected input rejected") {
  CHECK_THROWS_AS(test::graph_of(3, {{0, 1}}), Error);
}

TEST_CASE("self loops and duplicate edges rejected") {
  CHECK_THROWS_AS(EdgeId::of(2, 2), Error);
  CHECK_THROWS_AS(test::graph_of(2, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("edge ids are canonical and ordered") {
  EdgeId e = EdgeId::of(5, 2);
  CHECK(e.u == 2);
  CHECK(e.v == 5);
  CHECK(EdgeId::of(1, 2) < EdgeId::of(1, 3));
  CHECK(EdgeId::of(1, 9) < EdgeId::of(2, 3));
}

TEST_CASE("single change batch") {
  CommGraph g = test::cycle_graph(4);
  Labelling l1 = test::constant_labelling(g, LabelKind::Bit, 0);
  BatchUpdate b{{{EdgeId::of(0, 1), 1}}};
  auto applied = apply_batch(l1, b);
  CHECK(applied.changed == std::vector<EdgeId>{EdgeId::of(0, 1)});
  CHECK(applied.after.at(EdgeId::of(0, 1)) == 1);
  CHECK(applied.after.at(EdgeId::of(1, 2)) == 0);
}

TEST_CASE("empty batch changes nothing") {
  CommGraph g = test::cycle_graph(4);
  Labelling l1 = test::constant_labelling(g, LabelKind::Bit, 0);
  auto applied = apply_batch(l1, BatchUpdate{});
  CHECK(applied.changed.empty());
  CHECK(applied.after == l1);
}

TEST_CASE("no-op and unknown-edge changes rejected") {
  CommGraph g = test::cycle_graph(4);
  Labelling l1 = test::constant_labelling(g, LabelKind::Bit, 0);
  CHECK_THROWS_AS(apply_batch(l1, BatchUpdate{{{EdgeId::of(0, 1), 0}}}), Error);
  CHECK_THROWS_AS(apply_batch(l1, BatchUpdate{{{EdgeId::of(0, 2), 1}}}), Error);
  CHECK_THROWS_AS(apply_batch(l1, BatchUpdate{{{EdgeId::of(0, 1), 1}, {EdgeId::of(0, 1), 1}}}),
                  Error);
}

TEST_CASE("weight batch splits into increments and decrements") {
  CommGraph g = test::cycle_graph(4);
  Labelling l1 = test::constant_labelling(g, LabelKind::Weight, 5);
  BatchUpdate b{{{EdgeId::of(0, 1), 9}, {EdgeId::of(1, 2), 7}, {EdgeId::of(2, 3), 1}}};
  auto applied = apply_batch(l1, b);
  auto split = split_weight_batch(l1, applied.after, applied.changed);
  CHECK(split.increments == std::vector<EdgeId>{EdgeId::of(0, 1), EdgeId::of(1, 2)});
  CHECK(split.decrements == std::vector<EdgeId>{EdgeId::of(2, 3)});
}

TEST_CASE("graph file round trip") {
  CommGraph g = gen::make_graph("gnm", 20, 7);
  std::stringstream s1, s2;
  save_graph(g, s1);
  std::string bytes = s1.str();
  std::istringstream in(bytes);
  CommGraph g2 = load_graph(in);
  save_graph(g2, s2);
  CHECK(bytes == s2.str());
  CHECK(g2.n() == g.n());
  CHECK(g2.edges() == g.edges());
}

TEST_CASE("labelling file round trip including infinity") {
  CommGraph g = test::cycle_graph(4);
  Labelling l(&g, LabelKind::Weight);
  l.set(EdgeId::of(0, 1), 3);
  l.set(EdgeId::of(1, 2), kInfiniteWeight);
  l.set(EdgeId::of(2, 3), 1);
  l.set(EdgeId::of(0, 3), 9);
  std::stringstream s;
  save_labelling(l, s);
  Labelling l2 = load_labelling(s, g, LabelKind::Weight);
  CHECK(l == l2);
  CHECK(l2.at(EdgeId::of(1, 2)) == kInfiniteWeight);
}

TEST_CASE("batch trace file round trip") {
  CommGraph g = gen::make_graph("gnm", 12, 3);
  Labelling l = gen::make_labelling(g, LabelKind::Weight, 3);
  auto batches = gen::make_batches(l, "weight", 4, 5, 11);
  std::stringstream s1, s2;
  save_batch_trace(batches, s1);
  std::string bytes = s1.str();
  std::istringstream in(bytes);
  auto loaded = load_batch_trace(in);
  save_batch_trace(loaded, s2);
  CHECK(bytes == s2.str());
  REQUIRE(loaded.size() == batches.size());
  for (size_t i = 0; i < loaded.size(); ++i) CHECK(loaded[i].changes == batches[i].changes);
}

TEST_CASE("path generator yields n-1 edges") {
  CommGraph g = gen::make_graph("path", 5, 0);
  CHECK(g.m() == 4);
  CHECK(g.diameter() == 4);
}

TEST_CASE("generators are reproducible byte for byte") {
  for (const char* kind : {"path", "cycle", "grid", "gnm", "clique"}) {
    CommGraph a = gen::make_graph(kind, 20, 7);
    CommGraph b = gen::make_graph(kind, 20, 7);
    std::stringstream sa, sb;
    save_graph(a, sa);
    save_graph(b, sb);
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("batch generator emits exactly alpha distinct live changes") {
  CommGraph g = gen::make_graph("gnm", 20, 7);
  Labelling l = gen::make_labelling(g, LabelKind::Bit, 7);
  Labelling cursor = l;
  auto batches = gen::make_batches(cursor, "flip", 8, 10, 5);
  Labelling state = l;
  for (const auto& b : batches) {
    CHECK(b.alpha() == 8);
    std::set<EdgeId> seen;
    for (const auto& [e, w] : b.changes) {
      CHECK(seen.insert(e).second);
      CHECK(state.at(e) != w);  // never a no-op against the evolving labelling
    }
    state = apply_batch(state, b).after;
  }
}

TEST_CASE("batch generator parameter validation") {
  CommGraph g = test::cycle_graph(4);
  Labelling bit = test::constant_labelling(g, LabelKind::Bit, 0);
  CHECK_THROWS_AS(gen::make_batches(bit, "flip", 5, 1, 0), Error);    // alpha > m
  CHECK_THROWS_AS(gen::make_batches(bit, "weight", 2, 1, 0), Error);  // kind mismatch
}
