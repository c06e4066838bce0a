#include <memory>
#include <random>

#include "bdc/cc.hpp"
#include "bdc/gen.hpp"
#include "bdc/oracles.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bdc;
using comm::Item;

namespace {

// Minimal node program hosting one all-cast or routing phase.
struct AllCastHost : sim::NodeProgram {
  cc::AllCastPhase phase{600};
  std::vector<Item> items;

  void init(const sim::NodeContext& ctx) override { phase.init(ctx.self, ctx.n); }
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override {
    for (const auto& [from, msgs] : in.from)
      for (const auto& m : msgs) phase.on_message(from, m);
    if (round == 1) {
      phase.set_items(items);
      phase.start();
    }
    phase.advance(queues_);
    queues_.flush(out);
    if (phase.done() && queues_.empty()) halt(std::make_shared<test::EmptyAux>());
  }
  sim::LinkQueues queues_;
};

struct RouteHost : sim::NodeProgram {
  cc::RoutePhase phase{600};
  std::vector<std::pair<NodeId, Item>> items;

  void init(const sim::NodeContext& ctx) override { phase.init(ctx.self, ctx.n); }
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override {
    for (const auto& [from, msgs] : in.from)
      for (const auto& m : msgs) phase.on_message(from, m);
    if (round == 1) {
      phase.set_items(items);
      phase.start();
    }
    phase.advance(queues_);
    queues_.flush(out);
    if (phase.done() && queues_.empty()) halt(std::make_shared<test::EmptyAux>());
  }
  sim::LinkQueues queues_;
};

}  // namespace

TEST_CASE("all-cast replicates the sorted deduplicated union everywhere") {
  CommGraph g = test::clique_graph(5);
  Labelling l = test::constant_labelling(g, LabelKind::Bit, 0);
  std::vector<std::unique_ptr<AllCastHost>> ps;
  for (int v = 0; v < 5; ++v) ps.push_back(std::make_unique<AllCastHost>());
  ps[0]->items = {{3}, {1}};
  ps[2]->items = {{1}, {8}};
  ps[4]->items = {{5}};
  test::run_uniform(ps, g, l, l, test::empty_aux(5));
  std::vector<Item> want{{1}, {3}, {5}, {8}};
  for (auto& p : ps) CHECK(p->phase.result() == want);
}

TEST_CASE("all-cast round count scales with the per-node share of the total") {
  int n = 16;
  CommGraph g = test::clique_graph(n);
  Labelling l = test::constant_labelling(g, LabelKind::Bit, 0);
  for (int total : {0, 16, 64}) {
    std::vector<std::unique_ptr<AllCastHost>> ps;
    for (int v = 0; v < n; ++v) ps.push_back(std::make_unique<AllCastHost>());
    for (int i = 0; i < total; ++i) ps[i % n]->items.push_back({i});
    auto m = test::run_uniform(ps, g, l, l, test::empty_aux(n));
    CHECK(m.rounds <= 3 * (total / n + 1) + 6);
    CHECK(ps[0]->phase.result().size() == static_cast<size_t>(total));
  }
}

TEST_CASE("routing delivers each item to its addressee only") {
  int n = 6;
  CommGraph g = test::clique_graph(n);
  Labelling l = test::constant_labelling(g, LabelKind::Bit, 0);
  std::vector<std::unique_ptr<RouteHost>> ps;
  for (int v = 0; v < n; ++v) ps.push_back(std::make_unique<RouteHost>());
  // Node v sends {v * 10 + d} to node d for a few destinations.
  std::map<NodeId, std::vector<Item>> want;
  for (NodeId v = 0; v < n; ++v)
    for (NodeId d = 0; d < n; d += 2) {
      ps[v]->items.emplace_back(d, Item{v * 10 + d});
      want[d].push_back({v * 10 + d});
    }
  test::run_uniform(ps, g, l, l, test::empty_aux(n));
  for (NodeId v = 0; v < n; ++v) {
    auto got = ps[v]->phase.delivered();
    std::sort(got.begin(), got.end());
    std::sort(want[v].begin(), want[v].end());
    CHECK(got == want[v]);
  }
}

namespace {

sim::Metrics run_cc_universal(std::vector<std::unique_ptr<cc::CcUniversalProgram>>& ps,
                              const CommGraph& g, const Labelling& l1, const Labelling& l2) {
  return test::run_uniform(ps, g, l1, l2, universal::universal_bootstrap(l1));
}

}  // namespace

TEST_CASE("clique-resident label maintenance matches the component oracle") {
  int n = 8;
  CommGraph g = test::clique_graph(n);
  Labelling l1 = gen::make_labelling(g, LabelKind::Bit, 6);
  Labelling cursor = l1;
  auto batches = gen::make_batches(cursor, "flip", 5, 1, 3);
  Labelling l2 = apply_batch(l1, batches[0]).after;
  std::vector<std::unique_ptr<cc::CcUniversalProgram>> ps;
  for (int v = 0; v < n; ++v)
    ps.push_back(std::make_unique<cc::CcUniversalProgram>(universal::component_edges_solver()));
  run_cc_universal(ps, g, l1, l2);
  for (NodeId v = 0; v < n; ++v)
    CHECK(ps[v]->output() == std::vector<int64_t>{oracle::component_edge_count(l2, v)});
}

TEST_CASE("no changes on the clique finish in a handful of rounds") {
  int n = 12;
  CommGraph g = test::clique_graph(n);
  Labelling l = gen::make_labelling(g, LabelKind::Bit, 2);
  std::vector<std::unique_ptr<cc::CcUniversalProgram>> ps;
  for (int v = 0; v < n; ++v)
    ps.push_back(std::make_unique<cc::CcUniversalProgram>(universal::component_edges_solver()));
  auto m = run_cc_universal(ps, g, l, l);
  CHECK(m.rounds <= 8);
}

TEST_CASE("clique-only programs reject other topologies") {
  CommGraph g = test::cycle_graph(4);
  Labelling l = test::constant_labelling(g, LabelKind::Bit, 0);
  std::vector<std::unique_ptr<cc::CcUniversalProgram>> ps;
  for (int v = 0; v < 4; ++v)
    ps.push_back(std::make_unique<cc::CcUniversalProgram>(universal::component_edges_solver()));
  try {
    run_cc_universal(ps, g, l, l);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAClique);
  }
}

namespace {

struct MatmulRun {
  std::vector<std::vector<int64_t>> s, t, p;
};

// Runs one sparse update against the maintained product and returns the
// resulting replicated rows/columns.
MatmulRun run_matmul(const std::vector<std::vector<int64_t>>& s1,
                     const std::vector<std::vector<int64_t>>& t1,
                     const std::map<NodeId, std::vector<Item>>& deltas) {
  int n = static_cast<int>(s1.size());
  CommGraph g = test::clique_graph(n);
  Labelling l = test::constant_labelling(g, LabelKind::Weight, 1);
  std::vector<std::unique_ptr<cc::MatmulProgram>> ps;
  for (NodeId v = 0; v < n; ++v) {
    auto it = deltas.find(v);
    ps.push_back(std::make_unique<cc::MatmulProgram>(
        it == deltas.end() ? std::vector<Item>{} : it->second));
  }
  test::run_uniform(ps, g, l, l, cc::matmul_bootstrap(s1, t1));
  MatmulRun r;
  for (NodeId v = 0; v < n; ++v) {
    const auto& aux = dynamic_cast<const cc::MatrixRowAux&>(*ps[v]->aux_out());
    r.s.push_back(aux.s_row);
    r.t.push_back(aux.t_col);  // column v, indexed by row
    r.p.push_back(aux.p_row);
  }
  return r;
}

}  // namespace

TEST_CASE("one increment to an identity factor shifts a row of the product") {
  std::vector<std::vector<int64_t>> s1{{1, 0}, {0, 1}};
  std::vector<std::vector<int64_t>> t1{{2, 3}, {4, 5}};
  auto r = run_matmul(s1, t1, {{0, {Item{0, 0, 1, 1}}}});  // dS(0,1) += 1
  CHECK(r.p[0] == std::vector<int64_t>{6, 8});
  CHECK(r.p[1] == std::vector<int64_t>{4, 5});
  CHECK(r.s[0] == std::vector<int64_t>{1, 1});
  CHECK(r.t[0] == std::vector<int64_t>{2, 4});
}

TEST_CASE("zero deltas leave the product untouched") {
  std::vector<std::vector<int64_t>> s1{{1, 2, 0}, {0, 1, 1}, {3, 0, 1}};
  std::vector<std::vector<int64_t>> t1{{1, 0, 2}, {2, 1, 0}, {0, 4, 1}};
  auto r = run_matmul(s1, t1, {});
  auto want = oracle::matmul_reference(s1, t1);
  for (int v = 0; v < 3; ++v) CHECK(r.p[v] == want[v]);
}

TEST_CASE("random non-symmetric updates to both factors track the dense product") {
  std::mt19937_64 rng(77);
  int n = 8;
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<std::vector<int64_t>> s1(n, std::vector<int64_t>(n)), t1 = s1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        s1[i][j] = static_cast<int64_t>(rng() % 7) - 3;
        t1[i][j] = static_cast<int64_t>(rng() % 7) - 3;
      }
    auto s2 = s1, t2 = t1;
    std::map<NodeId, std::vector<Item>> deltas;
    for (int c = 0; c < 5; ++c) {
      int which = static_cast<int>(rng() % 2);
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      int64_t d = 1 + static_cast<int64_t>(rng() % 4);
      if (which == 0) {
        s2[i][j] += d;
        deltas[i].push_back({0, i, j, d});  // row owner holds dS entries
      } else {
        t2[i][j] += d;
        deltas[j].push_back({1, i, j, d});  // column owner holds dT entries
      }
    }
    auto r = run_matmul(s1, t1, deltas);
    auto want = oracle::matmul_reference(s2, t2);
    for (int v = 0; v < n; ++v) {
      CHECK(r.p[v] == want[v]);
      CHECK(r.s[v] == s2[v]);
      for (int i = 0; i < n; ++i) CHECK(r.t[v][i] == t2[i][v]);
    }
  }
}

namespace {

int64_t run_triangles(const CommGraph& g, const Labelling& l1, const Labelling& l2,
                      std::vector<sim::AuxPtr>& aux) {
  std::vector<std::unique_ptr<cc::TriangleProgram>> ps;
  for (int v = 0; v < g.n(); ++v) ps.push_back(std::make_unique<cc::TriangleProgram>());
  test::run_uniform(ps, g, l1, l2, aux);
  int64_t t = ps[0]->triangles();
  for (auto& p : ps) {
    CHECK(p->triangles() == t);
    // carried state for the next batch
  }
  aux.clear();
  for (auto& p : ps) aux.push_back(p->aux_out());
  return t;
}

oracle::Matrix adjacency_of(const Labelling& l, int n) {
  oracle::Matrix a(n, std::vector<int64_t>(n, 0));
  for (const auto& e : l.graph().edges()) a[e.u][e.v] = a[e.v][e.u] = l.at(e);
  return a;
}

}  // namespace

TEST_CASE("triangle counts follow the adjacency through a random trace") {
  int n = 12;
  CommGraph g = test::clique_graph(n);
  Labelling l1 = test::constant_labelling(g, LabelKind::Bit, 0);
  auto aux = cc::triangle_bootstrap(l1);

  // Empty graph: zero triangles.
  CHECK(run_triangles(g, l1, l1, aux) == 0);

  // Grow one triangle.
  Labelling l2 = l1;
  for (auto [a, b] : {std::pair{2, 5}, {5, 9}, {2, 9}}) l2.set(EdgeId::of(a, b), 1);
  CHECK(run_triangles(g, l1, l2, aux) == 1);

  // Random flips, checked against the dense count each batch.
  Labelling cursor = l2;
  auto batches = gen::make_batches(cursor, "flip", 8, 6, 13);
  Labelling state = l2;
  for (const auto& b : batches) {
    Labelling next = apply_batch(state, b).after;
    CHECK(run_triangles(g, state, next, aux) == oracle::triangle_reference(adjacency_of(next, n)));
    state = next;
  }
}
