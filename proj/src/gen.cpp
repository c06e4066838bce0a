#include "bdc/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace bdc::gen {

namespace {

using Rng = std::mt19937_64;

std::vector<std::pair<NodeId, NodeId>> path_edges(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return e;
}

std::vector<std::pair<NodeId, NodeId>> cycle_edges(int n) {
  auto e = path_edges(n);
  if (n >= 3) e.emplace_back(0, n - 1);
  return e;
}

std::vector<std::pair<NodeId, NodeId>> grid_edges(int n) {
  int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
  int cols = (n + rows - 1) / rows;
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId v = 0; v < n; ++v) {
    int r = v / cols, c = v % cols;
    if (c + 1 < cols && v + 1 < n) e.emplace_back(v, v + 1);
    if ((r + 1) * cols + c < n) e.emplace_back(v, (r + 1) * cols + c);
  }
  return e;
}

std::vector<std::pair<NodeId, NodeId>> clique_edges(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return e;
}

std::vector<std::pair<NodeId, NodeId>> gnm_edges(int n, Rng& rng) {
  // Random spanning tree: attach each node (in shuffled order) to an earlier one.
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<EdgeId> chosen;
  for (int i = 1; i < n; ++i) {
    NodeId prev = order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
    chosen.insert(EdgeId::of(order[i], prev));
  }
  int64_t max_m = static_cast<int64_t>(n) * (n - 1) / 2;
  int64_t target = std::min<int64_t>(3 * n, max_m);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  while (static_cast<int64_t>(chosen.size()) < target) {
    NodeId a = pick(rng), b = pick(rng);
    if (a != b) chosen.insert(EdgeId::of(a, b));
  }
  std::vector<std::pair<NodeId, NodeId>> e;
  for (const auto& c : chosen) e.emplace_back(c.u, c.v);
  return e;
}

}  // namespace

CommGraph make_graph(const std::string& kind, int n, uint64_t seed) {
  if (n < 2) fail(Err::InfeasibleParams, "graph needs at least 2 nodes");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (kind == "path")
    edges = path_edges(n);
  else if (kind == "cycle")
    edges = cycle_edges(n);
  else if (kind == "grid")
    edges = grid_edges(n);
  else if (kind == "gnm")
    edges = gnm_edges(n, rng);
  else if (kind == "clique")
    edges = clique_edges(n);
  else
    fail(Err::InfeasibleParams, "unknown graph kind '" + kind + "'");
  return CommGraph::build(n, edges);
}

Labelling make_labelling(const CommGraph& g, LabelKind kind, uint64_t seed) {
  Rng rng(seed);
  Labelling l(&g, kind);
  int64_t n = g.n();
  std::uniform_int_distribution<int64_t> weight(1, n * n * n);
  std::uniform_int_distribution<int> bit(0, 1);
  for (const auto& e : g.edges())
    l.set(e, kind == LabelKind::Bit ? bit(rng) : weight(rng));
  return l;
}

std::vector<BatchUpdate> make_batches(Labelling& l, const std::string& kind, int alpha, int count,
                                      uint64_t seed) {
  const CommGraph& g = l.graph();
  if (alpha < 1 || alpha > g.m())
    fail(Err::InfeasibleParams, "batch size " + std::to_string(alpha) + " not in [1, m]");
  bool flip = (kind == "flip");
  if (!flip && kind != "weight")
    fail(Err::InfeasibleParams, "unknown batch kind '" + kind + "'");
  if (flip != (l.kind() == LabelKind::Bit))
    fail(Err::InfeasibleParams, "batch kind '" + kind + "' does not match the label kind");

  Rng rng(seed);
  int64_t n = g.n();
  std::uniform_int_distribution<int64_t> weight(1, n * n * n);
  std::vector<EdgeId> pool = g.edges();
  std::vector<BatchUpdate> out;
  for (int b = 0; b < count; ++b) {
    std::shuffle(pool.begin(), pool.end(), rng);
    BatchUpdate batch;
    for (int i = 0; i < alpha; ++i) {
      const EdgeId& e = pool[i];
      int64_t cur = l.at(e);
      int64_t next;
      if (flip) {
        next = 1 - cur;
      } else {
        do {
          next = weight(rng);
        } while (next == cur);
      }
      batch.changes.emplace_back(e, next);
      l.set(e, next);
    }
    std::sort(batch.changes.begin(), batch.changes.end());
    out.push_back(std::move(batch));
  }
  return out;
}

}  // namespace bdc::gen
