#include "bdc/oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace bdc::oracle {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<EdgeId> kruskal_mst(const Labelling& weights) {
  const CommGraph& g = weights.graph();
  std::vector<WeightKey> order;
  for (const auto& e : g.edges()) {
    int64_t w = weights.at(e);
    if (w != kInfiniteWeight) order.push_back(weight_key(e, w));
  }
  std::sort(order.begin(), order.end());
  Dsu dsu(g.n());
  std::vector<EdgeId> tree;
  for (const auto& k : order)
    if (dsu.unite(k.e.u, k.e.v)) tree.push_back(k.e);
  if (static_cast<int>(tree.size()) != g.n() - 1)
    fail(Err::InfeasibleSpanningTree, "finite-weight subgraph disconnected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::vector<EdgeId> prim_mst(const Labelling& weights) {
  const CommGraph& g = weights.graph();
  int n = g.n();
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;
  std::vector<EdgeId> tree;
  for (int step = 1; step < n; ++step) {
    bool found = false;
    WeightKey best{};
    for (const auto& e : g.edges()) {
      int64_t w = weights.at(e);
      if (w == kInfiniteWeight || in_tree[e.u] == in_tree[e.v]) continue;
      WeightKey k = weight_key(e, w);
      if (!found || k < best) {
        best = k;
        found = true;
      }
    }
    if (!found) fail(Err::InfeasibleSpanningTree, "finite-weight subgraph disconnected");
    tree.push_back(best.e);
    in_tree[best.e.u] = in_tree[best.e.v] = 1;
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::vector<std::vector<NodeId>> brute_cliques(const Labelling& bits, NodeId v, int k) {
  if (k < 3) fail(Err::KTooSmall, "k must be at least 3");
  const CommGraph& g = bits.graph();
  int n = g.n();
  auto present = [&](NodeId a, NodeId b) {
    return g.has_edge(EdgeId::of(a, b)) && bits.at(EdgeId::of(a, b)) == 1;
  };
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> cur{v};
  // extend by nodes > last, all-pairs adjacent
  std::function<void(NodeId)> extend = [&](NodeId from) {
    if (static_cast<int>(cur.size()) == k) {
      auto sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(sorted);
      return;
    }
    for (NodeId w = from; w < n; ++w) {
      if (w == v) continue;
      bool ok = true;
      for (NodeId u : cur)
        if (!present(u, w)) {
          ok = false;
          break;
        }
      if (ok) {
        cur.push_back(w);
        extend(w + 1);
        cur.pop_back();
      }
    }
  };
  extend(0);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<NodeId>> brute_cliques_bitmask(const Labelling& bits, NodeId v, int k) {
  if (k < 3) fail(Err::KTooSmall, "k must be at least 3");
  const CommGraph& g = bits.graph();
  int n = g.n();
  if (n > 64) fail(Err::InfeasibleParams, "bitmask enumerator limited to 64 nodes");
  std::vector<uint64_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    if (bits.at(e) != 1) continue;
    adj[e.u] |= uint64_t{1} << e.v;
    adj[e.v] |= uint64_t{1} << e.u;
  }
  std::vector<std::vector<NodeId>> out;
  // grow {v} by common-neighbour intersection
  std::function<void(std::vector<NodeId>&, uint64_t, NodeId)> grow = [&](std::vector<NodeId>& cur,
                                                                         uint64_t common, NodeId from) {
    if (static_cast<int>(cur.size()) == k) {
      auto sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(sorted);
      return;
    }
    for (NodeId w = from; w < n; ++w) {
      if (w == v || !(common & (uint64_t{1} << w))) continue;
      cur.push_back(w);
      grow(cur, common & adj[w], w + 1);
      cur.pop_back();
    }
  };
  std::vector<NodeId> cur{v};
  grow(cur, adj[v], 0);
  std::sort(out.begin(), out.end());
  return out;
}

Matrix matmul_reference(const Matrix& s, const Matrix& t) {
  size_t n = s.size();
  Matrix p(n, std::vector<int64_t>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < n; ++l) {
      if (s[i][l] == 0) continue;
      for (size_t j = 0; j < n; ++j) p[i][j] += s[i][l] * t[l][j];
    }
  return p;
}

int64_t triangle_reference(const Matrix& a) {
  size_t n = a.size();
  int64_t count = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t l = j + 1; l < n; ++l)
        if (a[i][j] && a[j][l] && a[i][l]) ++count;
  return count;
}

std::vector<int> greedy_basis(std::vector<WeightedIndex> elements,
                              const std::function<bool(const std::vector<int>&)>& independent,
                              Sense sense) {
  std::sort(elements.begin(), elements.end(), [&](const auto& a, const auto& b) {
    return sense == Sense::Min ? a.key < b.key : b.key < a.key;
  });
  std::vector<int> kept;
  for (const auto& el : elements) {
    kept.push_back(el.index);
    if (!independent(kept)) kept.pop_back();
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<int> exhaustive_basis(const std::vector<WeightedIndex>& elements,
                                  const std::function<bool(const std::vector<int>&)>& independent,
                                  Sense sense) {
  size_t n = elements.size();
  if (n > 20) fail(Err::InfeasibleParams, "exhaustive basis limited to 20 elements");
  size_t best_size = 0;
  bool have = false;
  std::vector<WeightKey> best_keys;
  std::vector<int> best;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    std::vector<int> subset;
    std::vector<WeightKey> keys;
    for (size_t i = 0; i < n; ++i)
      if (mask & (uint64_t{1} << i)) {
        subset.push_back(elements[i].index);
        keys.push_back(elements[i].key);
      }
    if (!independent(subset)) continue;
    std::sort(keys.begin(), keys.end());
    if (sense == Sense::Max) std::reverse(keys.begin(), keys.end());
    bool better = false;
    if (!have || subset.size() > best_size) {
      better = true;
    } else if (subset.size() == best_size) {
      // compare sorted key sequences in the preferred direction
      better = sense == Sense::Min ? keys < best_keys : keys > best_keys;
    }
    if (better) {
      have = true;
      best_size = subset.size();
      best_keys = keys;
      best = subset;
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<std::vector<int>> subgraph_apsp(const Labelling& bits) {
  const CommGraph& g = bits.graph();
  int n = g.n();
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& e : g.edges()) {
    if (bits.at(e) != 1) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (NodeId s = 0; s < n; ++s) {
    std::deque<NodeId> q{s};
    dist[s][s] = 0;
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop_front();
      for (NodeId u : adj[v])
        if (dist[s][u] < 0) {
          dist[s][u] = dist[s][v] + 1;
          q.push_back(u);
        }
    }
  }
  return dist;
}

int component_diameter(const Labelling& bits, NodeId v) {
  auto dist = subgraph_apsp(bits);
  int n = bits.graph().n();
  int diam = 0;
  for (NodeId a = 0; a < n; ++a) {
    if (dist[v][a] < 0) continue;
    for (NodeId b = 0; b < n; ++b)
      if (dist[v][b] >= 0) diam = std::max(diam, dist[a][b]);
  }
  return diam;
}

int64_t component_edge_count(const Labelling& bits, NodeId v) {
  auto dist = subgraph_apsp(bits);
  int64_t count = 0;
  for (const auto& e : bits.graph().edges())
    if (bits.at(e) == 1 && dist[v][e.u] >= 0) ++count;
  return count;
}

int64_t edges_within_radius(const Labelling& bits, NodeId v, int r) {
  auto dist = bits.graph().bfs_distances(v);
  int64_t count = 0;
  for (const auto& e : bits.graph().edges())
    if (bits.at(e) == 1 && dist[e.u] <= r && dist[e.v] <= r) ++count;
  return count;
}

}  // namespace bdc::oracle
