#include "bdc/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace bdc {

std::string to_string(const EdgeId& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

CommGraph CommGraph::build(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  if (n < 2) fail(Err::BadNodeId, "need at least 2 nodes");
  CommGraph g;
  g.n_ = n;
  g.adj_.resize(n);
  g.edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(Err::BadNodeId, "edge endpoint out of range: " + std::to_string(a) + " " + std::to_string(b));
    g.edges_.push_back(EdgeId::of(a, b));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end())
    fail(Err::DuplicateEdge, "duplicate edge in input");
  for (const auto& e : g.edges_) {
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());

  // connectivity + diameter
  int diameter = 0;
  for (NodeId s = 0; s < n; ++s) {
    auto dist = g.bfs_distances(s);
    for (NodeId v = 0; v < n; ++v) {
      if (dist[v] < 0) fail(Err::Disconnected, "node " + std::to_string(v) + " unreachable");
      diameter = std::max(diameter, dist[v]);
    }
  }
  g.diameter_ = diameter;
  return g;
}

int CommGraph::edge_index(const EdgeId& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

std::vector<int> CommGraph::bfs_distances(NodeId src) const {
  std::vector<int> dist(n_, -1);
  std::deque<NodeId> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (NodeId u : adj_[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }
  return dist;
}

Labelling::Labelling(const CommGraph* g, LabelKind kind, int64_t fill)
    : g_(g), kind_(kind), values_(g->edges().size(), fill) {}

int64_t Labelling::at(const EdgeId& e) const {
  int idx = g_->edge_index(e);
  if (idx < 0) fail(Err::UnknownEdge, "no such edge " + to_string(e));
  return values_[idx];
}

void Labelling::set(const EdgeId& e, int64_t value) {
  int idx = g_->edge_index(e);
  if (idx < 0) fail(Err::UnknownEdge, "no such edge " + to_string(e));
  values_[idx] = value;
}

AppliedBatch apply_batch(const Labelling& l1, const BatchUpdate& b) {
  AppliedBatch out{l1, {}};
  for (const auto& [e, value] : b.changes) {
    if (l1.at(e) == value)
      fail(Err::NoOpChange, "batch sets " + to_string(e) + " to its current label");
    out.after.set(e, value);
    out.changed.push_back(e);
  }
  std::sort(out.changed.begin(), out.changed.end());
  if (std::adjacent_find(out.changed.begin(), out.changed.end()) != out.changed.end())
    fail(Err::DuplicateEdge, "edge changed twice in one batch");
  return out;
}

WeightSplit split_weight_batch(const Labelling& l1, const Labelling& l2,
                               const std::vector<EdgeId>& changed) {
  WeightSplit split;
  for (const auto& e : changed) {
    if (l2.at(e) > l1.at(e))
      split.increments.push_back(e);
    else
      split.decrements.push_back(e);
  }
  return split;
}

CommGraph load_graph(std::istream& in) {
  int n = 0;
  int64_t m = 0;
  if (!(in >> n >> m)) fail(Err::InfeasibleParams, "bad graph header");
  std::vector<std::pair<NodeId, NodeId>> edges(m);
  for (auto& [u, v] : edges)
    if (!(in >> u >> v)) fail(Err::InfeasibleParams, "truncated graph file");
  return CommGraph::build(n, edges);
}

void save_graph(const CommGraph& g, std::ostream& out) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Labelling load_labelling(std::istream& in, const CommGraph& g, LabelKind kind) {
  Labelling l(&g, kind);
  NodeId u, v;
  std::string w;
  while (in >> u >> v >> w) {
    int64_t value = (w == "inf") ? kInfiniteWeight : std::stoll(w);
    l.set(EdgeId::of(u, v), value);
  }
  return l;
}

void save_labelling(const Labelling& l, std::ostream& out) {
  for (const auto& e : l.graph().edges()) {
    int64_t w = l.at(e);
    out << e.u << ' ' << e.v << ' ';
    if (w == kInfiniteWeight)
      out << "inf\n";
    else
      out << w << '\n';
  }
}

std::vector<BatchUpdate> load_batch_trace(std::istream& in) {
  std::vector<BatchUpdate> trace;
  BatchUpdate cur;
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "---") {
      trace.push_back(std::move(cur));
      cur = {};
      any = false;
      continue;
    }
    std::istringstream ls(line);
    NodeId u, v;
    std::string w;
    if (!(ls >> u >> v >> w)) fail(Err::InfeasibleParams, "bad batch line: " + line);
    int64_t value = (w == "inf") ? kInfiniteWeight : std::stoll(w);
    cur.changes.emplace_back(EdgeId::of(u, v), value);
    any = true;
  }
  if (any) trace.push_back(std::move(cur));
  return trace;
}

void save_batch_trace(const std::vector<BatchUpdate>& trace, std::ostream& out) {
  for (size_t i = 0; i < trace.size(); ++i) {
    if (i) out << "---\n";
    for (const auto& [e, w] : trace[i].changes) {
      out << e.u << ' ' << e.v << ' ';
      if (w == kInfiniteWeight)
        out << "inf\n";
      else
        out << w << '\n';
    }
  }
}

}  // namespace bdc
