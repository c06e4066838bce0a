#include "bdc/ett.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bdc::ett {

namespace {
int64_t pos_mod(int64_t v, int64_t m) { return ((v % m) + m) % m; }
}  // namespace

void Forest::track_node(NodeId v, NodeVars vars) { nodes_[v] = vars; }

void Forest::track_edge(const EdgeId& e, int64_t fwd, int64_t rev) {
  if (!tracks_node(e.u) || !tracks_node(e.v))
    fail(Err::InconsistentWindow, "edge " + to_string(e) + " tracked before its endpoints");
  edges_[e] = {fwd, rev};
}

const NodeVars& Forest::vars(NodeId v) const {
  auto it = nodes_.find(v);
  if (it == nodes_.end()) fail(Err::InconsistentWindow, "node " + std::to_string(v) + " not tracked");
  return it->second;
}

int64_t Forest::label(NodeId u, NodeId v) const {
  auto it = edges_.find(EdgeId::of(u, v));
  if (it == edges_.end())
    fail(Err::InconsistentWindow, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} not tracked");
  return u < v ? it->second.first : it->second.second;
}

bool Forest::is_tree_edge(const EdgeId& e) const {
  auto it = edges_.find(e);
  return it != edges_.end() && it->second.first != kNone;
}

void Forest::reroot(NodeId u) {
  NodeVars uv = vars(u);
  if (uv.size == 0) {  // singleton, already rooted
    nodes_[u].root = u;
    return;
  }
  shift_tree(uv.root, u, uv.min_out, uv.size);
}

void Forest::shift_tree(NodeId tree_root_tag, NodeId new_root, int64_t shift, int64_t size) {
  for (auto& [e, lab] : edges_) {
    if (vars(e.u).root != tree_root_tag || lab.first == kNone) continue;
    lab.first = pos_mod(lab.first - shift, size);
    lab.second = pos_mod(lab.second - shift, size);
  }
  for (auto& [v, nv] : nodes_) {
    if (nv.root != tree_root_tag) continue;
    nv.min_out = pos_mod(nv.min_out - shift, size);
    nv.root = new_root;
  }
}

void Forest::join(const EdgeId& e) {
  if (!tracks_node(e.u) || !tracks_node(e.v))
    fail(Err::InconsistentWindow, "join endpoints not tracked");
  if (same_tree(e.u, e.v)) fail(Err::SameTree, "join " + to_string(e) + ": endpoints share a tree");
  NodeId vi = e.u, vj = e.v;  // canonical order gives the smaller id first
  reroot(vi);
  reroot(vj);
  int64_t si = vars(vi).size, sj = vars(vj).size;
  for (auto& [edge, lab] : edges_) {
    if (vars(edge.u).root != vj || lab.first == kNone) continue;
    lab.first += si + 1;
    lab.second += si + 1;
  }
  for (auto& [v, nv] : nodes_)
    if (nv.root == vj) nv.min_out += si + 1;
  edges_[e] = {si, si + sj + 1};
  for (auto& [v, nv] : nodes_) {
    if (nv.root != vi && nv.root != vj) continue;
    nv.size = si + sj + 2;
    nv.root = vi;
  }
}

void Forest::cut(const EdgeId& e) {
  auto it = edges_.find(e);
  if (it == edges_.end() || it->second.first == kNone || it->second.second == kNone)
    fail(Err::NotTreeEdge, "cut " + to_string(e) + ": not a tree edge");
  // The tour enters the child side before it leaves it, so the parent-to-child
  // label is the smaller of the two directed labels.
  NodeId v1 = e.u, v2 = e.v;
  if (label(v1, v2) > label(v2, v1)) std::swap(v1, v2);
  int64_t z1 = label(v1, v2), z2 = label(v2, v1);
  if (z1 >= z2) fail(Err::InconsistentWindow, "cut " + to_string(e) + ": label order violated");
  int64_t x = z2 - z1;
  NodeId tag = vars(v1).root;
  if (vars(v2).root != tag) fail(Err::InconsistentWindow, "cut endpoints in different trees");

  it->second = {kNone, kNone};

  // Split by the old a-values: (z1, z2] goes with v2, the rest with v1.
  std::set<NodeId> side2;
  for (auto& [v, nv] : nodes_) {
    if (nv.root != tag) continue;
    if (nv.min_out > z1 && nv.min_out <= z2) side2.insert(v);
  }
  for (auto& [v, nv] : nodes_) {
    if (nv.root != tag) continue;
    if (nv.min_out <= z1) {
      nv.size -= x + 1;
    } else if (nv.min_out <= z2) {
      nv.size = x - 1;
      nv.min_out -= z1 + 1;
    } else {
      nv.size -= x + 1;
      nv.min_out -= x + 1;
    }
  }
  for (auto& [edge, lab] : edges_) {
    if (vars(edge.u).root != tag && vars(edge.v).root != tag) continue;
    for (int64_t* l : {&lab.first, &lab.second}) {
      if (*l == kNone || *l < z1) continue;
      if (*l < z2)
        *l -= z1 + 1;
      else
        *l -= x + 1;
    }
  }
  for (auto& [v, nv] : nodes_) {
    if (nv.root != tag) continue;
    nv.root = side2.count(v) ? v2 : v1;
  }
  reroot(v1);
  reroot(v2);
}

Forest Forest::restricted(std::span<const EdgeId> domain) const {
  Forest out;
  for (const auto& e : domain) {
    if (!tracks_node(e.u) || !tracks_node(e.v) || !tracks_edge(e))
      fail(Err::InconsistentWindow, "restriction outside tracked domain");
    out.nodes_[e.u] = vars(e.u);
    out.nodes_[e.v] = vars(e.v);
  }
  for (const auto& e : domain) out.edges_[e] = edges_.at(e);
  return out;
}

void Forest::merge(const Forest& other) {
  for (const auto& [v, nv] : other.nodes_) {
    auto [it, inserted] = nodes_.emplace(v, nv);
    if (!inserted && !(it->second == nv))
      fail(Err::InconsistentWindow, "merge: node " + std::to_string(v) + " disagrees");
  }
  for (const auto& [e, lab] : other.edges_) {
    auto [it, inserted] = edges_.emplace(e, lab);
    if (!inserted && it->second != lab)
      fail(Err::InconsistentWindow, "merge: edge " + to_string(e) + " disagrees");
  }
}

int Forest::tracked_root_count() const {
  std::set<NodeId> roots;
  for (const auto& [v, nv] : nodes_) roots.insert(nv.root);
  return static_cast<int>(roots.size());
}

Forest build_forest(int n, const std::vector<EdgeId>& forest_edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& e : forest_edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  Forest f;
  for (NodeId v = 0; v < n; ++v) f.track_node(v, NodeVars{v, 0, 0});
  for (const auto& e : forest_edges) f.track_edge(e, kNone, kNone);

  std::vector<char> visited(n, 0);
  std::map<EdgeId, std::pair<int64_t, int64_t>> labels;
  for (NodeId start = 0; start < n; ++start) {
    if (visited[start]) continue;
    // Euler tour by DFS from the minimum-id node, children in ascending order.
    std::vector<NodeId> comp;
    int64_t t = 0;
    std::function<void(NodeId, NodeId)> tour = [&](NodeId v, NodeId parent) {
      visited[v] = 1;
      comp.push_back(v);
      for (NodeId w : adj[v]) {
        if (w == parent || visited[w]) continue;
        EdgeId e = EdgeId::of(v, w);
        (v < w ? labels[e].first : labels[e].second) = t++;
        tour(w, v);
        (w < v ? labels[e].first : labels[e].second) = t++;
      }
    };
    tour(start, -1);
    if (t != 2 * static_cast<int64_t>(comp.size() - 1))
      fail(Err::InconsistentWindow, "input edges contain a cycle");
    for (NodeId v : comp) f.track_node(v, NodeVars{start, t, 0});
  }
  for (const auto& [e, lab] : labels) f.track_edge(e, lab.first, lab.second);
  // a-values: minimum outgoing label per node
  std::map<NodeId, int64_t> min_out;
  for (const auto& [e, lab] : f.edges()) {
    if (lab.first == kNone) continue;
    auto consider = [&](NodeId v, int64_t l) {
      auto it = min_out.find(v);
      if (it == min_out.end() || l < it->second) min_out[v] = l;
    };
    consider(e.u, lab.first);
    consider(e.v, lab.second);
  }
  for (const auto& [v, l] : min_out) {
    NodeVars nv = f.vars(v);
    nv.min_out = l;
    f.track_node(v, nv);
  }
  return f;
}

void validate(const Forest& f, int n) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) fail(Err::InconsistentWindow, "invalid forest: " + what);
  };
  check(static_cast<int>(f.nodes().size()) == n, "node domain incomplete");

  std::map<NodeId, std::vector<NodeId>> trees;  // root -> members
  for (const auto& [v, nv] : f.nodes()) trees[nv.root].push_back(v);

  // directed labels grouped per tree
  std::map<NodeId, std::map<int64_t, std::pair<NodeId, NodeId>>> tour;  // root -> label -> (tail, head)
  for (const auto& [e, lab] : f.edges()) {
    NodeId ru = f.vars(e.u).root, rv = f.vars(e.v).root;
    if (lab.first == kNone && lab.second == kNone) continue;
    check(lab.first != kNone && lab.second != kNone, "half-labelled edge " + to_string(e));
    check(ru == rv, "tree edge across trees: " + to_string(e));
    check(tour[ru].emplace(lab.first, std::make_pair(e.u, e.v)).second, "duplicate label");
    check(tour[ru].emplace(lab.second, std::make_pair(e.v, e.u)).second, "duplicate label");
  }
  for (const auto& [root, members] : trees) {
    const auto& t = tour[root];
    int64_t size = static_cast<int64_t>(t.size());
    check(size == 2 * static_cast<int64_t>(members.size() - 1),
          "size mismatch in tree of " + std::to_string(root));
    std::map<NodeId, std::set<int64_t>> outgoing;
    NodeId at = root;
    for (int64_t i = 0; i < size; ++i) {
      auto it = t.find(i);
      check(it != t.end(), "labels not contiguous");
      auto [tail, head] = it->second;
      check(tail == at, "tour broken at label " + std::to_string(i));
      at = head;
      outgoing[tail].insert(i);
    }
    if (size > 0) check(at == root, "tour not closed");
    for (NodeId v : members) {
      const auto& nv = f.vars(v);
      check(nv.size == size, "s wrong at node " + std::to_string(v));
      // a(v) is an outgoing label of v (any serves the interval arithmetic);
      // the root's is 0, the first label of the tour.
      if (size == 0)
        check(nv.min_out == 0, "a wrong at singleton " + std::to_string(v));
      else
        check(outgoing[v].count(nv.min_out), "a wrong at node " + std::to_string(v));
      if (v == root && size > 0) check(nv.min_out == 0, "root a nonzero");
    }
    if (size == 0) check(members.size() == 1 && members[0] == root, "bad singleton");
  }
}

std::vector<EdgeId> tree_edges(const Forest& f) {
  std::vector<EdgeId> out;
  for (const auto& [e, lab] : f.edges())
    if (lab.first != kNone) out.push_back(e);
  return out;
}

NodeAux encode_aux(const Forest& f, NodeId v) {
  const auto& nv = f.vars(v);
  if (nv.size == 0 || nv.root == v) return NodeAux{nv.root, v, kNone, kNone};
  // The parent edge is the unique incident tree edge entered before it is left:
  // incoming label smaller than the outgoing one.
  for (const auto& [e, lab] : f.edges()) {
    if (lab.first == kNone) continue;
    if (e.v == v && lab.first < lab.second) return NodeAux{nv.root, e.u, lab.first, lab.second};
    if (e.u == v && lab.second < lab.first) return NodeAux{nv.root, e.v, lab.second, lab.first};
  }
  fail(Err::InconsistentWindow, "parent edge of node " + std::to_string(v) + " not tracked");
}

Forest decode_aux(const std::vector<NodeAux>& aux) {
  int n = static_cast<int>(aux.size());
  Forest f;
  int64_t size = 2 * static_cast<int64_t>(n - 1);
  for (NodeId v = 0; v < n; ++v) f.track_node(v, NodeVars{aux[v].root, size, 0});
  std::map<NodeId, int64_t> min_out;
  auto consider = [&](NodeId v, int64_t l) {
    auto it = min_out.find(v);
    if (it == min_out.end() || l < it->second) min_out[v] = l;
  };
  for (NodeId v = 0; v < n; ++v) {
    if (aux[v].parent == v) continue;
    EdgeId e = EdgeId::of(v, aux[v].parent);
    int64_t to_v = aux[v].label_in;     // L(p, v)
    int64_t from_v = aux[v].label_out;  // L(v, p)
    f.track_edge(e, e.u == v ? from_v : to_v, e.u == v ? to_v : from_v);
    consider(v, from_v);
    consider(aux[v].parent, to_v);
  }
  for (const auto& [v, l] : min_out) {
    NodeVars nv = f.vars(v);
    nv.min_out = l;
    f.track_node(v, nv);
  }
  return f;
}

}  // namespace bdc::ett
