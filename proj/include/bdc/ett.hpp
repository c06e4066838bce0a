#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bdc/graph.hpp"

namespace bdc::ett {

// Directed-edge label for edges outside the forest ("infinity" in the labelling).
inline constexpr int64_t kNone = -1;

// Per-node variables of the tour labelling: r (tour root), s (directed edge
// count of the node's tree), a (an outgoing tour label of the node — initially
// the minimum, but rotations may move it to another outgoing edge; any
// outgoing label supports the interval arithmetic. 0 at the root and for
// singletons).
struct NodeVars {
  NodeId root = 0;
  int64_t size = 0;
  int64_t min_out = 0;
  bool operator==(const NodeVars&) const = default;
};

// Euler tour forest labelling restricted to a tracked edge/node domain.
//
// The same class serves as the global structure (everything tracked) and as a
// node-local restriction (incident edges plus decorated edges). All three
// operations (reroot/join/cut) use only tracked information, so applying the
// same operation sequence to any restriction agrees with the global result on
// the tracked domain.
class Forest {
 public:
  void track_node(NodeId v, NodeVars vars);
  // Both endpoints must already be tracked. Labels are (L(u,v), L(v,u)) for
  // the canonical edge {u,v} with u < v; kNone for non-forest directions.
  void track_edge(const EdgeId& e, int64_t fwd, int64_t rev);

  bool tracks_node(NodeId v) const { return nodes_.count(v) > 0; }
  bool tracks_edge(const EdgeId& e) const { return edges_.count(e) > 0; }
  const NodeVars& vars(NodeId v) const;
  // L(u,v); kNone if the directed edge is not in the forest. The edge must be tracked.
  int64_t label(NodeId u, NodeId v) const;
  bool is_tree_edge(const EdgeId& e) const;
  bool same_tree(NodeId u, NodeId v) const { return vars(u).root == vars(v).root; }

  // The paper's root operation: u becomes the root of its tree. No-op on singletons.
  void reroot(NodeId u);
  // Merge the two trees containing the endpoints of e; new root is the smaller endpoint.
  void join(const EdgeId& e);
  // Remove tree edge e, producing two trees rooted at its endpoints.
  void cut(const EdgeId& e);

  Forest restricted(std::span<const EdgeId> domain) const;
  // Absorb tracked entries of another restriction; conflicting values raise
  // InconsistentWindow.
  void merge(const Forest& other);

  const std::map<NodeId, NodeVars>& nodes() const { return nodes_; }
  const std::map<EdgeId, std::pair<int64_t, int64_t>>& edges() const { return edges_; }

  // Distinct roots over tracked nodes (component count as seen by this window).
  int tracked_root_count() const;

 private:
  void shift_tree(NodeId tree_root_tag, NodeId new_root, int64_t shift, int64_t size);

  std::map<NodeId, NodeVars> nodes_;
  std::map<EdgeId, std::pair<int64_t, int64_t>> edges_;
};

// O(log n)-bit per-node auxiliary encoding (r(v), p(v), lambda(v)).
struct NodeAux {
  NodeId root = 0;
  NodeId parent = 0;  // parent == self for the tour root
  int64_t label_in = kNone;   // L(p(v), v)
  int64_t label_out = kNone;  // L(v, p(v))
  bool operator==(const NodeAux&) const = default;
};

// Builds a canonical Euler tour forest on the given forest edges over nodes
// 0..n-1: each tree rooted at its minimum id, children visited in ascending
// order. Tracks all n nodes and the given edges.
Forest build_forest(int n, const std::vector<EdgeId>& forest_edges);

// Checks all structural invariants of a fully-tracked forest; throws
// InconsistentWindow with a description on violation. Tracked edges that are
// not tree edges are allowed.
void validate(const Forest& f, int n);

// Tree edges of a fully-tracked forest.
std::vector<EdgeId> tree_edges(const Forest& f);

// Aux encoding for node v; requires v's incident tree edges tracked.
NodeAux encode_aux(const Forest& f, NodeId v);

// Rebuilds the fully-tracked forest of a spanning tree from all per-node aux
// records (oracle-side inverse of encode_aux).
Forest decode_aux(const std::vector<NodeAux>& aux);

}  // namespace bdc::ett
