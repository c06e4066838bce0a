#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bdc/graph.hpp"

namespace bdc::oracle {

// Total order over weighted edges: weight first, then edge id. Infinite weight
// sorts after every finite weight. MSTs are unique under this order.
struct WeightKey {
  int64_t w = 0;
  EdgeId e;
  auto operator<=>(const WeightKey&) const = default;
};

inline WeightKey weight_key(const EdgeId& e, int64_t w) { return WeightKey{w, e}; }

// Unique minimum spanning tree of the finite-weight subgraph; sorted edge list.
// Throws InfeasibleSpanningTree if the finite-weight subgraph is disconnected.
std::vector<EdgeId> kruskal_mst(const Labelling& weights);

// Independent reference for cross-checks.
std::vector<EdgeId> prim_mst(const Labelling& weights);

// All k-cliques of the subgraph {e : bits(e) == 1} that contain v, each as a
// sorted node list, the list of cliques sorted. k >= 3 enforced.
std::vector<std::vector<NodeId>> brute_cliques(const Labelling& bits, NodeId v, int k);
// Same by an independent strategy (adjacency-bitmask extension); n <= 64.
std::vector<std::vector<NodeId>> brute_cliques_bitmask(const Labelling& bits, NodeId v, int k);

using Matrix = std::vector<std::vector<int64_t>>;

Matrix matmul_reference(const Matrix& s, const Matrix& t);
int64_t triangle_reference(const Matrix& adjacency);

// Min- or max-key basis by exhaustive greedy over the sorted element list.
// Elements are (key, opaque index); independent() sees index sets.
struct WeightedIndex {
  WeightKey key;
  int index = 0;
};
enum class Sense { Min, Max };
std::vector<int> greedy_basis(std::vector<WeightedIndex> elements,
                              const std::function<bool(const std::vector<int>&)>& independent,
                              Sense sense);
// Cross-check: best basis by scanning all subsets (|elements| <= 20).
std::vector<int> exhaustive_basis(const std::vector<WeightedIndex>& elements,
                                  const std::function<bool(const std::vector<int>&)>& independent,
                                  Sense sense);

// Shared problem solvers (used by the universal programs and their oracles).
// The subgraph is {e : bits(e) == 1}; distances are hop counts, -1 unreachable.
std::vector<std::vector<int>> subgraph_apsp(const Labelling& bits);
// Diameter of v's component in the subgraph.
int component_diameter(const Labelling& bits, NodeId v);
// Edge count of v's component in the subgraph.
int64_t component_edge_count(const Labelling& bits, NodeId v);
// Number of labelled edges whose endpoints both lie within hop-distance r of v
// in the communication graph (the radius-r view's domain).
int64_t edges_within_radius(const Labelling& bits, NodeId v, int r);

}  // namespace bdc::oracle
