#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bdc/errors.hpp"

namespace bdc {

using NodeId = int32_t;

// Undirected edge in canonical form (u < v).
struct EdgeId {
  NodeId u = 0;
  NodeId v = 0;

  static EdgeId of(NodeId a, NodeId b) {
    if (a == b) fail(Err::SelfLoop, "self loop {" + std::to_string(a) + "}");
    return a < b ? EdgeId{a, b} : EdgeId{b, a};
  }
  auto operator<=>(const EdgeId&) const = default;
};

std::string to_string(const EdgeId& e);

// Edge weight / bit label. Weights live in [0, n^C] plus infinity.
inline constexpr int64_t kInfiniteWeight = std::numeric_limits<int64_t>::max();

enum class LabelKind { Bit, Weight };

// Static communication topology. Immutable once built.
class CommGraph {
 public:
  // Validates and builds: connected, simple, undirected. Computes the diameter.
  static CommGraph build(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);

  int n() const { return n_; }
  int64_t m() const { return static_cast<int64_t>(edges_.size()); }
  int diameter() const { return diameter_; }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  const std::vector<EdgeId>& edges() const { return edges_; }

  bool has_edge(const EdgeId& e) const { return edge_index(e) >= 0; }
  // Index of e in edges(), or -1.
  int edge_index(const EdgeId& e) const;
  bool is_clique() const { return m() == static_cast<int64_t>(n_) * (n_ - 1) / 2; }

  std::vector<int> bfs_distances(NodeId src) const;

 private:
  int n_ = 0;
  int diameter_ = 0;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<EdgeId> edges_;  // sorted
};

// Total labelling over E. All labels share one kind.
class Labelling {
 public:
  Labelling() = default;
  Labelling(const CommGraph* g, LabelKind kind, int64_t fill = 0);

  LabelKind kind() const { return kind_; }
  const CommGraph& graph() const { return *g_; }

  int64_t at(const EdgeId& e) const;
  void set(const EdgeId& e, int64_t value);

  bool operator==(const Labelling& o) const { return values_ == o.values_ && kind_ == o.kind_; }

 private:
  const CommGraph* g_ = nullptr;
  LabelKind kind_ = LabelKind::Bit;
  std::vector<int64_t> values_;  // indexed like graph().edges()
};

// One batch of label changes; |changes| = alpha.
struct BatchUpdate {
  std::vector<std::pair<EdgeId, int64_t>> changes;
  size_t alpha() const { return changes.size(); }
};

struct AppliedBatch {
  Labelling after;
  std::vector<EdgeId> changed;  // sorted; the edge set E-dot
};

// Applies b to l1. Rejects unknown edges and no-op changes so alpha stays exact.
AppliedBatch apply_batch(const Labelling& l1, const BatchUpdate& b);

struct WeightSplit {
  std::vector<EdgeId> increments;  // w2 > w1
  std::vector<EdgeId> decrements;  // w2 < w1
};

WeightSplit split_weight_batch(const Labelling& l1, const Labelling& l2,
                               const std::vector<EdgeId>& changed);

// --- file formats ---
// Graph file: line 1 "n m", then "u v" per edge.
// Labelling file: "u v w" per edge, "inf" for infinite weight.
// Batch trace: blocks separated by "---" lines; block lines "u v new_label".

CommGraph load_graph(std::istream& in);
void save_graph(const CommGraph& g, std::ostream& out);
Labelling load_labelling(std::istream& in, const CommGraph& g, LabelKind kind);
void save_labelling(const Labelling& l, std::ostream& out);
std::vector<BatchUpdate> load_batch_trace(std::istream& in);
void save_batch_trace(const std::vector<BatchUpdate>& trace, std::ostream& out);

}  // namespace bdc
