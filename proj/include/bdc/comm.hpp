#pragma once

#include <deque>
#include <functional>
#include <set>
#include <vector>

#include "bdc/sim.hpp"

namespace bdc::comm {

// Broadcast/convergecast payload; compared lexicographically as the sort key.
using Item = std::vector<int64_t>;

// Rooted BFS spanning tree phase. The root is node 0 (ids are dense, so the
// minimum id is known up front). Parent tie-break: minimum-id sender among the
// first round's discoverers. Every node sends exactly one message per link
// (a wave to non-parents, a child announcement to the parent), so a node is
// locally done once it has heard from every neighbor.
class BfsPhase {
 public:
  static constexpr int kTagWave = 0;
  static constexpr int kTagChild = 1;

  explicit BfsPhase(int tag_base) : base_(tag_base) {}

  void init(NodeId self, const std::vector<NodeId>& neighbors);
  bool handles(int tag) const { return tag >= base_ && tag < base_ + 2; }
  void on_message(NodeId from, const sim::Message& m);
  void start() { started_ = true; }
  bool started() const { return started_; }
  void advance(sim::LinkQueues& out);
  bool done() const { return done_; }

  NodeId parent() const { return parent_; }
  int depth() const { return depth_; }
  bool is_root() const { return self_ == 0; }
  const std::vector<NodeId>& children() const { return children_; }

 private:
  int base_;
  NodeId self_ = 0;
  std::vector<NodeId> neighbors_;
  bool started_ = false;
  bool sent_ = false;
  bool adopted_ = false;
  bool done_ = false;
  NodeId parent_ = 0;
  int depth_ = 0;
  std::vector<NodeId> wave_candidates_;  // senders seen before adoption commits
  int reported_ = 0;
  std::vector<NodeId> children_;
};

// Pipelined set broadcast over the BFS tree: sorted-merge upcast of all local
// item sets to the root, which streams the merged set straight back down. Every
// node ends holding the deduplicated union in ascending order.
class BroadcastPhase {
 public:
  static constexpr int kTagUpItem = 0;
  static constexpr int kTagUpEnd = 1;
  static constexpr int kTagDownItem = 2;
  static constexpr int kTagDownEnd = 3;

  BroadcastPhase(int tag_base, const BfsPhase* tree, int item_words = 1)
      : base_(tag_base), tree_(tree), item_words_(item_words) {}

  void set_items(std::vector<Item> sorted_items);
  bool handles(int tag) const { return tag >= base_ && tag < base_ + 4; }
  void on_message(NodeId from, const sim::Message& m);
  void start() { started_ = true; }
  bool started() const { return started_; }
  void advance(sim::LinkQueues& out);
  bool done() const { return done_; }
  const std::vector<Item>& result() const { return result_; }

 private:
  bool up_ready() const;
  bool pop_min(Item* out);

  int base_;
  const BfsPhase* tree_;
  int item_words_;
  bool started_ = false;
  bool up_ended_ = false;
  bool done_ = false;
  std::deque<Item> own_;
  std::map<NodeId, std::deque<Item>> child_buf_;
  std::set<NodeId> child_ended_;
  bool have_last_ = false;
  Item last_emitted_;
  std::deque<Item> down_in_;
  bool down_end_in_ = false;
  std::vector<Item> result_;
};

// Pipelined greedy filter up the BFS tree followed by a broadcast of the
// retained basis. Items are processed in global key order (ascending, or
// descending when `descending` is set); admit(kept, item) decides retention.
// Every node ends holding the basis in processing order.
class ExtremeBasisPhase {
 public:
  using AdmitFn = std::function<bool(const std::vector<Item>& kept, const Item& item)>;

  static constexpr int kTagUpItem = 0;
  static constexpr int kTagUpEnd = 1;
  static constexpr int kTagDownItem = 2;
  static constexpr int kTagDownEnd = 3;

  ExtremeBasisPhase(int tag_base, const BfsPhase* tree, AdmitFn admit, bool descending,
                    int item_words = 1)
      : base_(tag_base), tree_(tree), admit_(std::move(admit)), descending_(descending),
        item_words_(item_words) {}

  void set_items(std::vector<Item> items);  // sorted internally
  bool handles(int tag) const { return tag >= base_ && tag < base_ + 4; }
  void on_message(NodeId from, const sim::Message& m);
  void start() { started_ = true; }
  bool started() const { return started_; }
  void advance(sim::LinkQueues& out);
  bool done() const { return done_; }
  const std::vector<Item>& basis() const { return basis_; }

 private:
  bool before(const Item& a, const Item& b) const { return descending_ ? b < a : a < b; }
  bool up_ready() const;
  bool pop_min(Item* out);

  int base_;
  const BfsPhase* tree_;
  AdmitFn admit_;
  bool descending_;
  int item_words_;
  bool started_ = false;
  bool up_ended_ = false;
  bool down_started_ = false;
  bool done_ = false;
  std::deque<Item> own_;
  std::map<NodeId, std::deque<Item>> child_buf_;
  std::set<NodeId> child_ended_;
  bool have_last_ = false;
  Item last_seen_;
  std::vector<Item> kept_;       // local greedy state (root: the basis)
  std::vector<Item> discarded_;  // root-side sample for the monotonicity check
  std::deque<Item> down_in_;
  bool down_end_in_ = false;
  std::vector<Item> basis_;
};

}  // namespace bdc::comm
