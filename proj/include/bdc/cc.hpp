#pragma once

#include "bdc/comm.hpp"
#include "bdc/sim.hpp"
#include "bdc/universal.hpp"

namespace bdc::cc {

// Replicates every node's items to all nodes in O(ceil(total/n) + 1) rounds:
// round-robin spread to intermediaries, then each intermediary broadcasts its
// share.
class AllCastPhase {
 public:
  static constexpr int kTagSpread = 0;
  static constexpr int kTagSpreadEnd = 1;
  static constexpr int kTagBcast = 2;
  static constexpr int kTagBcastEnd = 3;

  explicit AllCastPhase(int tag_base) : base_(tag_base) {}

  void init(NodeId self, int n);
  void set_items(std::vector<comm::Item> items);
  bool handles(int tag) const { return tag >= base_ && tag < base_ + 4; }
  void on_message(NodeId from, const sim::Message& m);
  void start() { started_ = true; }
  bool started() const { return started_; }
  void advance(sim::LinkQueues& out);
  bool done() const { return done_; }
  const std::vector<comm::Item>& result() const { return result_; }

 private:
  int base_;
  NodeId self_ = 0;
  int n_ = 0;
  bool started_ = false;
  bool spread_sent_ = false;
  bool bcast_sent_ = false;
  bool done_ = false;
  int spread_ends_ = 0;
  int bcast_ends_ = 0;
  std::vector<comm::Item> items_;
  std::vector<comm::Item> held_;
  std::vector<comm::Item> result_;
};

// Point-to-point routing through balanced intermediaries; same two-stage
// pattern with direct delivery in the second stage.
class RoutePhase {
 public:
  static constexpr int kTagSpread = 0;
  static constexpr int kTagSpreadEnd = 1;
  static constexpr int kTagDeliver = 2;
  static constexpr int kTagDeliverEnd = 3;

  explicit RoutePhase(int tag_base) : base_(tag_base) {}

  void init(NodeId self, int n);
  void set_items(std::vector<std::pair<NodeId, comm::Item>> items);
  bool handles(int tag) const { return tag >= base_ && tag < base_ + 4; }
  void on_message(NodeId from, const sim::Message& m);
  void start() { started_ = true; }
  bool started() const { return started_; }
  void advance(sim::LinkQueues& out);
  bool done() const { return done_; }
  const std::vector<comm::Item>& delivered() const { return delivered_; }

 private:
  int base_;
  NodeId self_ = 0;
  int n_ = 0;
  bool started_ = false;
  bool spread_sent_ = false;
  bool deliver_sent_ = false;
  bool done_ = false;
  int spread_ends_ = 0;
  int deliver_ends_ = 0;
  std::vector<std::pair<NodeId, comm::Item>> items_;
  std::vector<std::pair<NodeId, comm::Item>> held_;
  std::vector<comm::Item> delivered_;
};

// Changed labels replicated by all-cast instead of a broadcast tree:
// O(ceil(alpha/n) + 1) rounds on the clique.
class CcUniversalProgram : public sim::NodeProgram {
 public:
  explicit CcUniversalProgram(universal::Solver solver) : solver_(std::move(solver)) {}

  void init(const sim::NodeContext& ctx) override;
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override;

  const std::vector<int64_t>& output() const { return output_; }

 private:
  universal::Solver solver_;
  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
  AllCastPhase allcast_{500};
  std::vector<int64_t> output_;
};

// Row of S, column of T, row of P = S*T.
struct MatrixRowAux : sim::AuxState {
  std::vector<int64_t> s_row, t_col, p_row;

  int64_t bit_size(int n) const override;
};

using SparseEntries = std::vector<std::array<int64_t, 3>>;  // (i, j, value), value != 0

// Maintains P = S*T under sparse updates: P2 = P1 + dS*T1 + S1*dT + dS*dT.
// Deltas are replicated to all nodes; only the dS*T1 term needs the
// column-to-row transpose routing. O(ceil(alpha/n) + 1) rounds.
class MatmulProgram : public sim::NodeProgram {
 public:
  // own_deltas: entries this node owns (dS entries of its row, dT entries of
  // its column), encoded as {matrix(0=S,1=T), i, j, value}.
  explicit MatmulProgram(std::vector<comm::Item> own_deltas)
      : own_deltas_(std::move(own_deltas)) {}

  void init(const sim::NodeContext& ctx) override;
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override;

 protected:
  // Hooks for the aggregation stage layered on top (triangle counting).
  virtual void on_product_ready(sim::LinkQueues&) {}
  virtual void on_round(sim::LinkQueues&) {}
  virtual bool may_halt() const { return true; }
  virtual void on_extra_message(NodeId, const sim::Message&) {}

  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
  std::vector<comm::Item> own_deltas_;
  AllCastPhase allcast_{520};
  RoutePhase route_{540};
  bool deltas_done_ = false;
  bool product_done_ = false;
  std::vector<int64_t> s_row_, t_col_, p_row_;  // updated copies
};

std::vector<sim::AuxPtr> matmul_bootstrap(const std::vector<std::vector<int64_t>>& s,
                                          const std::vector<std::vector<int64_t>>& t);

// Triangle counting over a clique whose bit labelling is the adjacency matrix:
// maintains P = A*A, then aggregates sum_v sum_u P[v][u]*A[v][u] / 6.
class TriangleProgram : public MatmulProgram {
 public:
  TriangleProgram();

  void init(const sim::NodeContext& ctx) override;
  int64_t triangles() const { return triangles_; }

 protected:
  void on_product_ready(sim::LinkQueues& out) override;
  void on_round(sim::LinkQueues& out) override;
  bool may_halt() const override;
  void on_extra_message(NodeId from, const sim::Message& m) override;

 private:
  static constexpr int kTagCount = 560;
  static constexpr int kTagTotal = 561;

  bool count_sent_ = false;
  int counts_received_ = 0;
  int64_t count_sum_ = 0;
  bool total_known_ = false;
  bool total_sent_ = false;
  int64_t triangles_ = 0;
};

std::vector<sim::AuxPtr> triangle_bootstrap(const Labelling& adjacency);

}  // namespace bdc::cc
