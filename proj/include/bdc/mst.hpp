#pragma once

#include <memory>

#include "bdc/comm.hpp"
#include "bdc/matroid.hpp"
#include "bdc/sim.hpp"

namespace bdc::mst {

// Per-node O(log n)-bit state: tour root, parent, parent-edge labels, own
// minimum outgoing label.
struct MstAux : sim::AuxState {
  ett::NodeAux node;
  int64_t min_out = 0;

  int64_t bit_size(int n) const override;
};

// Centralized initial state: unique minimum spanning tree plus its canonical
// tour labelling.
std::vector<sim::AuxPtr> mst_bootstrap(const Labelling& weights);

// Oracle-side inverse: the maintained tree across all nodes' aux records.
std::vector<EdgeId> decode_tree(const std::vector<sim::AuxPtr>& aux);

// Full batch update: exchange tour windows, broadcast decorated increments,
// solve the reconnection matroid, replay cut/join locally, then the mirrored
// decrement stage. O(alpha + D) rounds, O(log n) bits of state per node.
class MstProgram : public sim::NodeProgram {
 public:
  void init(const sim::NodeContext& ctx) override;
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override;

 private:
  static constexpr int kTagExch1 = 400;
  static constexpr int kTagExch2 = 401;

  void build_windows(const std::map<NodeId, comm::Item>& exch);
  // increments_stage: decrement weights are not yet applied, so every edge is
  // decorated with max(w1, w2); the decrement stage uses the final weights.
  matroid::Decoration decorate(const EdgeId& e, bool increments_stage) const;
  std::vector<comm::Item> incident_changed_items(bool increments) const;
  void replay(const std::vector<matroid::Decoration>& cut_set,
              const std::vector<matroid::Decoration>& join_set,
              const std::vector<matroid::Decoration>& extra_windows);
  void send_exch(int tag);
  comm::Item own_exch_item() const;

  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
  int deg_ = 0;
  int64_t tour_size_ = 0;  // 2(n-1)

  ett::Forest cur_;  // window over incident and decorated edges
  ett::NodeAux my_aux_;
  int64_t my_a_ = 0;

  std::map<NodeId, comm::Item> exch1_, exch2_;
  bool windows_built_ = false;

  comm::BfsPhase bfs_{410};
  comm::BroadcastPhase bcast_plus_{420, &bfs_, 1};
  std::unique_ptr<comm::ExtremeBasisPhase> basis_plus_;
  comm::BroadcastPhase bcast_minus_{440, &bfs_, 1};
  std::unique_ptr<comm::ExtremeBasisPhase> basis_minus_;

  std::vector<matroid::Decoration> e_plus_, e_minus_;
  bool plus_handled_ = false;
  bool plus_replayed_ = false;
  bool exch2_sent_ = false;
  bool minus_ready_ = false;
  bool minus_handled_ = false;
  bool finishing_ = false;
};

}  // namespace bdc::mst
