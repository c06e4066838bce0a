#pragma once

#include <set>

#include "bdc/comm.hpp"
#include "bdc/sim.hpp"

namespace bdc::orient {

// Presence bits over the node's induced radius-1 subgraph edges.
struct NeighborhoodViewAux : sim::AuxState {
  std::map<EdgeId, int64_t> view;  // domain: edges with both endpoints in N[v]

  int64_t bit_size(int n) const override;
};

// Iteration schedule of the low-outdegree orientation: iteration d lasts
// ceil(log_{3/2} 2^(d+1)) rounds; a node with at most f(d) = 3 * sqrt(2^(d+1))
// unoriented incident changed edges orients them outward and phase-halts.
int iteration_of_round(int round);
int64_t halt_threshold(int iteration);

// Orients the changed-edge graph, exchanges outward-edge label sets, updates
// the radius-1 view. O(sqrt(alpha) + log^2 alpha) rounds.
class CliqueProgram : public sim::NodeProgram {
 public:
  void init(const sim::NodeContext& ctx) override;
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override;

  // Outward-oriented changed edges after conflict resolution.
  std::vector<EdgeId> oriented_out() const;
  int phase_halt_round() const { return phase_halt_round_; }
  const std::map<EdgeId, int64_t>& view() const { return view_; }

 private:
  static constexpr int kTagOrient = 300;     // sender phase-halts, edge oriented outward
  static constexpr int kTagPhaseHalt = 301;  // sender phase-halts, no shared unoriented edge
  static constexpr int kTagItem = 302;       // one outward changed edge with its new label
  static constexpr int kTagEnd = 303;

  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
  std::set<EdgeId> unoriented_;  // incident changed edges not yet oriented
  std::set<EdgeId> out_;         // oriented outward by this node
  bool phase_halted_ = false;
  int phase_halt_round_ = 0;
  int neighbor_halts_ = 0;
  bool items_sent_ = false;
  int ends_received_ = 0;
  std::map<EdgeId, int64_t> overrides_;
  std::map<EdgeId, int64_t> view_;
  bool view_ready_ = false;
};

std::vector<sim::AuxPtr> clique_bootstrap(const Labelling& l);

// k-cliques of the viewed subgraph containing self; local post-processing.
std::vector<std::vector<NodeId>> enumerate_cliques(const std::map<EdgeId, int64_t>& view,
                                                   NodeId self, int k);

}  // namespace bdc::orient
