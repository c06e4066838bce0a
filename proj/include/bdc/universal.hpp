#pragma once

#include <functional>

#include "bdc/comm.hpp"
#include "bdc/sim.hpp"

namespace bdc::universal {

// Full copy of the labelling, the auxiliary state of the universal program.
struct FullLabellingAux : sim::AuxState {
  Labelling labels;

  explicit FullLabellingAux(Labelling l) : labels(std::move(l)) {}
  int64_t bit_size(int n) const override;
};

// Per-node solver output from the full labelling; identical code at all nodes.
using Solver = std::function<std::vector<int64_t>(const Labelling&, NodeId)>;

// Broadcasts the changed labels over a BFS tree, updates the stored labelling,
// recomputes the solver output. O(alpha + D) rounds.
class UniversalProgram : public sim::NodeProgram {
 public:
  explicit UniversalProgram(Solver solver) : solver_(std::move(solver)) {}

  void init(const sim::NodeContext& ctx) override;
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override;

  const std::vector<int64_t>& output() const { return output_; }

 private:
  Solver solver_;
  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
  comm::BfsPhase bfs_{0};
  comm::BroadcastPhase bcast_{100, &bfs_, 1};
  std::vector<comm::Item> items_;
  std::vector<int64_t> output_;
};

std::vector<sim::AuxPtr> universal_bootstrap(const Labelling& l);

// Radius-r label view, the auxiliary state of the constant-radius program.
struct RadiusViewAux : sim::AuxState {
  int radius = 1;
  std::map<EdgeId, int64_t> view;  // labels of edges with both endpoints within r

  int64_t bit_size(int n) const override;
};

using LocalSolver =
    std::function<std::vector<int64_t>(const std::map<EdgeId, int64_t>& view, NodeId self)>;

// r phases of neighborhood flooding; each phase forwards only not-yet-forwarded
// changed edges, then announces phase completion. Rounds independent of D.
class Local1Program : public sim::NodeProgram {
 public:
  Local1Program(int radius, LocalSolver solver) : radius_(radius), solver_(std::move(solver)) {}

  void init(const sim::NodeContext& ctx) override;
  void step(int round, const sim::Inbox& in, sim::Outbox& out) override;

  const std::vector<int64_t>& output() const { return output_; }

 private:
  static constexpr int kTagItem = 200;
  static constexpr int kTagDone = 201;

  void enter_phase();

  int radius_;
  LocalSolver solver_;
  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
  int phase_ = 0;
  std::map<int, int> done_received_;            // phase -> count
  std::map<EdgeId, int64_t> received_;          // all items seen, with labels
  std::map<int, std::vector<comm::Item>> inbox_items_;  // phase -> items
  std::set<EdgeId> forwarded_;
  bool finished_ = false;
  std::vector<int64_t> output_;
};

std::vector<sim::AuxPtr> local1_bootstrap(const Labelling& l, int radius);

// Canned solvers shared with the oracle layer.
Solver apsp_solver();      // output: n hop distances in the labelled subgraph (-1 unreachable)
Solver diameter_solver();  // output: single value, own component's diameter
Solver component_edges_solver();
LocalSolver degree_solver();           // radius 1
LocalSolver radius_edge_count_solver(int r);

}  // namespace bdc::universal
