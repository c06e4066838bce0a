#pragma once

#include <memory>
#include <vector>

#include "bdc/comm.hpp"
#include "bdc/graph.hpp"
#include "bdc/sim.hpp"

namespace bdc::test {

inline CommGraph graph_of(int n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return CommGraph::build(n, edges);
}

inline CommGraph path_graph(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return CommGraph::build(n, e);
}

inline CommGraph cycle_graph(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(0, n - 1);
  return CommGraph::build(n, e);
}

inline CommGraph clique_graph(int n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return CommGraph::build(n, e);
}

inline Labelling constant_labelling(const CommGraph& g, LabelKind kind, int64_t value) {
  Labelling l(&g, kind);
  for (const auto& e : g.edges()) l.set(e, value);
  return l;
}

// Aux with no content, for programs whose tests do not carry state.
struct EmptyAux : sim::AuxState {
  int64_t bit_size(int) const override { return 0; }
};

inline std::vector<sim::AuxPtr> empty_aux(int n) {
  auto a = std::make_shared<EmptyAux>();
  return std::vector<sim::AuxPtr>(n, a);
}

// Hosts a BFS phase plus one dependent phase (broadcast or extreme-basis) as a
// runnable node program, the way the algorithm programs drive them.
template <class Phase>
class PhaseHost : public sim::NodeProgram {
 public:
  comm::BfsPhase bfs{0};
  std::unique_ptr<Phase> phase;  // constructed against &bfs by the test
  std::vector<comm::Item> items;

  void init(const sim::NodeContext& ctx) override {
    ctx_ = ctx;
    bfs.init(ctx.self, ctx.neighbors);
  }

  void step(int round, const sim::Inbox& in, sim::Outbox& out) override {
    for (const auto& [from, msgs] : in.from)
      for (const auto& m : msgs) {
        if (bfs.handles(m.tag))
          bfs.on_message(from, m);
        else if (phase && phase->handles(m.tag))
          phase->on_message(from, m);
      }
    if (round == 1) bfs.start();
    bfs.advance(queues_);
    if (bfs.done() && phase && !phase->started()) {
      record_phase("tree", round);
      phase->set_items(items);
      phase->start();
    }
    if (phase) phase->advance(queues_);
    queues_.flush(out);
    bool finished = phase ? phase->done() : bfs.done();
    if (finished && queues_.empty() && !halted()) {
      record_phase("payload", round);
      halt(std::make_shared<EmptyAux>());
    }
  }

  sim::NodeContext ctx_;
  sim::LinkQueues queues_;
};

// Runs one batch over freshly-built programs and returns the metrics.
template <class P>
sim::Metrics run_uniform(std::vector<std::unique_ptr<P>>& programs, const CommGraph& g,
                         const Labelling& l1, const Labelling& l2,
                         const std::vector<sim::AuxPtr>& aux, sim::EngineConfig cfg = {}) {
  std::vector<sim::NodeProgram*> ptrs;
  for (auto& p : programs) ptrs.push_back(p.get());
  return sim::run_batch(ptrs, g, l1, l2, aux, cfg);
}

}  // namespace bdc::test
