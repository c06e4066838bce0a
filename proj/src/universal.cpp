#include "bdc/universal.hpp"

#include <algorithm>
#include <bit>

#include "bdc/oracles.hpp"

namespace bdc::universal {

namespace {

int word_bits(int n) {
  int b = std::bit_width(static_cast<unsigned>(n - 1));
  return std::max(b, 1);
}

int label_bits(LabelKind kind, int n) { return kind == LabelKind::Bit ? 1 : 3 * word_bits(n); }

}  // namespace

int64_t FullLabellingAux::bit_size(int n) const {
  int64_t per_edge = 2 * word_bits(n) + label_bits(labels.kind(), n);
  return per_edge * labels.graph().m();
}

void UniversalProgram::init(const sim::NodeContext& ctx) {
  ctx_ = ctx;
  bfs_.init(ctx.self, ctx.neighbors);
  for (const auto& [e, w_old] : ctx.old_labels) {
    int64_t w_new = ctx.new_labels.at(e);
    if (w_old != w_new && e.u == ctx.self) items_.push_back({e.u, e.v, w_new});
  }
  std::sort(items_.begin(), items_.end());
}

void UniversalProgram::step(int round, const sim::Inbox& in, sim::Outbox& out) {
  for (const auto& [from, msgs] : in.from)
    for (const auto& m : msgs) {
      if (bfs_.handles(m.tag))
        bfs_.on_message(from, m);
      else if (bcast_.handles(m.tag))
        bcast_.on_message(from, m);
    }
  if (round == 1) bfs_.start();
  bfs_.advance(queues_);
  if (bfs_.done() && !bcast_.started()) {
    record_phase("bfs", round);
    bcast_.set_items(items_);
    bcast_.start();
  }
  bcast_.advance(queues_);
  queues_.flush(out);
  if (bcast_.done() && queues_.empty()) {
    record_phase("broadcast", round);
    const auto& aux = dynamic_cast<const FullLabellingAux&>(*ctx_.aux_in);
    Labelling l2 = aux.labels;
    for (const auto& item : bcast_.result())
      l2.set(EdgeId::of(static_cast<NodeId>(item[0]), static_cast<NodeId>(item[1])), item[2]);
    output_ = solver_(l2, ctx_.self);
    halt(std::make_shared<FullLabellingAux>(std::move(l2)));
  }
}

std::vector<sim::AuxPtr> universal_bootstrap(const Labelling& l) {
  auto aux = std::make_shared<FullLabellingAux>(l);
  return std::vector<sim::AuxPtr>(l.graph().n(), aux);
}

int64_t RadiusViewAux::bit_size(int n) const {
  return static_cast<int64_t>(view.size()) * (2 * word_bits(n) + 1) + word_bits(n);
}

void Local1Program::init(const sim::NodeContext& ctx) {
  ctx_ = ctx;
}

void Local1Program::enter_phase() {
  ++phase_;
  std::vector<comm::Item> items;
  if (phase_ == 1) {
    for (const auto& [e, w_old] : ctx_.old_labels) {
      int64_t w_new = ctx_.new_labels.at(e);
      if (w_old != w_new && forwarded_.insert(e).second)
        items.push_back({phase_, e.u, e.v, w_new});
    }
  } else {
    for (const auto& prev : inbox_items_[phase_ - 1]) {
      EdgeId e = EdgeId::of(static_cast<NodeId>(prev[0]), static_cast<NodeId>(prev[1]));
      if (forwarded_.insert(e).second) items.push_back({phase_, prev[0], prev[1], prev[2]});
    }
  }
  std::sort(items.begin(), items.end());
  for (NodeId u : ctx_.neighbors) {
    for (const auto& it : items) queues_.enqueue(u, sim::Message{kTagItem, it, 1});
    queues_.enqueue(u, sim::Message{kTagDone, {phase_}, 1});
  }
}

void Local1Program::step(int round, const sim::Inbox& in, sim::Outbox& out) {
  (void)round;
  for (const auto& [from, msgs] : in.from)
    for (const auto& m : msgs) {
      if (m.tag == kTagItem) {
        int p = static_cast<int>(m.fields[0]);
        EdgeId e = EdgeId::of(static_cast<NodeId>(m.fields[1]), static_cast<NodeId>(m.fields[2]));
        received_[e] = m.fields[3];
        inbox_items_[p].push_back({m.fields[1], m.fields[2], m.fields[3]});
      } else if (m.tag == kTagDone) {
        ++done_received_[static_cast<int>(m.fields[0])];
      }
    }
  if (phase_ == 0) enter_phase();
  int deg = static_cast<int>(ctx_.neighbors.size());
  while (!finished_ && done_received_[phase_] == deg) {
    record_phase("phase" + std::to_string(phase_), round);
    if (phase_ < radius_)
      enter_phase();
    else
      finished_ = true;
  }
  queues_.flush(out);
  if (finished_ && queues_.empty()) {
    const auto& aux = dynamic_cast<const RadiusViewAux&>(*ctx_.aux_in);
    auto next = std::make_shared<RadiusViewAux>(aux);
    for (auto& [e, w] : next->view) {
      auto inc = ctx_.new_labels.find(e);
      if (inc != ctx_.new_labels.end()) {
        w = inc->second;
        continue;
      }
      auto rec = received_.find(e);
      if (rec != received_.end()) w = rec->second;
    }
    output_ = solver_(next->view, ctx_.self);
    halt(next);
  }
}

std::vector<sim::AuxPtr> local1_bootstrap(const Labelling& l, int radius) {
  const CommGraph& g = l.graph();
  std::vector<sim::AuxPtr> out;
  for (NodeId v = 0; v < g.n(); ++v) {
    auto aux = std::make_shared<RadiusViewAux>();
    aux->radius = radius;
    auto dist = g.bfs_distances(v);
    for (const auto& e : g.edges())
      if (dist[e.u] <= radius && dist[e.v] <= radius) aux->view[e] = l.at(e);
    out.push_back(aux);
  }
  return out;
}

Solver apsp_solver() {
  return [](const Labelling& l, NodeId v) {
    auto dist = oracle::subgraph_apsp(l);
    std::vector<int64_t> row(dist[v].begin(), dist[v].end());
    return row;
  };
}

Solver diameter_solver() {
  return [](const Labelling& l, NodeId v) {
    return std::vector<int64_t>{oracle::component_diameter(l, v)};
  };
}

Solver component_edges_solver() {
  return [](const Labelling& l, NodeId v) {
    return std::vector<int64_t>{oracle::component_edge_count(l, v)};
  };
}

LocalSolver degree_solver() {
  return [](const std::map<EdgeId, int64_t>& view, NodeId self) {
    int64_t deg = 0;
    for (const auto& [e, w] : view)
      if (w == 1 && (e.u == self || e.v == self)) ++deg;
    return std::vector<int64_t>{deg};
  };
}

LocalSolver radius_edge_count_solver(int) {
  return [](const std::map<EdgeId, int64_t>& view, NodeId) {
    int64_t count = 0;
    for (const auto& [e, w] : view)
      if (w == 1) ++count;
    return std::vector<int64_t>{count};
  };
}

}  // namespace bdc::universal
