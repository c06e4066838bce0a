#include "bdc/orientation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace bdc::orient {

namespace {

int word_bits(int n) {
  int b = std::bit_width(static_cast<unsigned>(n - 1));
  return std::max(b, 1);
}

int iteration_rounds(int d) {
  return static_cast<int>(std::ceil((d + 1) * std::log(2.0) / std::log(1.5)));
}

}  // namespace

int64_t NeighborhoodViewAux::bit_size(int n) const {
  int64_t present = 0;
  for (const auto& [e, w] : view)
    if (w == 1) ++present;
  return present * 2 * word_bits(n) + word_bits(n);
}

int iteration_of_round(int round) {
  int d = 1;
  int cum = iteration_rounds(1);
  while (round > cum) {
    ++d;
    cum += iteration_rounds(d);
  }
  return d;
}

int64_t halt_threshold(int iteration) {
  return static_cast<int64_t>(3.0 * std::sqrt(std::pow(2.0, iteration + 1)));
}

void CliqueProgram::init(const sim::NodeContext& ctx) {
  ctx_ = ctx;
  for (const auto& [e, w_old] : ctx.old_labels)
    if (ctx.new_labels.at(e) != w_old) unoriented_.insert(e);
  view_ = dynamic_cast<const NeighborhoodViewAux&>(*ctx.aux_in).view;
}

void CliqueProgram::step(int round, const sim::Inbox& in, sim::Outbox& out) {
  for (const auto& [from, msgs] : in.from)
    for (const auto& m : msgs) {
      if (m.tag == kTagOrient) {
        EdgeId e = EdgeId::of(ctx_.self, from);
        if (out_.count(e)) {
          // simultaneous claims: the edge points toward the higher id
          if (ctx_.self > from) out_.erase(e);
        } else {
          unoriented_.erase(e);
        }
        ++neighbor_halts_;
      } else if (m.tag == kTagPhaseHalt) {
        ++neighbor_halts_;
      } else if (m.tag == kTagItem) {
        EdgeId e = EdgeId::of(static_cast<NodeId>(m.fields[0]), static_cast<NodeId>(m.fields[1]));
        overrides_[e] = m.fields[2];
      } else if (m.tag == kTagEnd) {
        ++ends_received_;
      }
    }

  if (!phase_halted_) {
    int d = iteration_of_round(round);
    if (static_cast<int64_t>(unoriented_.size()) <= halt_threshold(d)) {
      phase_halted_ = true;
      phase_halt_round_ = round;
      record_phase("orientation", round);
      for (const auto& e : unoriented_) {
        out_.insert(e);
        NodeId other = e.u == ctx_.self ? e.v : e.u;
        queues_.enqueue(other, sim::Message{kTagOrient, {}, 1});
      }
      for (NodeId u : ctx_.neighbors)
        if (!unoriented_.count(EdgeId::of(ctx_.self, u)))
          queues_.enqueue(u, sim::Message{kTagPhaseHalt, {}, 1});
      unoriented_.clear();
    }
  }

  int deg = static_cast<int>(ctx_.neighbors.size());
  if (phase_halted_ && neighbor_halts_ == deg && !items_sent_) {
    items_sent_ = true;
    record_phase("orientation-settled", round);
    for (NodeId u : ctx_.neighbors) {
      for (const auto& e : out_)
        queues_.enqueue(u, sim::Message{kTagItem, {e.u, e.v, ctx_.new_labels.at(e)}, 1});
      queues_.enqueue(u, sim::Message{kTagEnd, {}, 1});
    }
  }

  queues_.flush(out);

  if (items_sent_ && ends_received_ == deg && queues_.empty()) {
    for (auto& [e, w] : view_) {
      auto inc = ctx_.new_labels.find(e);
      if (inc != ctx_.new_labels.end()) {
        w = inc->second;
        continue;
      }
      auto ov = overrides_.find(e);
      if (ov != overrides_.end()) w = ov->second;
    }
    auto aux = std::make_shared<NeighborhoodViewAux>();
    aux->view = view_;
    view_ready_ = true;
    halt(aux);
  }
}

std::vector<EdgeId> CliqueProgram::oriented_out() const {
  return std::vector<EdgeId>(out_.begin(), out_.end());
}

std::vector<sim::AuxPtr> clique_bootstrap(const Labelling& l) {
  const CommGraph& g = l.graph();
  std::vector<sim::AuxPtr> out;
  for (NodeId v = 0; v < g.n(); ++v) {
    auto aux = std::make_shared<NeighborhoodViewAux>();
    std::set<NodeId> ball(g.neighbors(v).begin(), g.neighbors(v).end());
    ball.insert(v);
    for (const auto& e : g.edges())
      if (ball.count(e.u) && ball.count(e.v)) aux->view[e] = l.at(e);
    out.push_back(aux);
  }
  return out;
}

std::vector<std::vector<NodeId>> enumerate_cliques(const std::map<EdgeId, int64_t>& view,
                                                   NodeId self, int k) {
  if (k < 3) fail(Err::KTooSmall, "clique size must be at least 3");
  auto present = [&](NodeId a, NodeId b) {
    auto it = view.find(EdgeId::of(a, b));
    return it != view.end() && it->second == 1;
  };
  std::vector<NodeId> candidates;
  for (const auto& [e, w] : view) {
    if (w != 1) continue;
    if (e.u == self) candidates.push_back(e.v);
    if (e.v == self) candidates.push_back(e.u);
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> cur{self};
  std::function<void(size_t)> extend = [&](size_t from) {
    if (static_cast<int>(cur.size()) == k) {
      auto sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(sorted);
      return;
    }
    for (size_t i = from; i < candidates.size(); ++i) {
      NodeId w = candidates[i];
      bool ok = true;
      for (NodeId u : cur)
        if (!present(u, w)) {
          ok = false;
          break;
        }
      if (ok) {
        cur.push_back(w);
        extend(i + 1);
        cur.pop_back();
      }
    }
  };
  extend(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bdc::orient
