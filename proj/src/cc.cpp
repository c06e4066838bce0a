#include "bdc/cc.hpp"

#include <algorithm>
#include <bit>

#include "bdc/oracles.hpp"

namespace bdc::cc {

namespace {

int word_bits(int n) {
  int b = std::bit_width(static_cast<unsigned>(n - 1));
  return std::max(b, 1);
}

void require_clique(const sim::NodeContext& ctx) {
  if (static_cast<int>(ctx.neighbors.size()) != ctx.n - 1)
    fail(Err::NotAClique, "node " + std::to_string(ctx.self) + " has degree " +
                              std::to_string(ctx.neighbors.size()) + " on " +
                              std::to_string(ctx.n) + " nodes");
}

}  // namespace

void AllCastPhase::init(NodeId self, int n) {
  self_ = self;
  n_ = n;
}

void AllCastPhase::set_items(std::vector<comm::Item> items) {
  items_ = std::move(items);
  std::sort(items_.begin(), items_.end());
}

void AllCastPhase::on_message(NodeId, const sim::Message& m) {
  int tag = m.tag - base_;
  if (tag == kTagSpread)
    held_.push_back(m.fields);
  else if (tag == kTagSpreadEnd)
    ++spread_ends_;
  else if (tag == kTagBcast)
    result_.push_back(m.fields);
  else if (tag == kTagBcastEnd)
    ++bcast_ends_;
}

void AllCastPhase::advance(sim::LinkQueues& out) {
  if (!started_ || done_) return;
  if (!spread_sent_) {
    spread_sent_ = true;
    for (size_t i = 0; i < items_.size(); ++i) {
      NodeId dest = static_cast<NodeId>((self_ + static_cast<NodeId>(i % n_)) % n_);
      if (dest == self_)
        held_.push_back(items_[i]);
      else
        out.enqueue(dest, sim::Message{base_ + kTagSpread, items_[i], 1});
    }
    for (NodeId u = 0; u < n_; ++u)
      if (u != self_) out.enqueue(u, sim::Message{base_ + kTagSpreadEnd, {}, 1});
  }
  if (spread_sent_ && !bcast_sent_ && spread_ends_ == n_ - 1) {
    bcast_sent_ = true;
    std::sort(held_.begin(), held_.end());
    for (const auto& it : held_) {
      result_.push_back(it);
      for (NodeId u = 0; u < n_; ++u)
        if (u != self_) out.enqueue(u, sim::Message{base_ + kTagBcast, it, 1});
    }
    for (NodeId u = 0; u < n_; ++u)
      if (u != self_) out.enqueue(u, sim::Message{base_ + kTagBcastEnd, {}, 1});
  }
  if (bcast_sent_ && bcast_ends_ == n_ - 1) {
    done_ = true;
    std::sort(result_.begin(), result_.end());
    result_.erase(std::unique(result_.begin(), result_.end()), result_.end());
  }
}

void RoutePhase::init(NodeId self, int n) {
  self_ = self;
  n_ = n;
}

void RoutePhase::set_items(std::vector<std::pair<NodeId, comm::Item>> items) {
  items_ = std::move(items);
  std::sort(items_.begin(), items_.end());
}

void RoutePhase::on_message(NodeId, const sim::Message& m) {
  int tag = m.tag - base_;
  if (tag == kTagSpread) {
    NodeId dest = static_cast<NodeId>(m.fields[0]);
    held_.emplace_back(dest, comm::Item(m.fields.begin() + 1, m.fields.end()));
  } else if (tag == kTagSpreadEnd) {
    ++spread_ends_;
  } else if (tag == kTagDeliver) {
    delivered_.push_back(m.fields);
  } else if (tag == kTagDeliverEnd) {
    ++deliver_ends_;
  }
}

void RoutePhase::advance(sim::LinkQueues& out) {
  if (!started_ || done_) return;
  if (!spread_sent_) {
    spread_sent_ = true;
    for (size_t i = 0; i < items_.size(); ++i) {
      NodeId mid = static_cast<NodeId>((self_ + static_cast<NodeId>(i % n_)) % n_);
      if (mid == self_) {
        held_.push_back(items_[i]);
      } else {
        comm::Item fields{items_[i].first};
        fields.insert(fields.end(), items_[i].second.begin(), items_[i].second.end());
        out.enqueue(mid, sim::Message{base_ + kTagSpread, std::move(fields), 1});
      }
    }
    for (NodeId u = 0; u < n_; ++u)
      if (u != self_) out.enqueue(u, sim::Message{base_ + kTagSpreadEnd, {}, 1});
  }
  if (spread_sent_ && !deliver_sent_ && spread_ends_ == n_ - 1) {
    deliver_sent_ = true;
    std::sort(held_.begin(), held_.end());
    for (const auto& [dest, payload] : held_) {
      if (dest == self_)
        delivered_.push_back(payload);
      else
        out.enqueue(dest, sim::Message{base_ + kTagDeliver, payload, 1});
    }
    for (NodeId u = 0; u < n_; ++u)
      if (u != self_) out.enqueue(u, sim::Message{base_ + kTagDeliverEnd, {}, 1});
  }
  if (deliver_sent_ && deliver_ends_ == n_ - 1) {
    done_ = true;
    std::sort(delivered_.begin(), delivered_.end());
  }
}

void CcUniversalProgram::init(const sim::NodeContext& ctx) {
  ctx_ = ctx;
  require_clique(ctx);
  allcast_.init(ctx.self, ctx.n);
  std::vector<comm::Item> items;
  for (const auto& [e, w_old] : ctx.old_labels) {
    int64_t w_new = ctx.new_labels.at(e);
    if (w_old != w_new && e.u == ctx.self) items.push_back({e.u, e.v, w_new});
  }
  allcast_.set_items(std::move(items));
}

void CcUniversalProgram::step(int round, const sim::Inbox& in, sim::Outbox& out) {
  for (const auto& [from, msgs] : in.from)
    for (const auto& m : msgs)
      if (allcast_.handles(m.tag)) allcast_.on_message(from, m);
  if (round == 1) allcast_.start();
  allcast_.advance(queues_);
  queues_.flush(out);
  if (allcast_.done() && queues_.empty()) {
    record_phase("all-cast", round);
    const auto& aux = dynamic_cast<const universal::FullLabellingAux&>(*ctx_.aux_in);
    Labelling l2 = aux.labels;
    for (const auto& item : allcast_.result())
      l2.set(EdgeId::of(static_cast<NodeId>(item[0]), static_cast<NodeId>(item[1])), item[2]);
    output_ = solver_(l2, ctx_.self);
    halt(std::make_shared<universal::FullLabellingAux>(std::move(l2)));
  }
}

int64_t MatrixRowAux::bit_size(int n) const {
  return 3LL * n * (3 * word_bits(n) + 1);
}

void MatmulProgram::init(const sim::NodeContext& ctx) {
  ctx_ = ctx;
  require_clique(ctx);
  allcast_.init(ctx.self, ctx.n);
  route_.init(ctx.self, ctx.n);
  const auto& aux = dynamic_cast<const MatrixRowAux&>(*ctx.aux_in);
  s_row_ = aux.s_row;
  t_col_ = aux.t_col;
  p_row_ = aux.p_row;
  allcast_.set_items(own_deltas_);
}

void MatmulProgram::step(int round, const sim::Inbox& in, sim::Outbox& out) {
  for (const auto& [from, msgs] : in.from)
    for (const auto& m : msgs) {
      if (allcast_.handles(m.tag))
        allcast_.on_message(from, m);
      else if (route_.handles(m.tag))
        route_.on_message(from, m);
      else
        on_extra_message(from, m);
    }

  if (round == 1) allcast_.start();
  allcast_.advance(queues_);
  if (allcast_.done() && !deltas_done_) {
    deltas_done_ = true;
    record_phase("delta-all-cast", round);
    SparseEntries ds, dt;
    for (const auto& it : allcast_.result()) {
      std::array<int64_t, 3> entry{it[1], it[2], it[3]};
      (it[0] == 0 ? ds : dt).push_back(entry);
    }
    // S1 * dT contribution to the local row (old S row, so before the update).
    std::map<int64_t, int64_t> add;
    for (const auto& [i, j, v] : dt) add[j] += s_row_[i] * v;
    // dS * dT contribution to the local row.
    std::map<int64_t, int64_t> ds_self;
    for (const auto& [i, j, v] : ds)
      if (i == ctx_.self) ds_self[j] += v;
    for (const auto& [i, j, v] : dt) {
      auto it = ds_self.find(i);
      if (it != ds_self.end()) add[j] += it->second * v;
    }
    for (const auto& [j, v] : add) p_row_[j] += v;
    // dS * T1 is computed per column (this node owns column `self` of T) and
    // routed to the affected row owners.
    std::map<NodeId, int64_t> col_vals;
    for (const auto& [i, l, v] : ds) col_vals[static_cast<NodeId>(i)] += v * t_col_[l];
    std::vector<std::pair<NodeId, comm::Item>> routed;
    for (const auto& [row, val] : col_vals)
      if (val != 0) routed.emplace_back(row, comm::Item{ctx_.self, val});
    route_.set_items(std::move(routed));
    route_.start();
    for (const auto& [i, j, v] : ds)
      if (i == ctx_.self) s_row_[j] += v;
    for (const auto& [i, j, v] : dt)
      if (j == ctx_.self) t_col_[i] += v;
  }
  route_.advance(queues_);
  if (route_.done() && !product_done_) {
    product_done_ = true;
    record_phase("transpose-route", round);
    for (const auto& it : route_.delivered()) p_row_[it[0]] += it[1];
    on_product_ready(queues_);
  }
  on_round(queues_);

  queues_.flush(out);

  if (product_done_ && may_halt() && queues_.empty() && !halted()) {
    auto aux = std::make_shared<MatrixRowAux>();
    aux->s_row = s_row_;
    aux->t_col = t_col_;
    aux->p_row = p_row_;
    halt(aux);
  }
}

std::vector<sim::AuxPtr> matmul_bootstrap(const std::vector<std::vector<int64_t>>& s,
                                          const std::vector<std::vector<int64_t>>& t) {
  int n = static_cast<int>(s.size());
  oracle::Matrix p = oracle::matmul_reference(s, t);
  std::vector<sim::AuxPtr> out;
  for (NodeId v = 0; v < n; ++v) {
    auto aux = std::make_shared<MatrixRowAux>();
    aux->s_row = s[v];
    aux->t_col.resize(n);
    for (int i = 0; i < n; ++i) aux->t_col[i] = t[i][v];
    aux->p_row = p[v];
    out.push_back(aux);
  }
  return out;
}

TriangleProgram::TriangleProgram() : MatmulProgram({}) {}

void TriangleProgram::init(const sim::NodeContext& ctx) {
  own_deltas_.clear();
  for (const auto& [e, w_old] : ctx.old_labels) {
    int64_t d = ctx.new_labels.at(e) - w_old;
    if (d == 0) continue;
    NodeId other = (e.u == ctx.self) ? e.v : e.u;
    own_deltas_.push_back({0, ctx.self, other, d});
    own_deltas_.push_back({1, other, ctx.self, d});
  }
  MatmulProgram::init(ctx);
}

void TriangleProgram::on_product_ready(sim::LinkQueues& out) {
  int64_t t_v = 0;
  for (size_t j = 0; j < p_row_.size(); ++j) t_v += p_row_[j] * s_row_[j];
  if (ctx_.self == 0) {
    count_sum_ += t_v;
    count_sent_ = true;
  } else {
    out.enqueue(0, sim::Message{kTagCount, {t_v}, 1});
    count_sent_ = true;
  }
}

void TriangleProgram::on_extra_message(NodeId, const sim::Message& m) {
  if (m.tag == kTagCount) {
    count_sum_ += m.fields[0];
    ++counts_received_;
  } else if (m.tag == kTagTotal) {
    triangles_ = m.fields[0];
    total_known_ = true;
  }
}

void TriangleProgram::on_round(sim::LinkQueues& out) {
  if (ctx_.self != 0 || total_sent_ || !count_sent_) return;
  if (counts_received_ < ctx_.n - 1) return;
  triangles_ = count_sum_ / 6;
  total_known_ = true;
  total_sent_ = true;
  for (NodeId u = 1; u < ctx_.n; ++u)
    out.enqueue(u, sim::Message{kTagTotal, {triangles_}, 1});
}

bool TriangleProgram::may_halt() const {
  if (ctx_.self == 0) return total_sent_;
  return total_known_;
}

std::vector<sim::AuxPtr> triangle_bootstrap(const Labelling& adjacency) {
  const CommGraph& g = adjacency.graph();
  int n = g.n();
  oracle::Matrix a(n, std::vector<int64_t>(n, 0));
  for (const auto& e : g.edges()) {
    int64_t w = adjacency.at(e);
    a[e.u][e.v] = w;
    a[e.v][e.u] = w;
  }
  return matmul_bootstrap(a, a);
}

}  // namespace bdc::cc
