#include "bdc/mst.hpp"

#include <algorithm>
#include <bit>

#include "bdc/oracles.hpp"

namespace bdc::mst {

namespace {

int word_bits(int n) {
  int b = std::bit_width(static_cast<unsigned>(n - 1));
  return std::max(b, 1);
}

std::vector<matroid::Decoration> decode_items(const std::vector<comm::Item>& items) {
  std::vector<matroid::Decoration> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(matroid::Decoration::from_item(it));
  return out;
}

void sort_by_key(std::vector<matroid::Decoration>& decs) {
  std::sort(decs.begin(), decs.end(), [](const matroid::Decoration& a,
                                         const matroid::Decoration& b) { return a.key() < b.key(); });
}

}  // namespace

int64_t MstAux::bit_size(int n) const { return 5 * word_bits(n) + 3; }

std::vector<sim::AuxPtr> mst_bootstrap(const Labelling& weights) {
  const CommGraph& g = weights.graph();
  auto tree = oracle::kruskal_mst(weights);
  ett::Forest f = ett::build_forest(g.n(), tree);
  std::vector<sim::AuxPtr> out;
  for (NodeId v = 0; v < g.n(); ++v) {
    auto aux = std::make_shared<MstAux>();
    aux->node = ett::encode_aux(f, v);
    aux->min_out = f.vars(v).min_out;
    out.push_back(aux);
  }
  return out;
}

std::vector<EdgeId> decode_tree(const std::vector<sim::AuxPtr>& aux) {
  std::vector<ett::NodeAux> nodes;
  nodes.reserve(aux.size());
  for (const auto& a : aux) nodes.push_back(dynamic_cast<const MstAux&>(*a).node);
  return ett::tree_edges(ett::decode_aux(nodes));
}

void MstProgram::init(const sim::NodeContext& ctx) {
  ctx_ = ctx;
  deg_ = static_cast<int>(ctx.neighbors.size());
  tour_size_ = 2 * static_cast<int64_t>(ctx.n - 1);
  const auto& aux = dynamic_cast<const MstAux&>(*ctx.aux_in);
  my_aux_ = aux.node;
  my_a_ = aux.min_out;
  bfs_.init(ctx.self, ctx.neighbors);
}

comm::Item MstProgram::own_exch_item() const {
  return {my_aux_.root, my_aux_.parent, my_a_, my_aux_.label_in, my_aux_.label_out};
}

void MstProgram::send_exch(int tag) {
  for (NodeId u : ctx_.neighbors) queues_.enqueue(u, sim::Message{tag, own_exch_item(), 1});
}

void MstProgram::build_windows(const std::map<NodeId, comm::Item>& exch) {
  cur_ = ett::Forest{};
  NodeId self = ctx_.self;
  cur_.track_node(self, ett::NodeVars{my_aux_.root, tour_size_, my_a_});
  for (const auto& [u, it] : exch)
    cur_.track_node(u, ett::NodeVars{static_cast<NodeId>(it[0]), tour_size_, it[2]});
  for (const auto& [u, it] : exch) {
    EdgeId e = EdgeId::of(self, u);
    NodeId parent_u = static_cast<NodeId>(it[1]);
    int64_t self_to_u = ett::kNone, u_to_self = ett::kNone;
    if (parent_u == self) {
      self_to_u = it[3];  // L(p(u), u)
      u_to_self = it[4];  // L(u, p(u))
    } else if (my_aux_.parent == u) {
      u_to_self = my_aux_.label_in;
      self_to_u = my_aux_.label_out;
    }
    if (e.u == self)
      cur_.track_edge(e, self_to_u, u_to_self);
    else
      cur_.track_edge(e, u_to_self, self_to_u);
  }
}

matroid::Decoration MstProgram::decorate(const EdgeId& e, bool increments_stage) const {
  matroid::Decoration d;
  d.e = e;
  d.w_old = ctx_.old_labels.at(e);
  d.w_new = ctx_.new_labels.at(e);
  if (increments_stage) d.w_new = std::max(d.w_old, d.w_new);
  d.luv = cur_.label(e.u, e.v);
  d.lvu = cur_.label(e.v, e.u);
  d.u_vars = cur_.vars(e.u);
  d.v_vars = cur_.vars(e.v);
  return d;
}

std::vector<comm::Item> MstProgram::incident_changed_items(bool increments) const {
  std::vector<comm::Item> items;
  for (const auto& [e, w_old] : ctx_.old_labels) {
    if (e.u != ctx_.self) continue;
    int64_t w_new = ctx_.new_labels.at(e);
    if (w_new == w_old) continue;
    if ((w_new > w_old) == increments) items.push_back(decorate(e, increments).to_item());
  }
  std::sort(items.begin(), items.end());
  return items;
}

void MstProgram::replay(const std::vector<matroid::Decoration>& cut_set,
                        const std::vector<matroid::Decoration>& join_set,
                        const std::vector<matroid::Decoration>& extra_windows) {
  for (const auto& d : extra_windows) matroid::add_window(cur_, d);
  auto cuts = cut_set;
  auto joins = join_set;
  sort_by_key(cuts);
  sort_by_key(joins);
  for (const auto& d : cuts) cur_.cut(d.e);
  for (const auto& d : joins) cur_.join(d.e);
  my_aux_ = ett::encode_aux(cur_, ctx_.self);
  my_a_ = cur_.vars(ctx_.self).min_out;
}

void MstProgram::step(int round, const sim::Inbox& in, sim::Outbox& out) {
  for (const auto& [from, msgs] : in.from)
    for (const auto& m : msgs) {
      if (m.tag == kTagExch1)
        exch1_[from] = m.fields;
      else if (m.tag == kTagExch2)
        exch2_[from] = m.fields;
      else if (bfs_.handles(m.tag))
        bfs_.on_message(from, m);
      else if (bcast_plus_.handles(m.tag))
        bcast_plus_.on_message(from, m);
      else if (basis_plus_ && basis_plus_->handles(m.tag))
        basis_plus_->on_message(from, m);
      else if (bcast_minus_.handles(m.tag))
        bcast_minus_.on_message(from, m);
      else if (basis_minus_ && basis_minus_->handles(m.tag))
        basis_minus_->on_message(from, m);
      else
        fail(Err::InconsistentWindow, "unroutable message tag " + std::to_string(m.tag));
    }

  if (round == 1) send_exch(kTagExch1);
  if (!windows_built_ && static_cast<int>(exch1_.size()) == deg_) {
    windows_built_ = true;
    record_phase("exchange", round);
    build_windows(exch1_);
    bfs_.start();
  }
  bfs_.advance(queues_);
  if (bfs_.done() && !bcast_plus_.started()) {
    record_phase("bfs", round);
    bcast_plus_.set_items(incident_changed_items(true));
    bcast_plus_.start();
  }
  bcast_plus_.advance(queues_);
  if (bcast_plus_.done() && !plus_handled_) {
    plus_handled_ = true;
    record_phase("broadcast-increments", round);
    e_plus_ = decode_items(bcast_plus_.result());
    if (e_plus_.empty()) {
      exch2_sent_ = true;
      send_exch(kTagExch2);
    } else {
      basis_plus_ = std::make_unique<comm::ExtremeBasisPhase>(
          430, &bfs_, matroid::contraction_admit(e_plus_), false, 1);
      std::vector<comm::Item> candidates;
      for (const auto& [e, w_old] : ctx_.old_labels) {
        if (e.u != ctx_.self) continue;
        if (std::max(w_old, ctx_.new_labels.at(e)) == kInfiniteWeight) continue;
        candidates.push_back(decorate(e, true).to_item());
      }
      basis_plus_->set_items(std::move(candidates));
      basis_plus_->start();
    }
  }
  if (basis_plus_) {
    basis_plus_->advance(queues_);
    if (basis_plus_->done() && !plus_replayed_) {
      plus_replayed_ = true;
      record_phase("basis-increments", round);
      auto a_star = decode_items(basis_plus_->basis());
      std::set<EdgeId> in_basis;
      for (const auto& d : a_star) in_basis.insert(d.e);
      std::vector<matroid::Decoration> cuts, joins, extra = e_plus_;
      size_t tree_increments = 0;
      for (const auto& d : e_plus_) {
        if (!d.is_tree_edge()) continue;
        ++tree_increments;
        if (!in_basis.count(d.e)) cuts.push_back(d);
      }
      for (const auto& d : a_star) {
        extra.push_back(d);
        if (!d.is_tree_edge()) joins.push_back(d);
      }
      if (a_star.size() != tree_increments)
        fail(Err::BasisRankMismatch, "reconnection basis rank " + std::to_string(a_star.size()) +
                                         ", expected " + std::to_string(tree_increments));
      replay(cuts, joins, extra);
      exch2_sent_ = true;
      send_exch(kTagExch2);
    }
  }
  if (exch2_sent_ && !minus_ready_ && static_cast<int>(exch2_.size()) == deg_) {
    minus_ready_ = true;
    record_phase("re-exchange", round);
    build_windows(exch2_);
    bcast_minus_.set_items(incident_changed_items(false));
    bcast_minus_.start();
  }
  bcast_minus_.advance(queues_);
  if (bcast_minus_.done() && !minus_handled_) {
    minus_handled_ = true;
    record_phase("broadcast-decrements", round);
    e_minus_ = decode_items(bcast_minus_.result());
    if (e_minus_.empty()) {
      finishing_ = true;
    } else {
      basis_minus_ = std::make_unique<comm::ExtremeBasisPhase>(
          450, &bfs_, matroid::dual_admit(e_minus_), true, 1);
      std::vector<comm::Item> elements;
      for (const auto& [e, w_old] : ctx_.old_labels) {
        if (e.u != ctx_.self) continue;
        bool decrement = ctx_.new_labels.at(e) < w_old;
        if (cur_.is_tree_edge(e) || decrement) elements.push_back(decorate(e, false).to_item());
      }
      basis_minus_->set_items(std::move(elements));
      basis_minus_->start();
    }
  }
  if (basis_minus_) {
    basis_minus_->advance(queues_);
    if (basis_minus_->done() && !finishing_) {
      record_phase("basis-decrements", round);
      auto b_star = decode_items(basis_minus_->basis());
      std::set<EdgeId> removed;
      for (const auto& d : b_star) removed.insert(d.e);
      std::vector<matroid::Decoration> cuts, joins, extra = e_minus_;
      size_t non_tree_decrements = 0;
      for (const auto& d : b_star) {
        extra.push_back(d);
        if (d.is_tree_edge()) cuts.push_back(d);
      }
      for (const auto& d : e_minus_) {
        if (!d.is_tree_edge()) ++non_tree_decrements;
        if (!d.is_tree_edge() && !removed.count(d.e)) joins.push_back(d);
      }
      if (b_star.size() != non_tree_decrements)
        fail(Err::BasisRankMismatch, "removal basis rank " + std::to_string(b_star.size()) +
                                         ", expected " + std::to_string(non_tree_decrements));
      replay(cuts, joins, extra);
      finishing_ = true;
    }
  }

  queues_.flush(out);

  if (finishing_ && queues_.empty() && !halted()) {
    auto aux = std::make_shared<MstAux>();
    aux->node = my_aux_;
    aux->min_out = my_a_;
    halt(aux);
  }
}

}  // namespace bdc::mst
