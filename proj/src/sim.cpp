#include "bdc/sim.hpp"

#include <algorithm>
#include <bit>

namespace bdc::sim {

int64_t Message::strict_bits() const {
  int64_t bits = 8;  // tag
  for (int64_t f : fields) {
    uint64_t mag = f < 0 ? static_cast<uint64_t>(-(f + 1)) + 1 : static_cast<uint64_t>(f);
    int w = std::bit_width(mag);
    bits += std::max(w, 1) + 1;  // sign bit
  }
  return bits;
}

bool LinkQueues::empty() const {
  for (const auto& [to, dq] : q_)
    if (!dq.empty()) return false;
  return true;
}

void LinkQueues::flush(Outbox& out) {
  for (auto& [to, dq] : q_) {
    if (dq.empty()) continue;
    out.send(to, std::move(dq.front()));
    dq.pop_front();
  }
}

void NodeProgram::record_phase(const std::string& name, int round) {
  auto [it, inserted] = phase_rounds_.emplace(name, round);
  if (!inserted) it->second = std::max(it->second, round);
}

namespace {

int word_bits(int n) {
  int b = std::bit_width(static_cast<unsigned>(n - 1));
  return std::max(b, 1);
}

}  // namespace

Metrics run_batch(const std::vector<NodeProgram*>& programs, const CommGraph& g,
                  const Labelling& l1, const Labelling& l2, const std::vector<AuxPtr>& aux_in,
                  const EngineConfig& cfg) {
  int n = g.n();
  if (static_cast<int>(programs.size()) != n || static_cast<int>(aux_in.size()) != n)
    fail(Err::InfeasibleParams, "one program and one aux state per node required");

  for (NodeId v = 0; v < n; ++v) {
    NodeContext ctx;
    ctx.self = v;
    ctx.n = n;
    ctx.graph = &g;
    ctx.neighbors = g.neighbors(v);
    for (NodeId u : ctx.neighbors) {
      EdgeId e = EdgeId::of(v, u);
      ctx.old_labels[e] = l1.at(e);
      ctx.new_labels[e] = l2.at(e);
    }
    ctx.aux_in = aux_in[v];
    programs[v]->init(ctx);
  }

  int64_t ceiling = cfg.round_ceiling > 0 ? cfg.round_ceiling : 10 * (n + g.m());
  int64_t cap_bits = static_cast<int64_t>(cfg.capacity_words) * word_bits(n);

  Metrics metrics;
  std::map<std::pair<NodeId, NodeId>, std::vector<Message>> in_flight;
  std::vector<NodeId> just_halted;
  std::vector<int> halt_round(n, 0);

  int round = 0;
  while (true) {
    ++round;
    if (round > ceiling) fail(Err::NonTermination, "round ceiling exceeded");

    std::map<NodeId, Inbox> inboxes;
    for (auto& [link, msgs] : in_flight) {
      auto [from, to] = link;
      if (programs[to]->halted())
        fail(Err::MessageToHaltedNode,
             "message from " + std::to_string(from) + " to halted node " + std::to_string(to));
      inboxes[to].from[from] = std::move(msgs);
    }
    in_flight.clear();
    for (NodeId h : just_halted)
      for (NodeId u : g.neighbors(h))
        if (!programs[u]->halted()) inboxes[u].newly_halted.push_back(h);
    just_halted.clear();

    static const Inbox kEmptyInbox;
    for (NodeId v = 0; v < n; ++v) {
      if (programs[v]->halted()) continue;
      auto it = inboxes.find(v);
      const Inbox& in = it == inboxes.end() ? kEmptyInbox : it->second;
      Outbox out;
      programs[v]->step(round, in, out);

      std::map<NodeId, std::pair<int64_t, int64_t>> load;  // neighbor -> (words, bits)
      for (const auto& [to, m] : out.sends()) {
        if (!g.has_edge(EdgeId::of(v, to)))
          fail(Err::UnknownEdge, "send to non-neighbor " + std::to_string(to));
        auto& [w, b] = load[to];
        w += m.words;
        b += m.strict_bits();
        ++metrics.messages_sent;
        metrics.words_sent += m.words;
        if (cfg.transcript)
          *cfg.transcript << round << ' ' << v << ' ' << to << ' ' << m.tag << ' ' << m.words
                          << '\n';
        in_flight[{v, to}].push_back(m);
      }
      for (const auto& [to, wb] : load) {
        bool over = cfg.mode == BandwidthMode::Default ? wb.first > cfg.capacity_words
                                                       : wb.second > cap_bits;
        if (over)
          fail(Err::BandwidthExceeded, "link " + std::to_string(v) + "->" + std::to_string(to) +
                                           " over capacity in round " + std::to_string(round));
      }
      if (programs[v]->halted()) {
        halt_round[v] = round;
        just_halted.push_back(v);
      }
    }

    bool all_halted = std::all_of(programs.begin(), programs.end(),
                                  [](NodeProgram* p) { return p->halted(); });
    if (all_halted) {
      if (!in_flight.empty()) {
        auto [from, to] = in_flight.begin()->first;
        fail(Err::MessageToHaltedNode,
             "message from " + std::to_string(from) + " to halted node " + std::to_string(to));
      }
      break;
    }
  }

  metrics.rounds = *std::max_element(halt_round.begin(), halt_round.end());
  for (NodeId v = 0; v < n; ++v) {
    const auto& aux = programs[v]->aux_out();
    if (aux) metrics.max_aux_bits = std::max(metrics.max_aux_bits, aux->bit_size(n));
    for (const auto& [name, r] : programs[v]->phase_rounds()) {
      auto [it, inserted] = metrics.phase_breakdown.emplace(name, r);
      if (!inserted) it->second = std::max(it->second, r);
    }
  }
  return metrics;
}

}  // namespace bdc::sim
