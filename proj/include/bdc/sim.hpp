#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "bdc/graph.hpp"

namespace bdc::sim {

// One message on one directed link in one round. Default-mode cost is `words`
// (logical O(log n)-bit words); strict mode charges the encoded field bits.
struct Message {
  int tag = 0;
  std::vector<int64_t> fields;
  int words = 1;

  int64_t strict_bits() const;
};

enum class BandwidthMode { Default, Strict };

struct EngineConfig {
  BandwidthMode mode = BandwidthMode::Default;
  // Per-link per-direction per-round capacity in words. Strict mode compares
  // encoded bits against capacity_words * ceil(log2 n).
  int capacity_words = 1;
  int64_t round_ceiling = 0;  // 0: use 10 * (n + m)
  std::ostream* transcript = nullptr;
};

// Per-node auxiliary state carried between batches.
struct AuxState {
  virtual ~AuxState() = default;
  virtual int64_t bit_size(int n) const = 0;
};
using AuxPtr = std::shared_ptr<const AuxState>;

struct Inbox {
  std::map<NodeId, std::vector<Message>> from;
  std::vector<NodeId> newly_halted;  // neighbors that halted at the end of last round
};

class Outbox {
 public:
  void send(NodeId to, Message m) { sends_.emplace_back(to, std::move(m)); }
  const std::vector<std::pair<NodeId, Message>>& sends() const { return sends_; }

 private:
  std::vector<std::pair<NodeId, Message>> sends_;
};

// FIFO per-link send queues releasing at most one message per link per round,
// keeping programs inside the default one-word capacity by construction.
class LinkQueues {
 public:
  void enqueue(NodeId to, Message m) { q_[to].push_back(std::move(m)); }
  bool empty() const;
  void flush(Outbox& out);

 private:
  std::map<NodeId, std::deque<Message>> q_;
};

struct NodeContext {
  NodeId self = 0;
  int n = 0;
  const CommGraph* graph = nullptr;
  std::vector<NodeId> neighbors;
  std::map<EdgeId, int64_t> old_labels;  // incident edges only
  std::map<EdgeId, int64_t> new_labels;
  AuxPtr aux_in;
};

class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(const NodeContext& ctx) = 0;
  // Called once per round (from round 1) until the program halts.
  virtual void step(int round, const Inbox& in, Outbox& out) = 0;

  bool halted() const { return halted_; }
  const AuxPtr& aux_out() const { return aux_out_; }
  const std::map<std::string, int>& phase_rounds() const { return phase_rounds_; }

 protected:
  void halt(AuxPtr aux) {
    halted_ = true;
    aux_out_ = std::move(aux);
  }
  void record_phase(const std::string& name, int round);

  std::map<std::string, int> phase_rounds_;

 private:
  bool halted_ = false;
  AuxPtr aux_out_;
};

struct Metrics {
  int rounds = 0;
  int64_t messages_sent = 0;
  int64_t words_sent = 0;
  int64_t max_aux_bits = 0;
  std::map<std::string, int> phase_breakdown;  // max completion round per phase
};

// Runs one batch to quiescence. programs[v] is node v's program; all must be
// fresh (un-run). Returns metrics; aux outputs stay on the programs.
Metrics run_batch(const std::vector<NodeProgram*>& programs, const CommGraph& g,
                  const Labelling& l1, const Labelling& l2, const std::vector<AuxPtr>& aux_in,
                  const EngineConfig& cfg = {});

}  // namespace bdc::sim
