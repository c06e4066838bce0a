#pragma once

#include <stdexcept>
#include <string>

namespace bdc {

enum class Err {
  Disconnected,
  DuplicateEdge,
  SelfLoop,
  BadNodeId,
  UnknownEdge,
  NoOpChange,
  BandwidthExceeded,
  MessageToHaltedNode,
  NonTermination,
  SameTree,
  NotTreeEdge,
  InconsistentWindow,
  FilterNotMonotone,
  KTooSmall,
  NotAClique,
  AsymmetricBatch,
  InconsistentAux,
  BasisRankMismatch,
  InfeasibleSpanningTree,
  InfeasibleParams,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace bdc
