#pragma once

#include "bdc/comm.hpp"
#include "bdc/ett.hpp"
#include "bdc/oracles.hpp"

namespace bdc::matroid {

// One-word decorated edge: the tour-forest window over the edge (directed
// labels plus both endpoints' variables) and its old/new weights.
struct Decoration {
  EdgeId e;
  int64_t w_new = 0;
  int64_t w_old = 0;
  int64_t luv = ett::kNone;  // L(u,v) for canonical u < v
  int64_t lvu = ett::kNone;
  ett::NodeVars u_vars;
  ett::NodeVars v_vars;

  bool is_tree_edge() const { return luv != ett::kNone; }
  oracle::WeightKey key() const { return oracle::WeightKey{w_new, e}; }

  comm::Item to_item() const;
  static Decoration from_item(const comm::Item& item);
};

inline constexpr int kDecorationFields = 12;

// Adds the decoration's window to a forest, rejecting values that disagree
// with entries already tracked.
void add_window(ett::Forest& f, const Decoration& d);

// Builds one forest from a set of mutually consistent windows.
ett::Forest forest_from_windows(const std::vector<Decoration>& windows);

// Weight-increment independence: F = old tree minus the incremented tree
// edges; X is independent when F plus X stays acyclic. X is processed in the
// given order; decorations describe the old tree.
bool contraction_independent(const std::vector<Decoration>& x,
                             const std::vector<Decoration>& e_plus);

// Weight-decrement independence over B = tree plus decremented edges: X is
// independent when B minus X still spans. Decorations describe the current
// tree (after increments).
bool dual_independent(const std::vector<Decoration>& x, const std::vector<Decoration>& e_minus);

// Greedy-retention filters for the distributed extreme-basis phase.
comm::ExtremeBasisPhase::AdmitFn contraction_admit(std::vector<Decoration> e_plus);
comm::ExtremeBasisPhase::AdmitFn dual_admit(std::vector<Decoration> e_minus);

}  // namespace bdc::matroid
