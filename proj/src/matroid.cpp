#include "bdc/matroid.hpp"

#include <algorithm>

namespace bdc::matroid {

comm::Item Decoration::to_item() const {
  return {w_new,       e.u,         e.v,         w_old,
          luv,         lvu,         u_vars.root, u_vars.size,
          u_vars.min_out, v_vars.root, v_vars.size, v_vars.min_out};
}

Decoration Decoration::from_item(const comm::Item& item) {
  if (static_cast<int>(item.size()) != kDecorationFields)
    fail(Err::InconsistentWindow, "malformed decorated edge");
  Decoration d;
  d.w_new = item[0];
  d.e = EdgeId::of(static_cast<NodeId>(item[1]), static_cast<NodeId>(item[2]));
  d.w_old = item[3];
  d.luv = item[4];
  d.lvu = item[5];
  d.u_vars = {static_cast<NodeId>(item[6]), item[7], item[8]};
  d.v_vars = {static_cast<NodeId>(item[9]), item[10], item[11]};
  return d;
}

void add_window(ett::Forest& f, const Decoration& d) {
  auto put_node = [&](NodeId v, const ett::NodeVars& vars) {
    if (f.tracks_node(v)) {
      if (!(f.vars(v) == vars))
        fail(Err::InconsistentWindow, "window disagrees at node " + std::to_string(v));
    } else {
      f.track_node(v, vars);
    }
  };
  put_node(d.e.u, d.u_vars);
  put_node(d.e.v, d.v_vars);
  if (f.tracks_edge(d.e)) {
    if (f.label(d.e.u, d.e.v) != d.luv || f.label(d.e.v, d.e.u) != d.lvu)
      fail(Err::InconsistentWindow, "window disagrees at edge " + to_string(d.e));
  } else {
    f.track_edge(d.e, d.luv, d.lvu);
  }
}

ett::Forest forest_from_windows(const std::vector<Decoration>& windows) {
  ett::Forest f;
  for (const auto& d : windows) add_window(f, d);
  return f;
}

bool contraction_independent(const std::vector<Decoration>& x,
                             const std::vector<Decoration>& e_plus) {
  ett::Forest f = forest_from_windows(e_plus);
  for (const auto& d : x) add_window(f, d);

  std::vector<Decoration> cuts;
  for (const auto& d : e_plus)
    if (d.is_tree_edge()) cuts.push_back(d);
  std::sort(cuts.begin(), cuts.end(),
            [](const Decoration& a, const Decoration& b) { return a.key() < b.key(); });
  for (const auto& d : cuts) f.cut(d.e);

  for (const auto& d : x) {
    if (f.same_tree(d.e.u, d.e.v)) return false;
    f.join(d.e);
  }
  return true;
}

bool dual_independent(const std::vector<Decoration>& x, const std::vector<Decoration>& e_minus) {
  ett::Forest f = forest_from_windows(e_minus);
  for (const auto& d : x) add_window(f, d);

  std::set<EdgeId> in_x;
  for (const auto& d : x) in_x.insert(d.e);

  std::vector<Decoration> cuts;
  for (const auto& d : x)
    if (d.is_tree_edge()) cuts.push_back(d);
  std::sort(cuts.begin(), cuts.end(),
            [](const Decoration& a, const Decoration& b) { return a.key() < b.key(); });
  for (const auto& d : cuts) f.cut(d.e);

  std::vector<Decoration> joins;
  for (const auto& d : e_minus)
    if (!in_x.count(d.e) && !d.is_tree_edge()) joins.push_back(d);
  std::sort(joins.begin(), joins.end(),
            [](const Decoration& a, const Decoration& b) { return a.key() < b.key(); });
  size_t joined = 0;
  for (const auto& d : joins) {
    if (f.same_tree(d.e.u, d.e.v)) continue;
    f.join(d.e);
    ++joined;
  }
  return joined == cuts.size();
}

comm::ExtremeBasisPhase::AdmitFn contraction_admit(std::vector<Decoration> e_plus) {
  return [e_plus = std::move(e_plus)](const std::vector<comm::Item>& kept, const comm::Item& item) {
    std::vector<Decoration> x;
    x.reserve(kept.size() + 1);
    for (const auto& k : kept) x.push_back(Decoration::from_item(k));
    x.push_back(Decoration::from_item(item));
    return contraction_independent(x, e_plus);
  };
}

comm::ExtremeBasisPhase::AdmitFn dual_admit(std::vector<Decoration> e_minus) {
  return [e_minus = std::move(e_minus)](const std::vector<comm::Item>& kept,
                                        const comm::Item& item) {
    std::vector<Decoration> x;
    x.reserve(kept.size() + 1);
    for (const auto& k : kept) x.push_back(Decoration::from_item(k));
    x.push_back(Decoration::from_item(item));
    return dual_independent(x, e_minus);
  };
}

}  // namespace bdc::matroid
