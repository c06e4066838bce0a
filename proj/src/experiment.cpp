#include "bdc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "bdc/cc.hpp"
#include "bdc/mst.hpp"
#include "bdc/oracles.hpp"
#include "bdc/orientation.hpp"
#include "bdc/universal.hpp"

namespace bdc::experiment {

namespace {

using ProgramVec = std::vector<std::unique_ptr<sim::NodeProgram>>;

struct Scenario {
  virtual ~Scenario() = default;
  virtual std::vector<sim::AuxPtr> bootstrap(const Labelling& l) = 0;
  virtual ProgramVec make_programs(const Labelling& l1, const Labelling& l2) = 0;
  // Ground-truth comparison after the batch ran.
  virtual bool check(const Labelling& l2, const std::vector<EdgeId>& changed,
                     const ProgramVec& programs, const std::vector<sim::AuxPtr>& aux) = 0;
};

template <class P>
ProgramVec uniform_programs(int n) {
  ProgramVec v;
  for (int i = 0; i < n; ++i) v.push_back(std::make_unique<P>());
  return v;
}

struct MstScenario : Scenario {
  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override { return mst::mst_bootstrap(l); }
  ProgramVec make_programs(const Labelling& l1, const Labelling&) override {
    return uniform_programs<mst::MstProgram>(l1.graph().n());
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>&, const ProgramVec&,
             const std::vector<sim::AuxPtr>& aux) override {
    return mst::decode_tree(aux) == oracle::kruskal_mst(l2);
  }
};

struct CliqueScenario : Scenario {
  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override {
    return orient::clique_bootstrap(l);
  }
  ProgramVec make_programs(const Labelling& l1, const Labelling&) override {
    return uniform_programs<orient::CliqueProgram>(l1.graph().n());
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>& changed, const ProgramVec& programs,
             const std::vector<sim::AuxPtr>&) override {
    const CommGraph& g = l2.graph();
    int n = g.n();
    // Every changed edge oriented by exactly one endpoint; orientation acyclic;
    // outdegree at most 6 * sqrt(alpha).
    std::map<EdgeId, NodeId> tail;
    double bound = 6.0 * std::sqrt(static_cast<double>(changed.size())) + 1e-9;
    for (NodeId v = 0; v < n; ++v) {
      auto& p = dynamic_cast<orient::CliqueProgram&>(*programs[v]);
      auto out = p.oriented_out();
      if (static_cast<double>(out.size()) > bound) return false;
      for (const EdgeId& e : out) {
        if (tail.count(e)) return false;
        tail[e] = v;
      }
    }
    std::set<EdgeId> changed_set(changed.begin(), changed.end());
    if (tail.size() != changed_set.size()) return false;
    for (const auto& [e, t] : tail)
      if (!changed_set.count(e)) return false;
    // Cycle check over the directed changed edges.
    std::map<NodeId, std::vector<NodeId>> succ;
    for (const auto& [e, t] : tail) succ[t].push_back(t == e.u ? e.v : e.u);
    std::map<NodeId, int> state;  // 0 new, 1 active, 2 done
    std::function<bool(NodeId)> dfs = [&](NodeId v) {
      state[v] = 1;
      for (NodeId w : succ[v]) {
        if (state[w] == 1) return false;
        if (state[w] == 0 && !dfs(w)) return false;
      }
      state[v] = 2;
      return true;
    };
    for (const auto& [v, _] : succ)
      if (state[v] == 0 && !dfs(v)) return false;
    // Clique lists against brute force, k = 3 and 4.
    for (NodeId v = 0; v < n; ++v) {
      auto& p = dynamic_cast<orient::CliqueProgram&>(*programs[v]);
      for (int k = 3; k <= 4; ++k)
        if (orient::enumerate_cliques(p.view(), v, k) != oracle::brute_cliques(l2, v, k))
          return false;
    }
    return true;
  }
};

struct Local1Scenario : Scenario {
  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override {
    return universal::local1_bootstrap(l, 1);
  }
  ProgramVec make_programs(const Labelling& l1, const Labelling&) override {
    ProgramVec v;
    for (int i = 0; i < l1.graph().n(); ++i)
      v.push_back(std::make_unique<universal::Local1Program>(1, universal::degree_solver()));
    return v;
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>&, const ProgramVec& programs,
             const std::vector<sim::AuxPtr>&) override {
    for (NodeId v = 0; v < l2.graph().n(); ++v) {
      int64_t deg = 0;
      for (NodeId u : l2.graph().neighbors(v))
        if (l2.at(EdgeId::of(v, u)) == 1) ++deg;
      auto& p = dynamic_cast<universal::Local1Program&>(*programs[v]);
      if (p.output() != std::vector<int64_t>{deg}) return false;
    }
    return true;
  }
};

struct UniversalScenario : Scenario {
  universal::Solver solver;
  explicit UniversalScenario(universal::Solver s) : solver(std::move(s)) {}

  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override {
    return universal::universal_bootstrap(l);
  }
  ProgramVec make_programs(const Labelling& l1, const Labelling&) override {
    ProgramVec v;
    for (int i = 0; i < l1.graph().n(); ++i)
      v.push_back(std::make_unique<universal::UniversalProgram>(solver));
    return v;
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>&, const ProgramVec& programs,
             const std::vector<sim::AuxPtr>&) override {
    for (NodeId v = 0; v < l2.graph().n(); ++v) {
      auto& p = dynamic_cast<universal::UniversalProgram&>(*programs[v]);
      if (p.output() != solver(l2, v)) return false;
    }
    return true;
  }
};

struct CcUniversalScenario : Scenario {
  universal::Solver solver = universal::component_edges_solver();

  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override {
    return universal::universal_bootstrap(l);
  }
  ProgramVec make_programs(const Labelling& l1, const Labelling&) override {
    ProgramVec v;
    for (int i = 0; i < l1.graph().n(); ++i)
      v.push_back(std::make_unique<cc::CcUniversalProgram>(solver));
    return v;
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>&, const ProgramVec& programs,
             const std::vector<sim::AuxPtr>&) override {
    for (NodeId v = 0; v < l2.graph().n(); ++v) {
      auto& p = dynamic_cast<cc::CcUniversalProgram&>(*programs[v]);
      if (p.output() != solver(l2, v)) return false;
    }
    return true;
  }
};

oracle::Matrix symmetric_matrix(const Labelling& l) {
  int n = l.graph().n();
  oracle::Matrix a(n, std::vector<int64_t>(n, 0));
  for (const auto& e : l.graph().edges()) {
    a[e.u][e.v] = l.at(e);
    a[e.v][e.u] = l.at(e);
  }
  return a;
}

// Per-node sparse delta entries {matrix, i, j, value} when the labelling is
// read as a symmetric matrix used for both factors.
std::vector<comm::Item> symmetric_deltas(const Labelling& l1, const Labelling& l2, NodeId v) {
  std::vector<comm::Item> out;
  for (NodeId u : l1.graph().neighbors(v)) {
    EdgeId e = EdgeId::of(v, u);
    int64_t d = l2.at(e) - l1.at(e);
    if (d == 0) continue;
    out.push_back({0, v, u, d});
    out.push_back({1, u, v, d});
  }
  return out;
}

struct CcMatmulScenario : Scenario {
  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override {
    auto a = symmetric_matrix(l);
    return cc::matmul_bootstrap(a, a);
  }
  ProgramVec make_programs(const Labelling& l1, const Labelling& l2) override {
    ProgramVec v;
    for (NodeId i = 0; i < l1.graph().n(); ++i)
      v.push_back(std::make_unique<cc::MatmulProgram>(symmetric_deltas(l1, l2, i)));
    return v;
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>&, const ProgramVec&,
             const std::vector<sim::AuxPtr>& aux) override {
    auto a = symmetric_matrix(l2);
    auto p = oracle::matmul_reference(a, a);
    for (NodeId v = 0; v < l2.graph().n(); ++v) {
      const auto& row = dynamic_cast<const cc::MatrixRowAux&>(*aux[v]);
      if (row.s_row != a[v] || row.p_row != p[v]) return false;
      for (int i = 0; i < l2.graph().n(); ++i)
        if (row.t_col[i] != a[i][v]) return false;
    }
    return true;
  }
};

struct CcTriangleScenario : Scenario {
  std::vector<sim::AuxPtr> bootstrap(const Labelling& l) override {
    return cc::triangle_bootstrap(l);
  }
  ProgramVec make_programs(const Labelling& l1, const Labelling&) override {
    return uniform_programs<cc::TriangleProgram>(l1.graph().n());
  }
  bool check(const Labelling& l2, const std::vector<EdgeId>&, const ProgramVec& programs,
             const std::vector<sim::AuxPtr>&) override {
    int64_t expect = oracle::triangle_reference(symmetric_matrix(l2));
    for (NodeId v = 0; v < l2.graph().n(); ++v) {
      auto& p = dynamic_cast<cc::TriangleProgram&>(*programs[v]);
      if (p.triangles() != expect) return false;
    }
    return true;
  }
};

std::unique_ptr<Scenario> make_scenario(const std::string& name) {
  if (name == "mst") return std::make_unique<MstScenario>();
  if (name == "cliques") return std::make_unique<CliqueScenario>();
  if (name == "local1") return std::make_unique<Local1Scenario>();
  if (name == "universal-apsp")
    return std::make_unique<UniversalScenario>(universal::apsp_solver());
  if (name == "universal-diameter")
    return std::make_unique<UniversalScenario>(universal::diameter_solver());
  if (name == "cc-universal") return std::make_unique<CcUniversalScenario>();
  if (name == "cc-matmul") return std::make_unique<CcMatmulScenario>();
  if (name == "cc-triangles") return std::make_unique<CcTriangleScenario>();
  fail(Err::InfeasibleParams, "unknown scenario '" + name + "'");
}

}  // namespace

LabelKind scenario_label_kind(const std::string& scenario) {
  if (scenario == "mst" || scenario == "cc-matmul") return LabelKind::Weight;
  for (const char* known : {"cliques", "local1", "universal-apsp", "universal-diameter",
                            "cc-universal", "cc-triangles"})
    if (scenario == known) return LabelKind::Bit;
  fail(Err::InfeasibleParams, "unknown scenario '" + scenario + "'");
}

bool scenario_needs_clique(const std::string& scenario) {
  return scenario.rfind("cc-", 0) == 0;
}

ExperimentResult run_experiment(const Experiment& e, std::ostream* csv, bool summary) {
  if (e.initial.kind() != scenario_label_kind(e.scenario))
    fail(Err::InfeasibleParams, "label kind does not match scenario '" + e.scenario + "'");
  if (scenario_needs_clique(e.scenario) && !e.graph->is_clique())
    fail(Err::NotAClique, "scenario '" + e.scenario + "' requires a complete graph");

  auto scenario = make_scenario(e.scenario);
  std::vector<sim::AuxPtr> aux = scenario->bootstrap(e.initial);
  Labelling l1 = e.initial;

  if (csv) *csv << "batch_index,alpha,rounds,messages,words,max_aux_bits,oracle_ok\n";

  ExperimentResult result;
  int index = 0;
  for (const auto& batch : e.batches) {
    AppliedBatch applied = apply_batch(l1, batch);
    const Labelling& l2 = applied.after;
    ProgramVec programs = scenario->make_programs(l1, l2);
    std::vector<sim::NodeProgram*> ptrs;
    for (auto& p : programs) ptrs.push_back(p.get());
    sim::Metrics m = sim::run_batch(ptrs, *e.graph, l1, l2, aux, e.engine);

    std::vector<sim::AuxPtr> aux_out;
    for (auto& p : programs) aux_out.push_back(p->aux_out());

    BatchRow row;
    row.batch_index = index++;
    row.alpha = static_cast<int64_t>(batch.alpha());
    row.rounds = m.rounds;
    row.messages = m.messages_sent;
    row.words = m.words_sent;
    row.max_aux_bits = m.max_aux_bits;
    row.phases = m.phase_breakdown;
    if (e.oracle) {
      row.oracle_ok = scenario->check(l2, applied.changed, programs, aux_out);
      if (!*row.oracle_ok) result.all_ok = false;
    }
    if (csv) {
      *csv << row.batch_index << ',' << row.alpha << ',' << row.rounds << ',' << row.messages
           << ',' << row.words << ',' << row.max_aux_bits << ','
           << (row.oracle_ok ? (*row.oracle_ok ? "1" : "0") : "-") << '\n';
    }
    result.rows.push_back(std::move(row));
    aux = std::move(aux_out);
    l1 = l2;
  }

  if (csv && summary && !result.rows.empty()) {
    std::vector<double> alphas, rounds;
    for (const auto& r : result.rows) {
      alphas.push_back(static_cast<double>(r.alpha));
      rounds.push_back(static_cast<double>(r.rounds));
    }
    LinearFit lin = fit_linear(alphas, rounds);
    double exp = fit_power_exponent(alphas, rounds);
    char buf[160];
    std::snprintf(buf, sizeof buf, "# fit rounds = a*alpha + b: a=%.6f b=%.6f\n", lin.slope,
                  lin.intercept);
    *csv << buf;
    std::snprintf(buf, sizeof buf, "# fit rounds ~ alpha^e: e=%.6f\n", exp);
    *csv << buf;
  }
  return result;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  size_t n = xs.size();
  if (n == 0) return {};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) return {0, sy / n};
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double fit_power_exponent(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0 || ys[i] <= 0) continue;
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return fit_linear(lx, ly).slope;
}

}  // namespace bdc::experiment
