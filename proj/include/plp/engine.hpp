#pragma once

// Solve driver. Floating-point LPs propose an optimal basis at chosen
// parameter points; each basis is re-verified in rational arithmetic, its
// region reconstructed exactly, and new points are planted just beyond every
// region facet until the emitted regions tile the parameter space with a
// complete adjacency relation. The projected (or hull) polyhedron is the
// minimized conjunction of the distinct optimal functions Z*(x) >= 0.
//
// Every decision that reaches the output rests on exact arithmetic: float
// results only steer which basis gets verified first. A wrong or premature
// float answer costs one rational re-solve, never correctness.

#include "plp/degeneracy.hpp"
#include "plp/float_simplex.hpp"
#include "plp/plp_problem.hpp"
#include "plp/region.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace plp {

// An invariant the solver relies on failed to hold; results would be
// unsound. Mapped to a dedicated exit code by the CLI.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct EngineConfig {
  std::size_t initial_points = 1;  // random seed points beyond the fixed one
  std::uint64_t seed = 0;
  int extra_point_retries = 3;  // midpoint tasks per unresolved frontier
  int probe_halvings = 12;      // beyond-facet probe attempts per frontier
  bool audit = false;           // re-confirm every witness while solving
  double tolerance = kFloatTolerance;
  FaultInjection faults;  // testing hook for the float stage
  std::ostream* log = nullptr;
};

struct SolveStats {
  std::size_t tasks = 0;
  std::size_t float_solves = 0;
  std::size_t rational_solves = 0;
  std::size_t basis_rejections = 0;    // float basis failed exact verification
  std::size_t optimality_repairs = 0;  // verified basis not optimal at its point
  std::size_t degenerate_vertices = 0;
  std::size_t flat_tiles = 0;
  std::size_t empty_tiles = 0;  // bases that are optimal nowhere
  std::size_t crossings = 0;
  std::size_t probes = 0;
};

struct SolveResult {
  std::vector<Region> regions;   // emitted full-dimensional regions
  AdjacencyTable adjacency;      // per (region, frontier): neighbor index
  std::vector<RatVec> functions; // distinct optimal functions, first-seen order
  Polyhedron polyhedron;         // the projection / hull, minimized
  SolveStats stats;
};

class PlpSolver {
 public:
  PlpSolver(const PlpProblem& p, const EngineConfig& cfg)
      : p_(p), cfg_(cfg), rng_(cfg.seed) {}

  SolveResult run() {
    seed_tasks();
    int rescue = 0;
    for (;;) {
      drain();
      if (sweep_pass()) continue;
      if (regions_.empty() && rescue < 5) {
        // every sampled point hit a measure-zero tile; widen the net
        ++rescue;
        if (cfg_.log) *cfg_.log << "no full-dimensional region yet, reseeding\n";
        for (int i = 0; i <= rescue; ++i) push_random_task(101 * (rescue + 1));
        continue;
      }
      break;
    }
    if (regions_.empty())
      throw InternalError("no full-dimensional region found");
    if (!table_.complete()) {
      std::ostringstream os;
      os << "adjacency unresolved after probe budget:";
      for (auto [r, f] : table_.unresolved()) os << " (" << r << "," << f << ")";
      throw InternalError(os.str());
    }
    return assemble();
  }

 private:
  struct Task {
    RatPoint w;
    std::optional<std::pair<std::size_t, std::size_t>> from;  // (region, frontier)
  };

  // ---- worklist -------------------------------------------------------------

  void seed_tasks() {
    if (p_.m_params == 0) {
      push_task(RatPoint{}, std::nullopt);
      return;
    }
    push_task(RatPoint(p_.m_params, Rational(1)), std::nullopt);
    for (std::size_t i = 0; i < cfg_.initial_points; ++i) push_random_task(101);
  }

  void push_random_task(std::uint64_t span) {
    RatPoint w(p_.m_params);
    for (auto& v : w)
      v = Rational(static_cast<long>(rng_() % span) - static_cast<long>(span / 2));
    push_task(std::move(w), std::nullopt);
  }

  void push_task(RatPoint w, std::optional<std::pair<std::size_t, std::size_t>> from) {
    // task points are one-shot; a frontier whose point was already consumed
    // is resolved by the sweep instead
    if (!task_points_.insert(w).second) return;
    tasks_.push_back(Task{std::move(w), from});
  }

  void drain() {
    while (!tasks_.empty()) {
      Task t = std::move(tasks_.front());
      tasks_.pop_front();
      ++stats_.tasks;
      if (check_covered(t.w)) {
        resolve_adjacency(t);
        continue;
      }
      handle_uncovered(t);
    }
  }

  std::optional<std::size_t> check_covered(const RatPoint& w) const {
    if (regions_.empty()) return std::nullopt;
    if (w == p_.norm_param) return 0;  // every region's rows vanish at the apex
    for (std::size_t i = 0; i < regions_.size(); ++i)
      if (region_contains_strict(regions_[i], w)) return i;
    return std::nullopt;
  }

  void handle_uncovered(const Task& t) {
    auto [basis, check] = solve_at(t.w);
    if (!optimal_at(check, t.w)) {
      // the float stage lied (or was made to): the basis is feasible but not
      // optimal at w. Keep it (it is a valid tile elsewhere), then re-solve
      // rationally at w once.
      ++stats_.optimality_repairs;
      if (cfg_.log) *cfg_.log << "optimality repair at a task point\n";
      ingest(basis, check);
      std::tie(basis, check) = rational_solve_at(t.w);
      if (!optimal_at(check, t.w))
        throw InternalError("exact optimum fails its own optimality test");
    }
    ingest(basis, check);
    resolve_adjacency(t);
  }

  std::pair<std::vector<std::size_t>, BasisCheck> solve_at(const RatPoint& w) {
    FloatPoint wf;
    if (float_point(w, wf)) {
      ++stats_.float_solves;
      const FaultInjection* fp =
          (cfg_.faults.wrong_basis || cfg_.faults.premature_opt) ? &cfg_.faults : nullptr;
      FloatLpResult fr = float_simplex(make_float_lp(p_, wf), cfg_.tolerance, fp);
      if (fr.status == FloatLpStatus::Optimal) {
        std::sort(fr.basic.begin(), fr.basic.end());
        BasisCheck check = verify_feasible_basis(p_, fr.basic);
        if (check.verdict == BasisVerdict::Verified)
          return {std::move(fr.basic), std::move(check)};
        ++stats_.basis_rejections;
        if (cfg_.log) *cfg_.log << "float basis rejected by exact verification\n";
      }
    }
    return rational_solve_at(w);
  }

  std::pair<std::vector<std::size_t>, BasisCheck> rational_solve_at(const RatPoint& w) {
    ++stats_.rational_solves;
    RatLpResult rr = rational_simplex(make_rat_lp(p_, w));
    if (rr.status != LpStatus::Optimal)
      throw InternalError("parametric LP not optimal at a parameter point");
    std::sort(rr.basic.begin(), rr.basic.end());
    BasisCheck check = verify_feasible_basis(p_, rr.basic);
    if (check.verdict != BasisVerdict::Verified)
      throw InternalError("rational optimum failed exact basis verification");
    return {std::move(rr.basic), std::move(check)};
  }

  static bool float_point(const RatPoint& w, FloatPoint& out) {
    out.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto d = to_double_nearest(w[k]);
      if (!d) return false;
      out[k] = *d;
    }
    return true;
  }

  // Exact reduced costs of the basis at w must all be nonnegative.
  bool optimal_at(const BasisCheck& check, const RatPoint& w) const {
    RationalMatrix op = reconstruct_from_echelon(check.echelon, p_.o);
    std::vector<bool> basic(p_.n_vars, false);
    for (const auto& [r, c] : check.echelon.pivots) basic[c] = true;
    for (std::size_t j = 0; j < p_.n_vars; ++j) {
      if (basic[j]) continue;
      Rational v = op.at(p_.m_params, j);
      for (std::size_t k = 0; k < p_.m_params; ++k)
        if (op.at(k, j) != 0 && w[k] != 0) v += op.at(k, j) * w[k];
      if (v < 0) return false;
    }
    return true;
  }

  // ---- region bookkeeping ----------------------------------------------------

  // Takes a verified basis (sorted) and folds it into the store. Flat tiles
  // and bases of an already-claimed optimal function are recorded but not
  // emitted: the first vertex claiming a function tiles its whole territory,
  // so a later basis with the same function could only overlap it.
  void ingest(const std::vector<std::size_t>& basis, const BasisCheck& check) {
    if (known_bases_.count(basis)) return;
    known_bases_.insert(basis);
    if (check.degenerate) {
      RatVec z = zstar_of(check);
      if (functions_seen_.count(z)) return;
      claim(z);
      ++stats_.degenerate_vertices;
      explore_degeneracy(
          p_, basis,
          [&](const std::vector<std::size_t>& b, const BasisCheck&, ExtractionResult e) {
            known_bases_.insert(b);
            if (by_basis_.count(b)) return;
            if (e.empty) {
              ++stats_.empty_tiles;
              return;
            }
            if (e.region.zstar != z)
              throw InternalError("vertex walk reached a different optimal function");
            if (e.region.flat) {
              ++stats_.flat_tiles;
              return;
            }
            emit(std::move(e), b);
          });
      return;
    }
    ExtractionResult ext = extract_region(p_, basis, check);
    if (ext.empty) {
      ++stats_.empty_tiles;
      return;
    }
    if (ext.region.flat) {
      ++stats_.flat_tiles;
      return;
    }
    if (functions_seen_.count(ext.region.zstar)) return;
    claim(ext.region.zstar);
    emit(std::move(ext), basis);
  }

  RatVec zstar_of(const BasisCheck& check) const {
    RationalMatrix op = reconstruct_from_echelon(check.echelon, p_.o);
    RatVec z(p_.m_params + 1);
    for (std::size_t k = 0; k <= p_.m_params; ++k) z[k] = -op.at(k, p_.n_vars);
    return z;
  }

  void claim(const RatVec& zstar) {
    if (functions_seen_.insert(zstar).second) functions_.push_back(zstar);
  }

  void emit(ExtractionResult ext, const std::vector<std::size_t>& basis) {
    if (cfg_.audit) audit_region(ext);
    std::size_t idx = regions_.size();
    regions_.push_back(std::move(ext.region));
    by_basis_[basis] = idx;
    table_.add_region(regions_[idx].rows.size());
    for (std::size_t f = 0; f < regions_[idx].rows.size(); ++f)
      push_task(std::move(ext.min_info.witnesses[f]), std::make_pair(idx, f));
  }

  void audit_region(const ExtractionResult& ext) const {
    const auto& rows = ext.region.rows;
    for (std::size_t f = 0; f < rows.size(); ++f) {
      const RatPoint& w = ext.min_info.witnesses[f];
      if (eval_constraint(rows[f], w) >= 0)
        throw InternalError("audit: frontier witness does not violate its row");
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (j != f && eval_constraint(rows[j], w) < 0)
          throw InternalError("audit: frontier witness violates a second row");
    }
  }

  // ---- adjacency -------------------------------------------------------------

  // The task point sits just beyond frontier (r, f) of its origin region.
  // Whichever emitted region holds it in closure and exposes the matching
  // facet is the neighbor; failing that, a midpoint task digs further.
  void resolve_adjacency(const Task& t) {
    if (!t.from) return;
    auto [fr, ff] = *t.from;
    if (table_.get(fr, ff)) return;
    const Constraint& g = regions_[fr].rows[ff];
    for (std::size_t r2 = 0; r2 < regions_.size(); ++r2) {
      if (r2 == fr || !region_contains(regions_[r2], t.w)) continue;
      if (link(fr, ff, r2, g)) return;
    }
    int& used = midpoint_budget_[*t.from];
    if (used >= cfg_.extra_point_retries) return;  // the sweep takes over
    auto cov = check_covered(t.w);
    if (!cov || *cov == fr) return;
    ++used;
    RatPoint a = region_interior_rep(p_, regions_[fr]);
    RatPoint b = region_interior_rep(p_, regions_[*cov]);
    RatPoint mid(p_.m_params);
    for (std::size_t k = 0; k < p_.m_params; ++k) mid[k] = (a[k] + b[k]) / 2;
    push_task(std::move(mid), t.from);
  }

  bool link(std::size_t r, std::size_t f, std::size_t r2, const Constraint& g) {
    auto f2 = matching_frontier(regions_[r2], g);
    if (!f2) return false;
    if (!z_link_ok(regions_[r].zstar, regions_[r2].zstar, g)) return false;
    table_.set(r, f, r2);
    if (!table_.get(r2, *f2)) table_.set(r2, *f2, r);
    return true;
  }

  // Row of `reg` equal to -c*g for some c > 0: the same facet seen from the
  // other side.
  std::optional<std::size_t> matching_frontier(const Region& reg, const Constraint& g) const {
    for (std::size_t j = 0; j < reg.rows.size(); ++j) {
      const Constraint& h = reg.rows[j];
      std::optional<Rational> c;
      bool ok = true;
      auto pair = [&](const Rational& gv, const Rational& hv) {
        if (!ok) return;
        if (gv == 0) {
          ok = hv == 0;
          return;
        }
        Rational cand = -hv / gv;
        if (!c) {
          if (cand <= 0) ok = false;
          else c = std::move(cand);
        } else if (*c != cand) {
          ok = false;
        }
      };
      for (std::size_t k = 0; k < g.coeffs.size(); ++k) pair(g.coeffs[k], h.coeffs[k]);
      pair(g.constant, h.constant);
      if (ok && c) return j;
    }
    return std::nullopt;
  }

  // Optimal values agree on the shared facet: the difference of the two
  // functions must be a nonnegative multiple of g (zero when both sides share
  // a function across an internal tile boundary).
  bool z_link_ok(const RatVec& z1, const RatVec& z2, const Constraint& g) const {
    RatVec gv = g.coeffs;
    gv.push_back(g.constant);
    std::optional<Rational> t;
    for (std::size_t k = 0; k < gv.size(); ++k) {
      Rational d = z2[k] - z1[k];
      if (gv[k] == 0) {
        if (d != 0) return false;
        continue;
      }
      Rational cand = d / gv[k];
      if (!t) {
        if (cand < 0) return false;
        t = std::move(cand);
      } else if (*t != cand) {
        return false;
      }
    }
    return true;
  }

  // ---- sweep -----------------------------------------------------------------

  // Crossing a frontier by one exact pivot lands on a basis whose region
  // contains the whole facet; ingesting it (plus probes when that region is
  // flat or already claimed) resolves every slot the worklist left open.
  bool sweep_pass() {
    bool progress = false;
    for (auto [r, f] : table_.unresolved()) {
      if (table_.get(r, f)) continue;  // resolved earlier in this pass
      if (crossed_.insert({r, f}).second) {
        auto neighbor = cross(r, f);
        try_link(r, f, neighbor);
        progress = true;
        continue;
      }
      if (try_link(r, f, std::nullopt)) {
        progress = true;
        continue;
      }
      if (probe(r, f)) progress = true;
    }
    return progress;
  }

  std::optional<std::size_t> cross(std::size_t r, std::size_t f) {
    ++stats_.crossings;
    BasisCheck rc = verify_feasible_basis(p_, regions_[r].basis);
    if (rc.verdict != BasisVerdict::Verified)
      throw InternalError("stored region basis failed re-verification");
    ExactTableau tab(p_, rc);
    std::size_t enter = regions_[r].frontier_cols[f];
    auto leave = tab.lex_leaving(enter, false);
    if (!leave)
      throw InternalError("frontier crossing unbounded: multiplier set is not a polytope");
    tab.pivot(*leave, enter);
    std::vector<std::size_t> nb = tab.basis();
    BasisCheck nc = verify_feasible_basis(p_, nb);
    if (nc.verdict != BasisVerdict::Verified)
      throw InternalError("pivot produced an unverifiable basis");
    ingest(nb, nc);
    auto it = by_basis_.find(nb);
    if (it != by_basis_.end()) return it->second;
    return std::nullopt;
  }

  bool try_link(std::size_t r, std::size_t f, std::optional<std::size_t> preferred) {
    if (table_.get(r, f)) return true;
    const Constraint& g = regions_[r].rows[f];
    if (preferred && *preferred != r && link(r, f, *preferred, g)) return true;
    for (std::size_t r2 = 0; r2 < regions_.size(); ++r2) {
      if (r2 == r) continue;
      if (link(r, f, r2, g)) return true;
    }
    return false;
  }

  bool probe(std::size_t r, std::size_t f) {
    int& used = probe_budget_[{r, f}];
    if (used >= cfg_.probe_halvings) return false;
    ++used;
    ++stats_.probes;
    RatPoint x = facet_interior_point(r, f);
    const Constraint& g = regions_[r].rows[f];
    Rational eps(1);
    for (int i = 0; i < used; ++i) eps /= 2;
    RatPoint w(p_.m_params);
    for (std::size_t k = 0; k < p_.m_params; ++k) w[k] = x[k] - eps * g.coeffs[k];
    push_task(std::move(w), std::make_pair(r, f));
    return true;
  }

  // Point with g_f == 0 and every other row of the region >= 1 (the facet is
  // a cone around the apex, so unit slack is reachable by scaling).
  RatPoint facet_interior_point(std::size_t r, std::size_t f) const {
    GeoLp lp;
    lp.dim = p_.m_params;
    const auto& rows = regions_[r].rows;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      GeoRow gr;
      gr.a = rows[j].coeffs;
      gr.b = rows[j].constant;
      if (j == f)
        gr.eq = true;
      else
        gr.b -= 1;
      lp.rows.push_back(std::move(gr));
    }
    GeoResult res = solve_geo_rational(lp);
    if (res.status != LpStatus::Optimal)
      throw InternalError("facet relative-interior point not found");
    return res.point;
  }

  // ---- output ----------------------------------------------------------------

  SolveResult assemble() {
    SolveResult res;
    std::vector<Constraint> rows;
    for (const RatVec& z : functions_) {
      RatVec a(z.begin(), z.end() - 1);
      bool zero = true;
      for (const auto& v : a)
        if (v != 0) {
          zero = false;
          break;
        }
      if (zero) continue;  // the constant function contributes 1 >= 0
      rows.emplace_back(std::move(a), z.back());
    }
    MinimizationResult mr = minimize_hybrid(rows, p_.m_params);
    std::vector<Constraint> kept;
    kept.reserve(mr.irredundant.size());
    for (std::size_t idx : mr.irredundant) kept.push_back(rows[idx]);
    res.polyhedron = Polyhedron(p_.m_params, std::move(kept));
    res.regions = std::move(regions_);
    res.adjacency = table_;
    res.functions = std::move(functions_);
    res.stats = stats_;
    return res;
  }

  const PlpProblem& p_;
  EngineConfig cfg_;
  std::mt19937_64 rng_;
  std::deque<Task> tasks_;
  std::set<RatPoint> task_points_;
  std::vector<Region> regions_;
  std::map<std::vector<std::size_t>, std::size_t> by_basis_;
  std::set<std::vector<std::size_t>> known_bases_;
  std::set<RatVec> functions_seen_;
  std::vector<RatVec> functions_;
  AdjacencyTable table_;
  std::set<std::pair<std::size_t, std::size_t>> crossed_;
  std::map<std::pair<std::size_t, std::size_t>, int> probe_budget_;
  std::map<std::pair<std::size_t, std::size_t>, int> midpoint_budget_;
  SolveStats stats_;
};

inline SolveResult plp_solve(const PlpProblem& p, const EngineConfig& cfg = {}) {
  PlpSolver solver(p, cfg);
  return solver.run();
}

inline SolveResult project_solve(const Polyhedron& input,
                                 const std::vector<std::size_t>& eliminate,
                                 const EngineConfig& cfg = {}) {
  PlpProblem p = construct_projection(input, eliminate);
  return plp_solve(p, cfg);
}

inline SolveResult hull_solve(const Polyhedron& a, const Polyhedron& b,
                              const EngineConfig& cfg = {}) {
  PlpProblem p = construct_hull(a, b);
  return plp_solve(p, cfg);
}

}  // namespace plp
