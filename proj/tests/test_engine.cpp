#include <catch2/catch_amalgamated.hpp>

#include "plp/degeneracy.hpp"
#include "plp/engine.hpp"
#include "plp/oracle.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace plp;

namespace {

const char* kSquare = "2 4\n1 0 0\n-1 0 1\n0 1 0\n0 -1 1\n";
const char* kP =
    "2 4\n"
    "-1 2 -2\n"
    "2 -1 -1\n"
    "-1 -1 8\n"
    "2 4 -7\n";
// square pyramid over [-1,1]^2 with apex (0,0,1)
const char* kPyramid =
    "3 5\n"
    "0 0 1 0\n"
    "-1 0 -1 1\n"
    "1 0 -1 1\n"
    "0 -1 -1 1\n"
    "0 1 -1 1\n";

Rational q(long n, long d = 1) { return Rational(n, d); }

// every region row holds weakly (closure membership)
bool in_closure(const Region& r, const RatPoint& w) { return region_contains(r, w); }

}  // namespace

TEST_CASE("exact tableau pivots stay on a degenerate vertex") {
  Polyhedron sq = parse_polyhedron(kSquare);
  PlpProblem p = construct_projection(sq, {1}, RatPoint{q(1, 2), q(1, 2)});

  std::vector<std::size_t> basis = {2, 4};
  BasisCheck check = verify_feasible_basis(p, basis);
  REQUIRE(check.verdict == BasisVerdict::Verified);
  REQUIRE(check.degenerate);

  ExactTableau tab(p, check);
  REQUIRE(tab.rows() == 2);
  REQUIRE(tab.degenerate());
  REQUIRE(tab.basis() == basis);

  // one basic value is zero; pivoting along that row keeps both values
  std::size_t zero_row = tab.rhs(0) == 0 ? 0 : 1;
  REQUIRE(tab.rhs(zero_row) == 0);
  REQUIRE(tab.rhs(1 - zero_row) == 1);

  std::size_t enter = p.n_vars;
  for (std::size_t e = 0; e < p.n_vars; ++e) {
    if (std::binary_search(basis.begin(), basis.end(), e)) continue;
    if (tab.at(zero_row, e) != 0) {
      enter = e;
      break;
    }
  }
  REQUIRE(enter < p.n_vars);
  tab.pivot(zero_row, enter);
  REQUIRE(tab.rhs(zero_row) == 0);
  REQUIRE(tab.rhs(1 - zero_row) == 1);
  std::vector<std::size_t> nb = tab.basis();
  REQUIRE(nb != basis);
  BasisCheck nc = verify_feasible_basis(p, nb);
  REQUIRE(nc.verdict == BasisVerdict::Verified);

  // the echelon view of the pivoted tableau matches a fresh verification
  EchelonResult er = tab.to_echelon();
  REQUIRE(er.pivots.size() == 2);
  for (const auto& [row, col] : er.pivots)
    REQUIRE(std::binary_search(nb.begin(), nb.end(), col));
}

TEST_CASE("lexicographic ratio test picks a unique leaving row") {
  Polyhedron pp = parse_polyhedron(kP);
  PlpProblem p = construct_projection(pp, {1});

  std::vector<std::size_t> basis = {0, 1};
  BasisCheck check = verify_feasible_basis(p, basis);
  REQUIRE(check.verdict == BasisVerdict::Verified);
  REQUIRE_FALSE(check.degenerate);

  ExactTableau tab(p, check);
  REQUIRE_FALSE(tab.degenerate());
  // any nonbasic column with a positive entry somewhere must have a leaving row
  for (std::size_t e = 0; e < p.n_vars; ++e) {
    if (std::binary_search(basis.begin(), basis.end(), e)) continue;
    bool positive = false;
    for (std::size_t r = 0; r < tab.rows(); ++r)
      if (tab.at(r, e) > 0) positive = true;
    auto leave = tab.lex_leaving(e, false);
    REQUIRE(leave.has_value() == positive);
  }
  // within-vertex restriction finds nothing on a nondegenerate basis
  for (std::size_t e = 0; e < p.n_vars; ++e) {
    if (std::binary_search(basis.begin(), basis.end(), e)) continue;
    REQUIRE_FALSE(tab.lex_leaving(e, true).has_value());
  }
}

TEST_CASE("vertex walk visits each basis of a degenerate vertex once") {
  Polyhedron sq = parse_polyhedron(kSquare);
  PlpProblem p = construct_projection(sq, {1}, RatPoint{q(1, 2), q(1, 2)});

  std::vector<std::size_t> start = {2, 4};
  BasisCheck check = verify_feasible_basis(p, start);
  REQUIRE(detect_degenerate(check));

  std::set<std::vector<std::size_t>> seen;
  std::vector<RatVec> values;
  RatVec zstar;
  explore_degeneracy(
      p, start, [&](const std::vector<std::size_t>& b, const BasisCheck& bc, ExtractionResult e) {
        REQUIRE(seen.insert(b).second);
        REQUIRE(bc.verdict == BasisVerdict::Verified);
        // the vertex never moves: sorted positive basic values are identical,
        // and every basis carries the same optimal function
        RatVec pos;
        for (const auto& v : bc.basic_values)
          if (v != 0) pos.push_back(v);
        std::sort(pos.begin(), pos.end());
        values.push_back(pos);
        if (zstar.empty())
          zstar = e.region.zstar;
        else
          REQUIRE(zstar == e.region.zstar);
      });
  REQUIRE(seen.count(start) == 1);
  for (const auto& v : values) REQUIRE(v == values.front());
}

TEST_CASE("projection of the unit square drops the eliminated coordinate") {
  Polyhedron sq = parse_polyhedron(kSquare);
  SolveResult res = project_solve(sq, {1});

  Polyhedron expect(1, {Constraint({q(1)}, q(0)), Constraint({q(-1)}, q(1))});
  auto verdict = poly_equal(res.polyhedron, expect);
  REQUIRE(verdict.equal);
  REQUIRE(res.adjacency.complete());
  REQUIRE(res.stats.tasks > 0);
}

TEST_CASE("projection with two frontier hyperplanes matches the interval oracle") {
  Polyhedron pp = parse_polyhedron(kP);
  SolveResult res = project_solve(pp, {1});

  Polyhedron expect(1, {Constraint({q(3)}, q(-4)), Constraint({q(-3)}, q(14))});
  auto verdict = poly_equal(res.polyhedron, expect);
  REQUIRE(verdict.equal);

  // every optimal function is worth exactly 1 at the normalization point
  PlpProblem p = construct_projection(pp, {1});
  for (const auto& z : res.functions) REQUIRE(eval_zstar(z, p.norm_param) == 1);
}

TEST_CASE("constant optimal function contributes no output row") {
  // half-plane x >= 3 with a free second coordinate
  Polyhedron half(2, {Constraint({q(1), q(0)}, q(-3))});
  SolveResult res = project_solve(half, {1});

  Polyhedron expect(1, {Constraint({q(1)}, q(-3))});
  auto verdict = poly_equal(res.polyhedron, expect);
  REQUIRE(verdict.equal);

  // two regions: one owns x - 3, the other the constant function
  REQUIRE(res.regions.size() == 2);
  bool saw_constant = false;
  for (const auto& z : res.functions)
    if (z == RatVec{q(0), q(1)}) saw_constant = true;
  REQUIRE(saw_constant);
  REQUIRE(res.adjacency.complete());
}

TEST_CASE("degenerate apex of a square pyramid still tiles the plane") {
  Polyhedron pyr = parse_polyhedron(kPyramid);
  SolveResult res = project_solve(pyr, {2});

  Polyhedron expect(2, {Constraint({q(1), q(0)}, q(1)), Constraint({q(-1), q(0)}, q(1)),
                        Constraint({q(0), q(1)}, q(1)), Constraint({q(0), q(-1)}, q(1))});
  auto verdict = poly_equal(res.polyhedron, expect);
  REQUIRE(verdict.equal);
  REQUIRE(res.adjacency.complete());

  // regions have pairwise disjoint interiors: the interior representative of
  // each lies in no other region's closure unless on its boundary
  PlpProblem p = construct_projection(pyr, {2});
  for (std::size_t i = 0; i < res.regions.size(); ++i) {
    RatPoint rep = region_interior_rep(p, res.regions[i]);
    REQUIRE(region_contains_strict(res.regions[i], rep));
    for (std::size_t j = 0; j < res.regions.size(); ++j)
      if (j != i) REQUIRE_FALSE(region_contains_strict(res.regions[j], rep));
  }
}

TEST_CASE("projecting the pyramid to a line walks a degenerate vertex") {
  // the facet multipliers of x+1 >= 0 (and of 1-x >= 0) use two input rows
  // while the basis has three slots, so the optimal vertex is degenerate
  Polyhedron pyr = parse_polyhedron(kPyramid);
  SolveResult res = project_solve(pyr, {1, 2});

  Polyhedron expect(1, {Constraint({q(1)}, q(1)), Constraint({q(-1)}, q(1))});
  auto verdict = poly_equal(res.polyhedron, expect);
  REQUIRE(verdict.equal);
  REQUIRE(res.stats.degenerate_vertices >= 1);
  REQUIRE(res.adjacency.complete());

  // tiles of one vertex do not overlap: pairwise disjoint interiors
  PlpProblem p = construct_projection(pyr, {1, 2});
  for (std::size_t i = 0; i < res.regions.size(); ++i) {
    RatPoint rep = region_interior_rep(p, res.regions[i]);
    for (std::size_t j = 0; j < res.regions.size(); ++j)
      if (j != i) REQUIRE_FALSE(region_contains_strict(res.regions[j], rep));
  }
}

TEST_CASE("adjacent regions share their frontier hyperplane and optimal value") {
  Polyhedron pyr = parse_polyhedron(kPyramid);
  SolveResult res = project_solve(pyr, {2});

  for (std::size_t r = 0; r < res.regions.size(); ++r) {
    for (std::size_t f = 0; f < res.regions[r].rows.size(); ++f) {
      auto nb = res.adjacency.get(r, f);
      REQUIRE(nb.has_value());
      REQUIRE(*nb < res.regions.size());
      REQUIRE(*nb != r);
      // optimal values agree on the shared hyperplane: z2 - z1 = t * g
      const Constraint& g = res.regions[r].rows[f];
      const RatVec& z1 = res.regions[r].zstar;
      const RatVec& z2 = res.regions[*nb].zstar;
      RatVec gv = g.coeffs;
      gv.push_back(g.constant);
      std::optional<Rational> t;
      for (std::size_t k = 0; k < gv.size(); ++k) {
        Rational d = z2[k] - z1[k];
        if (gv[k] == 0) {
          REQUIRE(d == 0);
          continue;
        }
        Rational cand = d / gv[k];
        if (!t)
          t = cand;
        else
          REQUIRE(*t == cand);
      }
      if (t) REQUIRE(*t >= 0);
    }
  }
}

TEST_CASE("eliminating every coordinate leaves the trivial polyhedron") {
  Polyhedron sq = parse_polyhedron(kSquare);
  SolveResult res = project_solve(sq, {0, 1});
  REQUIRE(res.polyhedron.dimension() == 0);
  REQUIRE(res.polyhedron.size() == 0);
  REQUIRE_FALSE(res.polyhedron.contradiction());
  REQUIRE(res.regions.size() == 1);
  REQUIRE(res.adjacency.complete());
}

TEST_CASE("projection agrees with the elimination oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams gp;
    gp.constraint_count = 8;
    gp.variable_count = 4;
    gp.projection_ratio = 0.5;
    gp.density = 0.25;
    gp.seed = seed;
    Polyhedron input = generate(gp);
    std::size_t drop = eliminate_count(gp);
    std::vector<std::size_t> elim;
    for (std::size_t i = 0; i < drop; ++i) elim.push_back(gp.variable_count - 1 - i);

    Polyhedron oracle = fourier_motzkin(input, elim);
    SolveResult res = project_solve(input, elim);
    auto verdict = poly_equal(res.polyhedron, oracle);
    INFO("seed " << seed);
  REQUIRE(verdict.equal);
    REQUIRE(res.adjacency.complete());
  }
}

TEST_CASE("sampled points land in at least one closure and at most one interior") {
  Polyhedron pyr = parse_polyhedron(kPyramid);
  SolveResult res = project_solve(pyr, {2});

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RatPoint w(2);
    for (auto& v : w) {
      long num = static_cast<long>(rng() % 2001) - 1000;
      v = Rational(num, 100);
    }
    std::size_t closures = 0, interiors = 0;
    for (const auto& r : res.regions) {
      if (in_closure(r, w)) ++closures;
      if (region_contains_strict(r, w)) ++interiors;
    }
    REQUIRE(closures >= 1);
    REQUIRE(interiors <= 1);
  }
}

TEST_CASE("hull of a polyhedron with itself is itself") {
  Polyhedron pp = parse_polyhedron(kP);
  SolveResult res = hull_solve(pp, pp);
  auto verdict = poly_equal(res.polyhedron, pp);
  REQUIRE(verdict.equal);
}

TEST_CASE("hull of two translated boxes is the bounding box between them") {
  Polyhedron a = parse_polyhedron(kSquare);
  Polyhedron b(2, {Constraint({q(1), q(0)}, q(-2)), Constraint({q(-1), q(0)}, q(3)),
                   Constraint({q(0), q(1)}, q(0)), Constraint({q(0), q(-1)}, q(1))});
  SolveResult res = hull_solve(a, b);

  Polyhedron expect(2, {Constraint({q(1), q(0)}, q(0)), Constraint({q(-1), q(0)}, q(3)),
                        Constraint({q(0), q(1)}, q(0)), Constraint({q(0), q(-1)}, q(1))});
  auto verdict = poly_equal(res.polyhedron, expect);
  REQUIRE(verdict.equal);

  // hull contains both inputs: every hull row is a consequence of each input
  for (std::size_t i = 0; i < res.polyhedron.size(); ++i) {
    REQUIRE(farkas_combination(res.polyhedron.row(i), a.rows()).has_value());
    REQUIRE(farkas_combination(res.polyhedron.row(i), b.rows()).has_value());
  }

  // and the operation is commutative
  SolveResult flipped = hull_solve(b, a);
  auto same = poly_equal(flipped.polyhedron, res.polyhedron);
  REQUIRE(same.equal);
}

TEST_CASE("float stage faults never change the result") {
  Polyhedron pp = parse_polyhedron(kP);
  Polyhedron pyr = parse_polyhedron(kPyramid);
  SolveResult clean_p = project_solve(pp, {1});
  SolveResult clean_pyr = project_solve(pyr, {2});

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EngineConfig cfg;
    cfg.faults.wrong_basis = true;
    cfg.faults.seed = seed;
    SolveResult res = project_solve(pp, {1}, cfg);
    auto verdict = poly_equal(res.polyhedron, clean_p.polyhedron);
    INFO("wrong_basis seed " << seed);
  REQUIRE(verdict.equal);
    REQUIRE(res.stats.basis_rejections + res.stats.optimality_repairs > 0);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EngineConfig cfg;
    cfg.faults.premature_opt = true;
    cfg.faults.premature_after = seed % 3;
    cfg.faults.seed = seed;
    SolveResult res = project_solve(pyr, {2}, cfg);
    auto verdict = poly_equal(res.polyhedron, clean_pyr.polyhedron);
    INFO("premature seed " << seed);
  REQUIRE(verdict.equal);
  }
}

TEST_CASE("runs are deterministic per seed and equivalent across seeds") {
  Polyhedron pyr = parse_polyhedron(kPyramid);

  EngineConfig c1;
  c1.seed = 42;
  SolveResult a = project_solve(pyr, {2}, c1);
  SolveResult b = project_solve(pyr, {2}, c1);
  REQUIRE(a.regions.size() == b.regions.size());
  REQUIRE(a.functions == b.functions);
  REQUIRE(a.polyhedron.rows() == b.polyhedron.rows());

  EngineConfig c2;
  c2.seed = 1234;
  c2.initial_points = 3;
  SolveResult c = project_solve(pyr, {2}, c2);
  auto verdict = poly_equal(c.polyhedron, a.polyhedron);
  REQUIRE(verdict.equal);
}

TEST_CASE("audit mode re-checks every frontier witness") {
  Polyhedron pyr = parse_polyhedron(kPyramid);
  EngineConfig cfg;
  cfg.audit = true;
  SolveResult res = project_solve(pyr, {2}, cfg);
  REQUIRE(res.adjacency.complete());
  REQUIRE(res.regions.size() >= 4);
}
