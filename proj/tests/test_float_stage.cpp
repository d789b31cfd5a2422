#include <catch2/catch_amalgamated.hpp>

#include "plp/checkers.hpp"
#include "plp/float_simplex.hpp"
#include "plp/minimize.hpp"

using namespace plp;

namespace {

FloatLp hand_lp() {
  // min -2a - 3b  s.t.  a + b + s1 = 4,  a + 3b + s2 = 6
  // optimum -9 at (a, b) = (3, 1)
  FloatLp lp;
  lp.rows = 2;
  lp.cols = 4;
  lp.a = {1, 1, 1, 0, 1, 3, 0, 1};
  lp.b = {4, 6};
  lp.c = {-2, -3, 0, 0};
  return lp;
}

std::vector<Constraint> p_rows() {
  // the four-constraint polygon whose last row is redundant
  return {
      Constraint({Rational(-1), Rational(2)}, Rational(-2)),
      Constraint({Rational(2), Rational(-1)}, Rational(-1)),
      Constraint({Rational(-1), Rational(-1)}, Rational(8)),
      Constraint({Rational(2), Rational(4)}, Rational(-7)),
  };
}

std::vector<FloatConstraint> to_mirror(const std::vector<Constraint>& rows) {
  std::vector<FloatConstraint> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[i].rel = rows[i].rel;
    out[i].constant = to_double_nearest_or_throw(rows[i].constant);
    for (const auto& c : rows[i].coeffs)
      out[i].coeffs.push_back(to_double_nearest_or_throw(c));
  }
  return out;
}

}  // namespace

TEST_CASE("float simplex solves the hand-checked LP") {
  FloatLpResult r = float_simplex(hand_lp());
  REQUIRE(r.status == FloatLpStatus::Optimal);
  REQUIRE(r.basic == std::vector<std::size_t>{0, 1});
  REQUIRE(r.objective == Catch::Approx(-9.0));
  REQUIRE(r.lambda[0] == Catch::Approx(3.0));
  REQUIRE(r.lambda[1] == Catch::Approx(1.0));
}

TEST_CASE("float simplex detects infeasibility and unboundedness") {
  FloatLp bad;
  bad.rows = 1;
  bad.cols = 2;
  bad.a = {1, 1};
  bad.b = {-1};
  bad.c = {0, 0};
  REQUIRE(float_simplex(bad).status == FloatLpStatus::Infeasible);

  FloatLp unb;
  unb.rows = 1;
  unb.cols = 2;
  unb.a = {1, -1};
  unb.b = {0};
  unb.c = {-1, 0};
  REQUIRE(float_simplex(unb).status == FloatLpStatus::Unbounded);
}

TEST_CASE("fault injection: premature optimality stops short of the optimum") {
  FaultInjection f;
  f.premature_opt = true;
  f.premature_after = 0;
  FloatLpResult r = float_simplex(hand_lp(), kFloatTolerance, &f);
  REQUIRE(r.status == FloatLpStatus::Optimal);
  REQUIRE(r.objective > -9.0 + 1e-6);  // stopped while an improving column existed
}

TEST_CASE("fault injection: wrong basis corrupts the reported basis only") {
  FaultInjection f;
  f.wrong_basis = true;
  f.seed = 7;
  FloatLpResult clean = float_simplex(hand_lp());
  FloatLpResult r = float_simplex(hand_lp(), kFloatTolerance, &f);
  REQUIRE(r.status == FloatLpStatus::Optimal);
  REQUIRE(r.basic != clean.basic);
  FloatLpResult again = float_simplex(hand_lp(), kFloatTolerance, &f);
  REQUIRE(again.basic == r.basic);  // deterministic corruption
}

TEST_CASE("interior point of the unit square") {
  Polyhedron sq = parse_polyhedron("2 4\n1 0 0\n-1 0 1\n0 1 0\n0 -1 1\n");
  FloatInterior fi = interior_point(sq.float_mirror());
  REQUIRE(fi.found);
  REQUIRE(fi.delta == Catch::Approx(0.5).margin(1e-6));
  REQUIRE(fi.x[0] == Catch::Approx(0.5).margin(1e-6));
  REQUIRE(fi.x[1] == Catch::Approx(0.5).margin(1e-6));
}

TEST_CASE("razor-thin cone: float sees flat, exact arithmetic does not") {
  // slopes 10.0000001 and 10: the wedge is ~5e-9 wide inside the unit box,
  // below the float tolerance, but rationally it has interior points
  std::vector<Constraint> rows = {
      Constraint({Rational(100000001, 10000000), Rational(-1)}, Rational(0)),
      Constraint({Rational(-10), Rational(1)}, Rational(0)),
  };
  FloatInterior fi = cone_interior_point(to_mirror(rows), 2);
  REQUIRE_FALSE(fi.found);

  FlatCheck fc = flat_region_check(rows, 2);
  REQUIRE_FALSE(fc.flat);
  RatPoint w = *fc.witness;
  for (const auto& r : rows) REQUIRE(eval_constraint(r, w) >= 1);
}

TEST_CASE("a genuinely flat cone is reported flat exactly") {
  std::vector<Constraint> rows = {
      Constraint({Rational(1), Rational(-1)}, Rational(0)),
      Constraint({Rational(-1), Rational(1)}, Rational(0)),
      Constraint({Rational(1), Rational(0)}, Rational(0)),
  };
  // x1 = x2, x1 >= 0: a half-line in the plane
  REQUIRE(flat_region_check(rows, 2).flat);
}

TEST_CASE("ray tracing marks the polygon's real facets and never clears the redundant one") {
  auto rows = p_rows();
  auto mirror = to_mirror(rows);
  FloatPoint x0 = {2.5, 3.0};
  RayTraceOutcome rt = ray_trace_minimize(mirror, x0);
  REQUIRE(rt.fate[0] == RowFate::Irredundant);
  REQUIRE(rt.fate[1] == RowFate::Irredundant);
  REQUIRE(rt.fate[2] == RowFate::Irredundant);
  REQUIRE(rt.fate[3] == RowFate::Uncertain);  // redundant rows are never first hits
}

TEST_CASE("float witness search separates facets from redundant rows") {
  auto mirror = to_mirror(p_rows());
  WitnessVerdict w0 = witness_point(mirror, 0);
  REQUIRE(w0.fate == RowFate::Irredundant);
  WitnessVerdict w3 = witness_point(mirror, 3);
  REQUIRE(w3.fate == RowFate::Redundant);
}

TEST_CASE("hybrid minimization keeps the facets and certifies the drop") {
  auto rows = p_rows();
  MinimizationResult mr = minimize_hybrid(rows, 2);
  REQUIRE(mr.irredundant == std::vector<std::size_t>{0, 1, 2});
  REQUIRE(mr.dropped.size() == 1);
  REQUIRE(mr.dropped[0].row == 3);

  std::vector<Constraint> others;
  for (std::size_t j : mr.dropped[0].others) others.push_back(rows[j]);
  REQUIRE(farkas_verify(mr.dropped[0].cert, rows[3], others));

  // witnesses: each violates its row and satisfies the other kept rows
  for (std::size_t k = 0; k < mr.irredundant.size(); ++k) {
    std::size_t i = mr.irredundant[k];
    const RatPoint& w = mr.witnesses[k];
    REQUIRE(eval_constraint(rows[i], w) < 0);
    for (std::size_t j : mr.irredundant)
      if (j != i) REQUIRE(eval_constraint(rows[j], w) >= 0);
  }
}

TEST_CASE("hybrid minimization agrees with the pure exact path") {
  auto rows = p_rows();
  MinimizationResult hy = minimize_hybrid(rows, 2);
  MinimizationResult ex = minimize_hybrid(rows, 2, {}, kFloatTolerance, false);
  ExactMinimization ref = minimize_exact(rows);
  REQUIRE(hy.irredundant == ref.kept);
  REQUIRE(ex.irredundant == ref.kept);
  for (std::size_t k = 0; k < ex.irredundant.size(); ++k) {
    std::size_t i = ex.irredundant[k];
    REQUIRE(eval_constraint(rows[i], ex.witnesses[k]) < 0);
  }
}

TEST_CASE("proportional rows collapse to a single kept row") {
  std::vector<Constraint> rows = {
      Constraint({Rational(-30, 7)}, Rational(75, 7)),
      Constraint({Rational(-2)}, Rational(5)),
      Constraint({Rational(-6, 7)}, Rational(15, 7)),
  };
  MinimizationResult mr = minimize_hybrid(rows, 1);
  REQUIRE(mr.irredundant == std::vector<std::size_t>{2});
  REQUIRE(mr.dropped.size() == 2);
}

TEST_CASE("witness confirmation: strict rows are witnessed on their boundary side") {
  // two nonstrict halfplanes and a strict one; the point (7/2, 7/2) sits on
  // both nonstrict boundaries and strictly inside the strict row
  std::vector<Constraint> rows = {
      Constraint({Rational(1), Rational(-1)}, Rational(0)),
      Constraint({Rational(-1), Rational(-1)}, Rational(7)),
      Constraint({Rational(0), Rational(2)}, Rational(-3), Relation::Strict),
  };
  RatPoint w = {Rational(7, 2), Rational(7, 2)};
  WitnessCheck ok = verify_witness(rows, 2, w);
  REQUIRE(ok.confirmed);

  WitnessCheck bad = verify_witness(rows, 2, RatPoint{Rational(0), Rational(0)});
  REQUIRE_FALSE(bad.confirmed);
  REQUIRE_FALSE(bad.reason.empty());
}

TEST_CASE("witness confirmation enforces the margin exactly") {
  std::vector<Constraint> rows = {
      Constraint({Rational(1)}, Rational(0)),   // x >= 0
      Constraint({Rational(1)}, Rational(1)),   // x >= -1
  };
  // violation by exactly the margin passes; anything shallower fails
  REQUIRE(verify_witness(rows, 0, RatPoint{Rational(-1, 10000000)}).confirmed);
  REQUIRE_FALSE(verify_witness(rows, 0, RatPoint{Rational(-1, 100000000)}).confirmed);
  // a point violating the other row too is rejected
  REQUIRE_FALSE(verify_witness(rows, 0, RatPoint{Rational(-3)}).confirmed);
}

TEST_CASE("float geometric wrapper solves a box LP") {
  FloatGeoLp lp;
  lp.dim = 1;
  lp.rows.push_back({{-1.0}, 1.0, false});  // x <= 1
  lp.rows.push_back({{1.0}, 0.0, false});   // x >= 0
  lp.objective = {1.0};
  FloatGeoResult r = solve_geo_float(lp);
  REQUIRE(r.status == FloatLpStatus::Optimal);
  REQUIRE(r.value == Catch::Approx(1.0));
}
