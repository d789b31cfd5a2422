#include <catch2/catch_amalgamated.hpp>

#include "plp/checkers.hpp"
#include "plp/plp_problem.hpp"
#include "plp/region.hpp"

using namespace plp;

namespace {

const char* kSquare = "2 4\n1 0 0\n-1 0 1\n0 1 0\n0 -1 1\n";
const char* kP =
    "2 4\n"
    "-1 2 -2\n"
    "2 -1 -1\n"
    "-1 -1 8\n"
    "2 4 -7\n";

Rational q(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("strict interior points are verified exactly") {
  Polyhedron sq = parse_polyhedron(kSquare);
  RatPoint p = strict_interior_point(sq);
  REQUIRE(sq.contains_strict(p));

  // a plane in 2-D: nonempty but no strict interior
  Polyhedron flat(2, {Constraint({q(1), q(0)}, q(0)),
                      Constraint({q(-1), q(0)}, q(0))});
  REQUIRE_THROWS_AS(strict_interior_point(flat), NoInteriorError);

  Polyhedron empty(1, {Constraint({q(0)}, q(-1))});
  REQUIRE_THROWS_AS(strict_interior_point(empty), NoInteriorError);
}

TEST_CASE("projection construction lays out the constraint and objective templates") {
  Polyhedron sq = parse_polyhedron(kSquare);
  RatPoint center = {q(1, 2), q(1, 2)};
  PlpProblem p = construct_projection(sq, {1}, center);

  REQUIRE(p.n_vars == 5);
  REQUIRE(p.m_params == 1);
  REQUIRE(p.keep_dims == std::vector<std::size_t>{0});
  REQUIRE(p.norm_param == RatPoint{q(1, 2)});

  // normalization row: evaluations at the interior point, lambda_0, rhs 1
  REQUIRE(p.m.rows() == 2);
  REQUIRE(p.m.cols() == 6);
  RatVec row0 = {q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1), q(1)};
  for (std::size_t j = 0; j < 6; ++j) REQUIRE(p.m.at(0, j) == row0[j]);
  // eliminated-coordinate row: x2 coefficients, zero for lambda_0 and rhs
  RatVec row1 = {q(0), q(0), q(1), q(-1), q(0), q(0)};
  for (std::size_t j = 0; j < 6; ++j) REQUIRE(p.m.at(1, j) == row1[j]);

  // objective template: kept coefficients then constants (lambda_0 is 1 there)
  RatVec o0 = {q(1), q(-1), q(0), q(0), q(0), q(0)};
  RatVec o1 = {q(0), q(1), q(0), q(1), q(1), q(0)};
  for (std::size_t j = 0; j < 6; ++j) {
    REQUIRE(p.o.at(0, j) == o0[j]);
    REQUIRE(p.o.at(1, j) == o1[j]);
  }

  RatVec c = obj_at(p, {q(3)});
  REQUIRE(c == RatVec{q(3), q(-2), q(0), q(1), q(1)});

  FloatLp lp = make_float_lp(p, {3.0});
  REQUIRE(lp.rows == 2);
  REQUIRE(lp.cols == 5);
  REQUIRE(lp.c[1] == Catch::Approx(-2.0));
  REQUIRE(lp.b[0] == Catch::Approx(1.0));

  REQUIRE_THROWS_AS(construct_projection(sq, {2}), std::invalid_argument);
}

TEST_CASE("basis verification verdicts") {
  Polyhedron poly = parse_polyhedron(kP);
  RatPoint inside = {q(5, 2), q(3)};
  PlpProblem p = construct_projection(poly, {1}, inside);

  SECTION("independent feasible basis") {
    BasisCheck c = verify_feasible_basis(p, {0, 1});
    REQUIRE(c.verdict == BasisVerdict::Verified);
    REQUIRE_FALSE(c.degenerate);
    REQUIRE(c.basic_values == RatVec{q(2, 7), q(4, 7)});
  }
  SECTION("negative basic value is infeasible") {
    BasisCheck c = verify_feasible_basis(p, {1, 2});
    REQUIRE(c.verdict == BasisVerdict::Infeasible);
  }
  SECTION("dependent columns are not a basis") {
    REQUIRE(verify_feasible_basis(p, {0, 0}).verdict == BasisVerdict::NotABasis);
  }
  SECTION("constant column is out of range") {
    REQUIRE(verify_feasible_basis(p, {0, 5}).verdict == BasisVerdict::NotABasis);
  }
  SECTION("a basis too small to span the rows is rejected") {
    REQUIRE(verify_feasible_basis(p, {0}).verdict == BasisVerdict::NotABasis);
  }
  SECTION("degenerate flag on a zero basic value") {
    Polyhedron sq = parse_polyhedron(kSquare);
    PlpProblem ps = construct_projection(sq, {1}, RatPoint{q(1, 2), q(1, 2)});
    BasisCheck c = verify_feasible_basis(ps, {2, 4});
    REQUIRE(c.verdict == BasisVerdict::Verified);
    REQUIRE(c.degenerate);
    REQUIRE(c.basic_values == RatVec{q(0), q(1)});
  }
}

TEST_CASE("region extraction reconstructs frontier and optimal function exactly") {
  Polyhedron poly = parse_polyhedron(kP);
  RatPoint inside = {q(5, 2), q(3)};
  PlpProblem p = construct_projection(poly, {1}, inside);

  BasisCheck check = verify_feasible_basis(p, {0, 1});
  REQUIRE(check.verdict == BasisVerdict::Verified);
  ExtractionResult ext = extract_region(p, {0, 1}, check);
  REQUIRE_FALSE(ext.empty);
  REQUIRE_FALSE(ext.region.flat);

  // optimal function (6x - 8)/7: exactly 1 at the apex x = 5/2
  REQUIRE(ext.region.zstar == RatVec{q(6, 7), q(-8, 7)});
  REQUIRE(eval_zstar(ext.region.zstar, p.norm_param) == 1);

  // all three reduced-cost rows are proportional to 5/2 - x; one survives
  REQUIRE(ext.region.rows.size() == 1);
  REQUIRE(eval_constraint(ext.region.rows[0], p.norm_param) == 0);
  REQUIRE(region_contains_strict(ext.region, {q(2)}));
  REQUIRE_FALSE(region_contains_strict(ext.region, {q(3)}));
  REQUIRE(region_contains(ext.region, {q(5, 2)}));

  Region r = ext.region;
  RatPoint rep = region_interior_rep(p, r);
  REQUIRE(region_contains_strict(r, rep));
}

TEST_CASE("half-plane projection: one real function, one constant region") {
  // x1 >= 3 with x2 free and eliminated; apex at x1 = 4
  Polyhedron ray(2, {Constraint({q(1), q(0)}, q(-3))});
  PlpProblem p = construct_projection(ray, {1}, RatPoint{q(4), q(0)});
  REQUIRE(p.n_vars == 2);

  // basis on the constraint multiplier: Z = x - 3, region x <= 4
  BasisCheck c0 = verify_feasible_basis(p, {0});
  REQUIRE(c0.verdict == BasisVerdict::Verified);
  ExtractionResult e0 = extract_region(p, {0}, c0);
  REQUIRE_FALSE(e0.empty);
  REQUIRE_FALSE(e0.region.flat);
  REQUIRE(e0.region.zstar == RatVec{q(1), q(-3)});
  REQUIRE(e0.region.rows.size() == 1);
  REQUIRE(e0.region.rows[0].coeffs == RatVec{q(-1)});
  REQUIRE(e0.region.rows[0].constant == q(4));

  // basis on lambda_0: the constant function 1, region x >= 4
  BasisCheck c1 = verify_feasible_basis(p, {1});
  REQUIRE(c1.verdict == BasisVerdict::Verified);
  ExtractionResult e1 = extract_region(p, {1}, c1);
  REQUIRE_FALSE(e1.empty);
  REQUIRE(e1.region.zstar == RatVec{q(0), q(1)});
  REQUIRE(e1.region.rows.size() == 1);
  REQUIRE(region_contains_strict(e1.region, {q(5)}));
  REQUIRE_FALSE(region_contains_strict(e1.region, {q(3)}));
}

TEST_CASE("hull construction couples the two generator blocks") {
  Polyhedron a = parse_polyhedron(kSquare);
  Polyhedron b = parse_polyhedron("2 4\n1 0 -2\n-1 0 3\n0 1 0\n0 -1 1\n");  // [2,3]x[0,1]
  RatPoint center = {q(1, 2), q(1, 2)};
  PlpProblem p = construct_hull(a, b, center);

  REQUIRE(p.kind == PlpKind::Hull);
  REQUIRE(p.m_params == 2);
  REQUIRE(p.n_vars == 4 + 1 + 4 + 1);
  REQUIRE(p.m.rows() == 1 + 2 + 1);

  // normalization row touches only the unprimed block
  for (std::size_t i = 5; i < 10; ++i) REQUIRE(p.m.at(0, i) == 0);
  REQUIRE(p.m.at(0, 4) == 1);
  REQUIRE(p.m.at(0, p.n_vars) == 1);

  // coordinate rows: A coefficients against negated B coefficients
  REQUIRE(p.m.at(1, 0) == 1);   // x1 coeff of a-row 0
  REQUIRE(p.m.at(1, 5) == -1);  // -x1 coeff of b-row 0
  REQUIRE(p.m.at(2, 2) == 1);   // x2 coeff of a-row 2
  REQUIRE(p.m.at(2, 7) == -1);

  // constant-matching row: b_A, 1, -b_B, -1, rhs 0
  REQUIRE(p.m.at(3, 1) == 1);
  REQUIRE(p.m.at(3, 4) == 1);
  REQUIRE(p.m.at(3, 5) == 2);   // -(-2)
  REQUIRE(p.m.at(3, 9) == -1);
  REQUIRE(p.m.at(3, p.n_vars) == 0);

  // objective template ignores the primed block entirely
  for (std::size_t k = 0; k <= p.m_params; ++k)
    for (std::size_t i = 5; i < 10; ++i) REQUIRE(p.o.at(k, i) == 0);

  // an empty right-hand side polyhedron has no interior: rejected
  Polyhedron flat(2, {Constraint({q(1), q(0)}, q(0)),
                      Constraint({q(-1), q(0)}, q(0))});
  REQUIRE_THROWS_AS(construct_hull(a, flat), NoInteriorError);
  Polyhedron other(1, {Constraint({q(1)}, q(0))});
  REQUIRE_THROWS_AS(construct_hull(a, other), std::invalid_argument);
}

TEST_CASE("objective instantiation matches the lifted objective on feasible points") {
  // at any parameter w, c = chi_w^T O applied to a feasible lambda equals
  // sum_i (a_i . (w, x_elim) + b_i) lambda_i + lambda_0 for any completion of
  // the eliminated coordinates satisfying the balance rows
  Polyhedron poly = parse_polyhedron(kP);
  PlpProblem p = construct_projection(poly, {1}, RatPoint{q(5, 2), q(3)});
  RatPoint w = {q(7, 4)};
  RatVec c = obj_at(p, w);

  // feasible lambda: basis {0, 1} basic solution
  RatVec lambda = {q(2, 7), q(4, 7), q(0), q(0), q(0)};
  Rational via_c = 0;
  for (std::size_t j = 0; j < 5; ++j) via_c += c[j] * lambda[j];

  // lifted objective at (w, t) for any t: the x2 terms cancel because the
  // lambda satisfies the elimination row; pick t = 10
  Rational t = 10;
  Rational lifted = lambda[4];
  for (std::size_t i = 0; i < 4; ++i) {
    Rational gi = poly.row(i).coeffs[0] * w[0] + poly.row(i).coeffs[1] * t +
                  poly.row(i).constant;
    lifted += lambda[i] * gi;
  }
  REQUIRE(via_c == lifted);
}
