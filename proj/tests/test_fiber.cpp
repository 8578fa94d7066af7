#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "speclab/fiber.hpp"
#include "speclab/rng.hpp"

using namespace speclab;

namespace {

PlaneCurve<GaussQ> parabola() {
  return curve_from_coefficients(
      Group::SL_H, 2,
      std::vector<Poly<GaussQ>>{Poly<GaussQ>(std::vector<GaussQ>{GaussQ(0), GaussQ(-1)})});
}

// p = x^4 - 5x^2 + 4 = (x^2 - 1)(x^2 - 4), constant in z
PlaneCurve<GaussQ> biquadratic() {
  return curve_from_coefficients(
      Group::SO_STAR, 2,
      std::vector<Poly<GaussQ>>{Poly<GaussQ>(GaussQ(-5)), Poly<GaussQ>(GaussQ(4))});
}

FiberModel<GaussQ> exact_biquadratic_fiber() {
  return fiber_from_sheets(biquadratic(), GaussQ(0),
                           std::vector<GaussQ>{GaussQ(1), GaussQ(-1), GaussQ(2), GaussQ(-2)});
}

Vector2<GaussQ> qvec(int a, int b) {
  Vector2<GaussQ> v;
  v << GaussQ(a), GaussQ(b);
  return v;
}

int sheet_index(const FiberModel<Complex>& f, Complex y) {
  for (std::size_t i = 0; i < f.sheets.size(); ++i)
    if (std::abs(f.sheets[i] - y) < 1e-9) return int(i);
  return -1;
}

Matrix2<GaussQ> qmat(int a, int b, int c, int d) {
  Matrix2<GaussQ> m;
  m << GaussQ(a), GaussQ(b), GaussQ(c), GaussQ(d);
  return m;
}

}  // namespace

TEST_CASE("fiber assembly over a regular point lists sheets with reciprocal-derivative weights") {
  auto fiber = assemble_fiber(parabola(), Complex(1.0));
  REQUIRE(fiber.sheets.size() == 2);
  int plus = sheet_index(fiber, Complex(1.0));
  int minus = sheet_index(fiber, Complex(-1.0));
  REQUIRE(plus >= 0);
  REQUIRE(minus >= 0);
  CHECK(std::abs(fiber.weights[std::size_t(plus)] - Complex(0.5)) < 1e-12);
  CHECK(std::abs(fiber.weights[std::size_t(minus)] + Complex(0.5)) < 1e-12);
  CHECK(!fiber.paired);

  CHECK_THROWS_AS(assemble_fiber(parabola(), Complex(0.0)), NonRegularPoint);
}

TEST_CASE("weights of the biquadratic fiber are -1/6, 1/6, 1/12, -1/12") {
  auto fiber = assemble_fiber(biquadratic(), Complex(0.0));
  REQUIRE(fiber.sheets.size() == 4);
  CHECK(fiber.paired);
  struct { double y, w; } expected[] = {
      {1.0, -1.0 / 6.0}, {-1.0, 1.0 / 6.0}, {2.0, 1.0 / 12.0}, {-2.0, -1.0 / 12.0}};
  for (const auto& e : expected) {
    int i = sheet_index(fiber, Complex(e.y));
    REQUIRE(i >= 0);
    CHECK(std::abs(fiber.weights[std::size_t(i)] - Complex(e.w)) < 1e-12);
  }
  // sheets arrive in involution pairs with opposite weights
  for (std::size_t i = 0; i + 1 < fiber.sheets.size(); i += 2) {
    CHECK(std::abs(fiber.sheets[i] + fiber.sheets[i + 1]) < 1e-12);
    CHECK(std::abs(fiber.weights[i] + fiber.weights[i + 1]) < 1e-12);
  }
}

TEST_CASE("caller-supplied sheets are validated against the curve") {
  auto curve = biquadratic();
  auto fiber = exact_biquadratic_fiber();
  CHECK(fiber.weights[0] == GaussQ(Rational(-1, 6)));
  CHECK(fiber.weights[1] == GaussQ(Rational(1, 6)));
  CHECK(fiber.weights[2] == GaussQ(Rational(1, 12)));
  CHECK(fiber.weights[3] == GaussQ(Rational(-1, 12)));

  CHECK_THROWS_AS(
      fiber_from_sheets(curve, GaussQ(0), std::vector<GaussQ>{GaussQ(1), GaussQ(-1)}),
      DimensionMismatch);
  CHECK_THROWS_AS(
      fiber_from_sheets(curve, GaussQ(0),
                        std::vector<GaussQ>{GaussQ(3), GaussQ(-3), GaussQ(2), GaussQ(-2)}),
      NonRegularPoint);
  // sheets must come in (y, -y) order for an even curve
  CHECK_THROWS_AS(
      fiber_from_sheets(curve, GaussQ(0),
                        std::vector<GaussQ>{GaussQ(1), GaussQ(2), GaussQ(-1), GaussQ(-2)}),
      NonRegularPoint);
}

TEST_CASE("residue pairing is skew and kills aligned or disjoint sections") {
  auto fiber = exact_biquadratic_fiber();
  Section<GaussQ> e1(4, qvec(1, 0));
  Section<GaussQ> e2(4, qvec(0, 1));
  // <e1, e2> = sum of all weights = 0 by the pairing symmetry
  CHECK(residue_pairing(fiber, e1, e2) == GaussQ(0));
  CHECK(residue_pairing(fiber, e1, e1) == GaussQ(0));

  // disjoint support
  Section<GaussQ> s(4, qvec(0, 0));
  Section<GaussQ> t(4, qvec(0, 0));
  s[0] = qvec(1, 2);
  t[2] = qvec(3, 4);
  CHECK(residue_pairing(fiber, s, t) == GaussQ(0));

  // single-sheet pairing picks out that sheet's weight
  Section<GaussQ> a(4, qvec(0, 0)), b(4, qvec(0, 0));
  a[0] = qvec(1, 0);
  b[0] = qvec(0, 1);
  CHECK(residue_pairing(fiber, a, b) == GaussQ(Rational(-1, 6)));

  SplitMix64 rng(73);
  Section<GaussQ> u, v;
  for (int i = 0; i < 4; ++i) {
    u.push_back(qvec(int(rng.next_int(-5, 5)), int(rng.next_int(-5, 5))));
    v.push_back(qvec(int(rng.next_int(-5, 5)), int(rng.next_int(-5, 5))));
  }
  CHECK(residue_pairing(fiber, u, v) == GaussQ(0) - residue_pairing(fiber, v, u));

  CHECK_THROWS_AS(residue_pairing(fiber, Section<GaussQ>(2, qvec(1, 0)), e1),
                  DimensionMismatch);
}

TEST_CASE("two copies of the same line across a sheet pair are isotropic") {
  // on the parabola fiber the weights at +-1 cancel: 1/2 + (-1/2) = 0
  auto fiber = fiber_from_sheets(parabola(), GaussQ(1),
                                 std::vector<GaussQ>{GaussQ(1), GaussQ(-1)});
  CHECK(fiber.weights[0] + fiber.weights[1] == GaussQ(0));
  Section<GaussQ> s(2, qvec(1, 0));
  Section<GaussQ> t(2, qvec(0, 1));
  CHECK(residue_pairing(fiber, s, t) == GaussQ(0));
}

TEST_CASE("gram matrix stacks the weights into elementary skew blocks") {
  auto fiber = exact_biquadratic_fiber();
  MatrixXq g = gram_matrix(fiber);
  CHECK(g.rows() == 8);
  CHECK(skew_residual(g) == 0);
  CHECK(g(0, 1) == GaussQ(Rational(-1, 6)));
  CHECK(g(1, 0) == GaussQ(Rational(1, 6)));
  CHECK(!oracles::det_cofactor(MatrixXq(g.block(0, 0, 4, 4))).is_zero());

  FiberModel<GaussQ> broken = fiber;
  broken.weights[1] = GaussQ(0);
  CHECK_THROWS_AS(gram_matrix(broken), DegeneratePairing);
}

TEST_CASE("multiplication by the fiber coordinate is symmetric and has the fiber polynomial") {
  auto fiber = fiber_from_sheets(parabola(), GaussQ(1),
                                 std::vector<GaussQ>{GaussQ(1), GaussQ(-1)});
  auto mult = multiplication_operator(fiber);
  CHECK(mult.symmetry_residual == 0);
  MatrixXq expect = MatrixXq::Zero(4, 4);
  expect(0, 0) = GaussQ(1);
  expect(1, 1) = GaussQ(1);
  expect(2, 2) = GaussQ(-1);
  expect(3, 3) = GaussQ(-1);
  CHECK(max_mag(MatrixXq(mult.op - expect)) == 0);

  SymplecticSpace<GaussQ> space(gram_matrix(fiber));
  Poly<GaussQ> p = pfaffian_char_poly(mult.op, space);
  CHECK(p == fiber.p_z0);
}

TEST_CASE("the multiplication operator recovers the biquadratic exactly") {
  auto fiber = exact_biquadratic_fiber();
  auto mult = multiplication_operator(fiber);
  CHECK(mult.symmetry_residual == 0);
  SymplecticSpace<GaussQ> space(gram_matrix(fiber));
  CHECK(pfaffian_char_poly(mult.op, space) == fiber.p_z0);
}

TEST_CASE("the floating roundtrip matches coefficients to high relative accuracy") {
  for (std::uint64_t seed : {81u, 82u, 83u}) {
    auto curve = random_curve<Complex>(Group::SP_MM, 2, seed);
    auto fiber = assemble_fiber(curve, Complex(0.3, 0.1));
    auto mult = multiplication_operator(fiber);
    CHECK(mult.symmetry_residual <= 1e-9);
    SymplecticSpace<Complex> space(gram_matrix(fiber));
    Poly<Complex> p = pfaffian_char_poly(mult.op, space);
    double scale = std::max(1.0, fiber.p_z0.max_coeff_mag());
    for (int k = 0; k <= 4; ++k)
      CHECK(std::abs(p.coeff(k) - fiber.p_z0.coeff(k)) <= 1e-9 * scale);
  }
}

TEST_CASE("identity lifts with positive sign produce two Lagrangian halves") {
  auto fiber = exact_biquadratic_fiber();
  auto lift = make_involutive_lift(
      1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, 1), qmat(1, 0, 0, 1)});
  auto split = equivariant_split(fiber, lift);
  CHECK(split.verdict == SplitVerdict::DoubleLagrangian);
  CHECK(split.intra_residual == 0);
  CHECK(split.cross_nondegenerate);
  CHECK(split.v_plus.cols() == 4);
  CHECK(split.v_minus.cols() == 4);
}

TEST_CASE("determinant minus-one lifts produce orthogonal nondegenerate halves") {
  auto fiber = exact_biquadratic_fiber();
  auto lift = make_involutive_lift(
      -1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, -1), qmat(1, 0, 0, -1)});
  auto split = equivariant_split(fiber, lift);
  CHECK(split.verdict == SplitVerdict::OrthogonalSum);
  CHECK(split.cross_residual == 0);
  CHECK(split.diag_nondegenerate);
}

TEST_CASE("lifts that are not volume-normalized involutions are rejected") {
  auto fiber = exact_biquadratic_fiber();
  auto stretched = make_involutive_lift(
      1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, 2), qmat(1, 0, 0, 2)});
  CHECK_THROWS_AS(equivariant_split(fiber, stretched), BadLift);

  auto mismatched = make_involutive_lift(
      1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, -1), qmat(1, 0, 0, -1)});
  CHECK_THROWS_AS(equivariant_split(fiber, mismatched), BadLift);

  auto bad_eps = make_involutive_lift(
      3, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, 1), qmat(1, 0, 0, 1)});
  CHECK_THROWS_AS(equivariant_split(fiber, bad_eps), BadLift);

  auto short_lift =
      make_involutive_lift(1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, 1)});
  CHECK_THROWS_AS(equivariant_split(fiber, short_lift), DimensionMismatch);

  CHECK_THROWS_AS(make_involutive_lift(
                      1, std::vector<Matrix2<GaussQ>>{qmat(1, 1, 1, 1)}),
                  BadLift);

  auto unpaired = fiber_from_sheets(parabola(), GaussQ(1),
                                    std::vector<GaussQ>{GaussQ(1), GaussQ(-1)});
  auto lift = make_involutive_lift(1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, 1)});
  CHECK_THROWS_AS(equivariant_split(unpaired, lift), WrongGroup);
}

TEST_CASE("split verdicts are invariant under rescaling the weights") {
  auto fiber = exact_biquadratic_fiber();
  FiberModel<GaussQ> scaled = fiber;
  for (auto& w : scaled.weights) w *= GaussQ(3);
  auto lift = make_involutive_lift(
      1, std::vector<Matrix2<GaussQ>>{qmat(1, 0, 0, 1), qmat(1, 0, 0, 1)});
  CHECK(equivariant_split(scaled, lift).verdict == SplitVerdict::DoubleLagrangian);
  auto lift_m = make_involutive_lift(
      -1, std::vector<Matrix2<GaussQ>>{qmat(0, 1, 1, 0), qmat(0, 1, 1, 0)});
  CHECK(equivariant_split(scaled, lift_m).verdict == SplitVerdict::OrthogonalSum);
}

TEST_CASE("random unitary lifts reproduce the dichotomy on random even fibers") {
  SplitMix64 rng(91);
  int done = 0;
  for (std::uint64_t seed = 101; seed < 140 && done < 8; ++seed) {
    auto curve = random_curve<Complex>(seed % 2 ? Group::SO_STAR : Group::SP_MM, 2, seed);
    FiberModel<Complex> fiber;
    try {
      fiber = assemble_fiber(curve, Complex(0.25, -0.3));
    } catch (const NonRegularPoint&) {
      continue;
    }
    int pairs = int(fiber.sheets.size() / 2);
    auto plus = equivariant_split(fiber, random_unitary_lift(1, pairs, rng));
    CHECK(plus.verdict == SplitVerdict::DoubleLagrangian);
    auto minus = equivariant_split(fiber, random_unitary_lift(-1, pairs, rng));
    CHECK(minus.verdict == SplitVerdict::OrthogonalSum);
    ++done;
  }
  CHECK(done == 8);
}
