#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "speclab/real_forms.hpp"
#include "speclab/rng.hpp"

using namespace speclab;

namespace {

MatrixXq std_skew2() {
  MatrixXq j(2, 2);
  j << GaussQ(0), GaussQ(1), GaussQ(-1), GaussQ(0);
  return j;
}

}  // namespace

TEST_CASE("quaternionic special linear model divides the form out of the twisted endomorphism") {
  auto space = standard_symplectic<GaussQ>(4);
  auto model = build_sl_quaternion(space.omega(), space);
  CHECK(max_mag(MatrixXq(model.phi - MatrixXq::Identity(4, 4))) == 0);
  CHECK(model.m == 2);
  CHECK(model.beta.size() == 0);

  SplitMix64 rng(61);
  MatrixXq phi_skew = random_skew<GaussQ>(4, rng);
  auto generic = build_sl_quaternion(phi_skew, space);
  CHECK(check_form_symmetric(generic.phi, generic.space) == 0);

  CHECK_THROWS_AS(build_sl_quaternion(MatrixXq::Identity(4, 4).eval(), space), NotSkew);
}

TEST_CASE("orthogonal-quaternionic model squares to minus one for the standard skew blocks") {
  MatrixXq j = std_skew2();
  auto model = build_so_star(j, j);
  CHECK(model.m == 1);
  CHECK(max_mag(MatrixXq(model.phi * model.phi + MatrixXq::Identity(4, 4))) == 0);
  CHECK(check_form_symmetric(model.phi, model.space) == 0);

  Poly<GaussQ> p = pfaffian_char_poly(model.phi, model.space);
  CHECK(p == Poly<GaussQ>(std::vector<GaussQ>{GaussQ(1), GaussQ(0), GaussQ(1)}));

  auto pairs = involution_pairing(model);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].dim == 2);
  CHECK(!pairs[0].self_paired);
  CHECK(std::abs(pairs[0].lambda - Complex(0.0, 1.0)) < 1e-9);
  CHECK(pairs[0].residual <= 1e-9);
}

TEST_CASE("vanishing lower block makes the model nilpotent with a pure power polynomial") {
  MatrixXq j = std_skew2();
  auto model = build_so_star(j, MatrixXq::Zero(2, 2).eval());
  CHECK(max_mag(MatrixXq(model.phi * model.phi)) == 0);
  Poly<GaussQ> p = pfaffian_char_poly(model.phi, model.space);
  CHECK(p == Poly<GaussQ>(std::vector<GaussQ>{GaussQ(0), GaussQ(0), GaussQ(1)}));
  CHECK(verify_annihilator(model.phi, p) == 0);
}

TEST_CASE("zero model has a single self-paired kernel cluster") {
  auto model = build_so_star(MatrixXq::Zero(2, 2).eval(), MatrixXq::Zero(2, 2).eval());
  auto pairs = involution_pairing(model);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].self_paired);
  CHECK(pairs[0].dim == 4);
  CHECK(pairs[0].residual <= 1e-12);
}

TEST_CASE("both paired families stay exactly form-symmetric with a negation-equivariant spectrum") {
  for (Group g : {Group::SO_STAR, Group::SP_MM}) {
    for (int m : {1, 2}) {
      auto model = random_model<GaussQ>(g, m, 1000 + std::uint64_t(m));
      CHECK(check_form_symmetric(model.phi, model.space) == 0);

      // iota Phi iota = -Phi, exactly
      MatrixXq iota = block_involution(model);
      CHECK(max_mag(MatrixXq(iota * model.phi * iota + model.phi)) == 0);

      // the half-degree polynomial is even, exactly
      Poly<GaussQ> p = pfaffian_char_poly(model.phi, model.space);
      CHECK(p.degree() == 2 * m);
      CHECK(max_odd_coefficient(p) == 0);
    }
  }
}

TEST_CASE("involution pairing reports negation-symmetric clusters for floating models") {
  for (Group g : {Group::SO_STAR, Group::SP_MM}) {
    for (std::uint64_t seed : {5u, 6u, 7u}) {
      auto model = random_model<Complex>(g, 2, seed);
      auto pairs = involution_pairing(model);
      int total = 0;
      for (const auto& pr : pairs) {
        total += 2 * pr.dim;
        if (pr.self_paired) total -= pr.dim;
        CHECK(pr.residual <= 1e-9);
      }
      CHECK(total == 8);
    }
  }
}

TEST_CASE("involution pairing rejects the quaternionic special linear family") {
  auto model = random_model<Complex>(Group::SL_H, 2, 3);
  CHECK_THROWS_AS(involution_pairing(model), WrongGroup);
}

TEST_CASE("an unpaired eigenvalue is an error, not a silent skip") {
  MatrixXc phi = MatrixXc::Zero(4, 4);
  phi(0, 0) = Complex(1.0);
  phi(1, 1) = Complex(2.0);
  phi(2, 2) = Complex(3.0);
  phi(3, 3) = Complex(4.0);
  HiggsModel<Complex> model{Group::SO_STAR, 1, phi,
                            standard_symplectic<Complex>(4), MatrixXc(),
                            MatrixXc()};
  CHECK_THROWS_AS(involution_pairing(model), UnpairedEigenvalue);

  // paired values but mismatched multiplicities
  phi(0, 0) = Complex(1.0);
  phi(1, 1) = Complex(1.0);
  phi(2, 2) = Complex(-1.0);
  phi(3, 3) = Complex(4.0);
  HiggsModel<Complex> skewed{Group::SO_STAR, 1, phi,
                             standard_symplectic<Complex>(4), MatrixXc(),
                             MatrixXc()};
  CHECK_THROWS_AS(involution_pairing(skewed), UnpairedEigenvalue);
}

TEST_CASE("kernel signs: invertible upper block, vanishing lower block gives all +1") {
  auto model = build_so_star(std_skew2(), MatrixXq::Zero(2, 2).eval());
  auto signs = fixed_point_signs(model);
  CHECK(signs.signs == std::vector<int>{+1, +1});
  CHECK(signs.kernel.cols() == 2);
  // kernel vectors live in the first block
  CHECK(max_mag(MatrixXq(signs.kernel.block(2, 0, 2, 2))) == 0);
  CHECK(max_mag(MatrixXq(model.phi * signs.kernel)) == 0);
}

TEST_CASE("kernel signs: rank-one upper block in the indefinite symplectic family balances") {
  MatrixXq beta = MatrixXq::Zero(2, 2);
  beta(0, 0) = GaussQ(1);
  auto model = build_sp_mm(beta, standard_symplectic<GaussQ>(2),
                           standard_symplectic<GaussQ>(2));
  auto signs = fixed_point_signs(model);
  REQUIRE(signs.signs.size() == 2);
  CHECK(signs.signs[0] + signs.signs[1] == 0);
  CHECK(max_mag(MatrixXq(model.phi * signs.kernel)) == 0);
}

TEST_CASE("kernel signs require a kernel") {
  auto model = build_so_star(std_skew2(), std_skew2());
  CHECK_THROWS_AS(fixed_point_signs(model), NoKernel);
  auto sl = random_model<GaussQ>(Group::SL_H, 1, 9);
  CHECK_THROWS_AS(fixed_point_signs(sl), WrongGroup);
}

TEST_CASE("composing the blocks of the standard skew pair gives minus identity") {
  auto model = build_so_star(std_skew2(), std_skew2());
  auto comp = cayley_compose(model);
  CHECK(max_mag(MatrixXq(comp.psi + MatrixXq::Identity(2, 2))) == 0);
  CHECK(comp.symmetry_residual == 0);
}

TEST_CASE("composite block is exactly symmetric for the form carried by the lower block") {
  SplitMix64 rng(71);
  int done = 0;
  for (int t = 0; t < 12 && done < 4; ++t) {
    MatrixXq beta = random_skew<GaussQ>(4, rng);
    MatrixXq gamma = random_skew<GaussQ>(4, rng);
    if (oracles::det_cofactor(gamma).is_zero()) continue;
    auto model = build_so_star(beta, gamma);
    auto comp = cayley_compose(model);
    ++done;
    CHECK(comp.symmetry_residual == 0);

    // the composite keeps the determinant-square identity for its own form
    MatrixXq gamma_skew = (gamma - MatrixXq(gamma.transpose())) / GaussQ(2);
    SymplecticSpace<GaussQ> gspace(gamma_skew);
    Poly<GaussQ> p = pfaffian_char_poly(comp.psi, gspace);
    CHECK(p * p == oracles::char_poly_cofactor(comp.psi));
  }
  CHECK(done >= 4);
}

TEST_CASE("singular lower block cannot be composed") {
  auto model = build_so_star(std_skew2(), MatrixXq::Zero(2, 2).eval());
  CHECK_THROWS_AS(cayley_compose(model), SingularGamma);
}

TEST_CASE("random models are deterministic in the seed") {
  auto a = random_model<GaussQ>(Group::SP_MM, 2, 77);
  auto b = random_model<GaussQ>(Group::SP_MM, 2, 77);
  CHECK(max_mag(MatrixXq(a.phi - b.phi)) == 0);
  auto c = random_model<GaussQ>(Group::SP_MM, 2, 78);
  CHECK(max_mag(MatrixXq(a.phi - c.phi)) > 0);

  auto f1 = random_model<Complex>(Group::SO_STAR, 3, 5);
  auto f2 = random_model<Complex>(Group::SO_STAR, 3, 5);
  CHECK(max_mag(MatrixXc(f1.phi - f2.phi)) == 0.0);
  CHECK_THROWS_AS(random_model<Complex>(Group::SO_STAR, 0, 5), MOutOfRange);
}
