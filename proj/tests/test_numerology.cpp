#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "speclab/numerology.hpp"

using namespace speclab;

TEST_CASE("spectral genus of the trace-free family") {
  auto r = spectral_genus(Group::SL_H, 2, 2);
  CHECK(r.g_s == 5);  // m^2 (g-1) + 1
  CHECK(!r.g_sbar.has_value());
  CHECK(spectral_genus(Group::SL_H, 3, 4).g_s == 28);
}

TEST_CASE("spectral genus of the even families carries the quotient genus") {
  auto r = spectral_genus(Group::SO_STAR, 1, 2);
  CHECK(r.g_s == 5);  // 4m^2 (g-1) + 1
  REQUIRE(r.g_sbar.has_value());
  CHECK(*r.g_sbar == 2);  // m(2m-1)(g-1) + 1

  auto s = spectral_genus(Group::SP_MM, 2, 3);
  CHECK(s.g_s == 33);
  CHECK(*s.g_sbar == 13);
}

TEST_CASE("genus-one bases collapse every genus to one") {
  for (Group g : {Group::SL_H, Group::SO_STAR, Group::SP_MM}) {
    auto r = spectral_genus(g, 3, 1);
    CHECK(r.g_s == 1);
    if (r.g_sbar) CHECK(*r.g_sbar == 1);
  }
}

TEST_CASE("determinant degree of the direct image") {
  CHECK(determinant_degree(2, 2) == 4);    // m(m-1)(2g-2)
  CHECK(determinant_degree(3, 3) == 24);
  CHECK(determinant_degree(1, 5) == 0);
}

TEST_CASE("pushforward degree sits exactly at the semistability threshold") {
  auto r = grr_degree(2, 2, 2);
  CHECK(r.threshold == 2);
  CHECK(r.deg_w == 0);
  CHECK(r.within_bound);

  auto v = grr_degree(2, 2, 4);
  CHECK(v.deg_w == 2);
  CHECK(!v.within_bound);

  CHECK_THROWS_AS(grr_degree(0, 2, 0), MOutOfRange);
}

TEST_CASE("fixed-point degree bookkeeping") {
  auto r = lefschetz_degree(1, 2, 4, 0);
  CHECK(r.deg_w == 4);  // 2M - 4m(g-1)
  CHECK(r.h_diff == 8);
  CHECK(!r.odd_m_count);

  auto lo = lefschetz_degree(1, 2, 0, 0);
  CHECK(lo.deg_w == -4);

  auto mid = lefschetz_degree(2, 3, 8, 0);
  CHECK(mid.deg_w == 0);

  auto odd = lefschetz_degree(1, 2, 3, 0);
  CHECK(odd.odd_m_count);

  // h_sum depends only on deg L
  CHECK(lefschetz_degree(1, 2, 4, 7).h_sum == BigInt(4) * (1 - 2 + 7));
  CHECK(lefschetz_degree(1, 2, 0, 7).h_sum == lefschetz_degree(1, 2, 4, 7).h_sum);

  CHECK_THROWS_AS(lefschetz_degree(1, 2, 5, 0), MOutOfRange);
  CHECK_THROWS_AS(lefschetz_degree(1, 2, -1, 0), MOutOfRange);
}

TEST_CASE("degree bound accepts the extremes and rejects just past them") {
  CHECK(milnor_wood(1, 2, 4).pass);
  CHECK(milnor_wood(1, 2, -4).pass);
  CHECK(!milnor_wood(1, 2, 5).pass);
  CHECK(milnor_wood(1, 2, 5).bound == 4);
  CHECK(milnor_wood(3, 1, 0).pass);  // bound degenerates to 0 at g = 1
  CHECK(!milnor_wood(3, 1, 1).pass);
}

TEST_CASE("component count is a power of two indexed by the bound") {
  CHECK(component_count(1, 2) == 8);    // 2^(4m(g-1)-1)
  CHECK(component_count(2, 2) == 128);
  CHECK(component_count(1, 3) == 128);
  CHECK_THROWS_AS(component_count(1, 1), DegenerateCase);

  BigInt big = component_count(20, 20);
  CHECK(mpz_sizeinbase(big.get_mpz_t(), 2) == 1520);  // 2^1519
}

TEST_CASE("moduli dimensions of the rank-two trace-free family") {
  auto r = moduli_dimensions(Group::SL_H, 2, 2);
  CHECK(r.base_dim == 3);    // (m^2 - 1)(g - 1)
  CHECK(r.fiber_dim == 12);  // 3 m^2 (g - 1)
  CHECK(r.parabolic_dim == 0);
  CHECK(r.total_dim == 15);  // (g - 1) dim SL(2m, C)
  CHECK(r.total_dim == complex_group_dim(Group::SL_H, 2));
  CHECK(r.component_count == 1);
  CHECK(r.g_s == 5);
  CHECK(r.deg_e == 4);
}

TEST_CASE("moduli dimensions of the rank-one even families") {
  auto so = moduli_dimensions(Group::SO_STAR, 1, 2);
  CHECK(so.base_dim == 3);   // m(2m+1)(g-1)
  CHECK(so.fiber_dim == 3);  // 3m(2m-1)(g-1)
  CHECK(so.parabolic_dim == 0);
  CHECK(so.total_dim == 6);  // (g-1) dim SO(4m, C)
  CHECK(so.component_count == 8);
  CHECK(so.deg_e == determinant_degree(2, 2));
  REQUIRE(so.g_sbar.has_value());
  CHECK(*so.g_sbar == 2);

  auto sp = moduli_dimensions(Group::SP_MM, 1, 2);
  CHECK(sp.base_dim == 3);
  CHECK(sp.fiber_dim == 3);
  CHECK(sp.parabolic_dim == 4);  // 4m(g-1) extra directions at the fixed points
  CHECK(sp.total_dim == 10);     // (g-1) times the complex group dimension
  CHECK(sp.total_dim == complex_group_dim(Group::SP_MM, 1));
}

TEST_CASE("degenerate genus-one reports collapse but stay well-formed") {
  auto r = moduli_dimensions(Group::SO_STAR, 2, 1);
  CHECK(r.degenerate);
  CHECK(r.total_dim == 0);
  CHECK(r.base_dim == 0);
  CHECK(r.degree_samples.empty());
}

TEST_CASE("degree samples walk the admissible fixed-point range") {
  auto r = moduli_dimensions(Group::SP_MM, 2, 3);
  REQUIRE(r.degree_samples.size() == 3);
  BigInt fixed = BigInt(4) * 2 * (3 - 1);
  CHECK(r.degree_samples.front().big_m == 0);
  CHECK(BigInt(r.degree_samples.back().big_m) == fixed);
  for (const auto& ds : r.degree_samples) {
    auto lr = lefschetz_degree(2, 3, ds.big_m, ds.deg_l);
    CHECK(lr.deg_w == ds.deg_w);
    CHECK(milnor_wood(2, 3, long(mpz_get_si(ds.deg_w.get_mpz_t()))).pass);
  }
}

TEST_CASE("the full identity sweep passes") {
  auto sweep = numerology_sweep();
  CHECK(sweep.pass);
  CHECK(sweep.first_failure.empty());
  CHECK(sweep.checks > 100000);
}

TEST_CASE("out-of-range parameters are rejected uniformly") {
  CHECK_THROWS_AS(spectral_genus(Group::SL_H, 0, 2), MOutOfRange);
  CHECK_THROWS_AS(moduli_dimensions(Group::SO_STAR, -1, 2), MOutOfRange);
  CHECK_THROWS_AS(determinant_degree(1, 0), MOutOfRange);
  CHECK_THROWS_AS(milnor_wood(1, -3, 0), MOutOfRange);
}
