// speclab/numerology.hpp
//
// Closed-form integer bookkeeping for the three model families: genera of
// the spectral curve and its quotient, determinant-bundle degrees, the
// direct-image degree relation, fixed-point degree counts, the Milnor-Wood
// bound, moduli dimension counts and fiber component counts. Everything is
// computed in unbounded integers.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "speclab/errors.hpp"
#include "speclab/real_forms.hpp"

namespace speclab {

inline void require_mg(long m, long g) {
  if (m < 1) throw MOutOfRange("numerology: m must be >= 1");
  if (g < 1) throw MOutOfRange("numerology: g must be >= 1");
}

// dim of the matching complex group: SL(2m,C), SO(4m,C), Sp(4m,C).
inline BigInt complex_group_dim(Group group, long m) {
  BigInt mm(m);
  switch (group) {
    case Group::SL_H: return 4 * mm * mm - 1;
    case Group::SO_STAR: return 2 * mm * (4 * mm - 1);
    case Group::SP_MM: return 2 * mm * (4 * mm + 1);
  }
  throw ConfigError("complex_group_dim: unknown group");
}

struct GenusResult {
  BigInt g_s;
  std::optional<BigInt> g_sbar;  // quotient curve; even families only
};

// SL_H: g_S = m^2(g-1)+1. SO_STAR/SP_MM: g_S = 4m^2(g-1)+1 and the
// quotient has g_Sbar = m(2m-1)(g-1)+1. Evaluated literally for any g >= 1.
inline GenusResult spectral_genus(Group group, long m, long g) {
  require_mg(m, g);
  BigInt mm(m), gm1(g - 1);
  GenusResult out;
  if (group == Group::SL_H) {
    out.g_s = mm * mm * gm1 + 1;
  } else {
    out.g_s = 4 * mm * mm * gm1 + 1;
    out.g_sbar = mm * (2 * mm - 1) * gm1 + 1;
  }
  return out;
}

// deg E = m(m-1)(2g-2); always even.
inline BigInt determinant_degree(long m, long g) {
  require_mg(m, g);
  BigInt mm(m);
  return mm * (mm - 1) * (2 * g - 2);
}

struct GrrResult {
  BigInt deg_w;      // deg L - (m^2 - m)(g - 1)
  BigInt threshold;  // m(m-1)(g-1), the semistability bound on deg L
  bool within_bound; // deg L <= threshold
};

// The direct-image degree relation (1-g)m + deg W = (1-g_S) + deg L,
// solved for deg W, with the semistability threshold on deg L.
inline GrrResult grr_degree(long m, long g, long deg_l) {
  require_mg(m, g);
  BigInt mm(m), gm1(g - 1);
  GrrResult out;
  out.threshold = mm * (mm - 1) * gm1;
  out.deg_w = BigInt(deg_l) - (mm * mm - mm) * gm1;
  out.within_bound = BigInt(deg_l) <= out.threshold;
  return out;
}

struct LefschetzResult {
  BigInt h_diff;  // h^+ - h^- = 2(2M - 4m(g-1))
  BigInt h_sum;   // h^+ + h^- = 4m(1 - g + deg L)
  BigInt deg_w;   // 2M - 4m(g-1); independent of deg L
  bool odd_m_count;  // M odd: invariant bundle moduli smooth and connected
};

// Degree of W from the sheet-involution action being +1 at M of the
// 4m(g-1) fixed points, via the holomorphic Lefschetz counts.
inline LefschetzResult lefschetz_degree(long m, long g, long big_m,
                                        long deg_l) {
  require_mg(m, g);
  BigInt fixed = BigInt(4) * m * (g - 1);
  if (big_m < 0 || BigInt(big_m) > fixed)
    throw MOutOfRange("lefschetz_degree: M outside [0, 4m(g-1)]");
  LefschetzResult out;
  out.deg_w = 2 * BigInt(big_m) - fixed;
  out.h_diff = 2 * out.deg_w;
  out.h_sum = BigInt(4) * m * (1 - g + deg_l);
  out.odd_m_count = (big_m % 2) != 0;
  return out;
}

struct MilnorWoodVerdict {
  BigInt bound;  // 4m(g-1)
  bool pass;     // |deg W| <= bound
};

inline MilnorWoodVerdict milnor_wood(long m, long g, long deg_w) {
  require_mg(m, g);
  MilnorWoodVerdict out;
  out.bound = BigInt(4) * m * (g - 1);
  out.pass = abs(BigInt(deg_w)) <= out.bound;
  return out;
}

// 2^{4m(g-1)-1} fiber components for the even families; g = 1 makes the
// exponent negative and is rejected.
inline BigInt component_count(long m, long g) {
  require_mg(m, g);
  BigInt fixed = BigInt(4) * m * (g - 1);
  if (fixed < 1)
    throw DegenerateCase("component_count: no fixed points at g = 1");
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2,
                mpz_get_ui(BigInt(fixed - 1).get_mpz_t()));
  return out;
}

struct DegreeSample {
  long big_m;
  long deg_l;
  BigInt deg_w;
};

struct NumerologyReport {
  Group group;
  long m = 0, g = 0;
  BigInt g_s;
  std::optional<BigInt> g_sbar;
  BigInt deg_e;
  BigInt base_dim, fiber_dim, parabolic_dim, total_dim;
  BigInt milnor_wood_bound;
  BigInt component_count;  // 1 for SL_H: the fixed-determinant fiber is connected
  std::vector<DegreeSample> degree_samples;
  bool degenerate = false;  // g = 1: all dimension formulas collapse to 0
};

// Dimension counts per family. SL_H: base (m^2-1)(g-1), fiber 3m^2(g-1).
// SO_STAR: base m(2m+1)(g-1), fiber 3m(2m-1)(g-1). SP_MM adds one
// projective-line parameter per parabolic point, 4m(g-1) in all. The total
// always equals (g-1) * dim of the matching complex group; Error if not.
inline NumerologyReport moduli_dimensions(Group group, long m, long g) {
  require_mg(m, g);
  BigInt mm(m), gm1(g - 1);
  NumerologyReport rep;
  rep.group = group;
  rep.m = m;
  rep.g = g;
  GenusResult gen = spectral_genus(group, m, g);
  rep.g_s = gen.g_s;
  rep.g_sbar = gen.g_sbar;
  rep.parabolic_dim = 0;
  switch (group) {
    case Group::SL_H:
      rep.deg_e = determinant_degree(m, g);
      rep.base_dim = (mm * mm - 1) * gm1;
      rep.fiber_dim = 3 * mm * mm * gm1;
      rep.component_count = 1;
      break;
    case Group::SO_STAR:
    case Group::SP_MM:
      // E lives on the degree-2m cover: Lambda^2 E = pi^* K^{2m-1}.
      rep.deg_e = determinant_degree(2 * m, g);
      rep.base_dim = mm * (2 * mm + 1) * gm1;
      rep.fiber_dim = 3 * mm * (2 * mm - 1) * gm1;
      if (group == Group::SP_MM) rep.parabolic_dim = 4 * mm * gm1;
      rep.component_count =
          (g >= 2) ? component_count(m, g) : BigInt(0);
      break;
  }
  rep.total_dim = rep.base_dim + rep.fiber_dim + rep.parabolic_dim;
  rep.milnor_wood_bound = 4 * mm * gm1;
  rep.degenerate = (g == 1);

  if (rep.total_dim != complex_group_dim(group, m) * gm1)
    throw Error("moduli_dimensions: dimension identity failed");

  if (group != Group::SL_H && g >= 2) {
    long fixed = 4 * m * (g - 1);
    for (long big_m : {0L, fixed / 2, fixed}) {
      LefschetzResult lf = lefschetz_degree(m, g, big_m, 0);
      rep.degree_samples.push_back({big_m, 0, lf.deg_w});
    }
  }
  return rep;
}

struct SweepResult {
  bool pass = true;
  long long checks = 0;
  std::string first_failure;
};

// The full integer identity sweep: dimension identities for every family,
// Lefschetz degree independent of deg L, the semistability equivalence
// chain deg L <= threshold <=> deg W <= 0 <=> deg L <= deg E / 2, the
// Milnor-Wood bound meeting the extremal Lefschetz degrees, and the
// component count against the fixed-point count.
inline SweepResult numerology_sweep(long m_max = 20, long g_max = 20) {
  SweepResult out;
  auto fail = [&out](const std::string& what) {
    if (out.pass) out.first_failure = what;
    out.pass = false;
  };
  for (long m = 1; m <= m_max; ++m) {
    for (long g = 2; g <= g_max; ++g) {
      for (Group group : {Group::SL_H, Group::SO_STAR, Group::SP_MM}) {
        NumerologyReport rep = moduli_dimensions(group, m, g);
        ++out.checks;
        if (rep.total_dim != complex_group_dim(group, m) * BigInt(g - 1))
          fail("dimension identity");
      }
      // GRR equivalence chain over a window of deg L.
      BigInt deg_e = determinant_degree(m, g);
      for (long deg_l = -50; deg_l <= 50; ++deg_l) {
        GrrResult grr = grr_degree(m, g, deg_l);
        ++out.checks;
        bool a = BigInt(deg_l) <= grr.threshold;
        bool b = grr.deg_w <= 0;
        bool c = 2 * BigInt(deg_l) <= deg_e;
        if (a != b || b != c) fail("semistability equivalence chain");
      }
      // Lefschetz independence of deg L at three values of M.
      long fixed = 4 * m * (g - 1);
      for (long big_m : {0L, fixed / 2, fixed}) {
        BigInt ref = lefschetz_degree(m, g, big_m, -50).deg_w;
        for (long deg_l = -50; deg_l <= 50; ++deg_l) {
          ++out.checks;
          LefschetzResult lf = lefschetz_degree(m, g, big_m, deg_l);
          if (lf.deg_w != ref) fail("lefschetz degree depends on deg L");
          if (2 * lf.deg_w != lf.h_diff) fail("lefschetz h_diff relation");
        }
      }
      // Milnor-Wood extremes and component count.
      ++out.checks;
      MilnorWoodVerdict mw =
          milnor_wood(m, g, long(lefschetz_degree(m, g, fixed, 0)
                                     .deg_w.get_si()));
      if (!mw.pass || mw.bound != lefschetz_degree(m, g, fixed, 0).deg_w)
        fail("milnor-wood extremal case");
      if (lefschetz_degree(m, g, 0, 0).deg_w != -mw.bound)
        fail("milnor-wood negated extremal case");
      ++out.checks;
      BigInt doubled(1);
      for (long i = 1; i <= fixed - 1; ++i) doubled *= 2;
      if (component_count(m, g) != doubled)
        fail("component count vs fixed-point count");
    }
  }
  return out;
}

}  // namespace speclab
