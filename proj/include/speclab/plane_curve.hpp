// speclab/plane_curve.hpp
//
// Local models of spectral curves inside a disc |z| <= R: polynomials
// monic in x whose x-coefficients are polynomials in z. Three coefficient
// patterns occur:
//
//   SLTrace  (SL_H)          p = x^m + a_2 x^{m-2} + ... + a_m      (no x^{m-1})
//   EvenHalf (SO_STAR/SP_MM) p = x^{2m} + a_1 x^{2m-2} + ... + a_m  (even powers)
//   Quotient                 q = w^m + a_1 w^{m-1} + ... + a_m      (w = x^2)
//
// Discriminants are resultants Res_x(p, dp/dx), reconstructed from scalar
// Sylvester determinants: sampled at integer nodes and interpolated exactly
// in the exact backend, sampled on a circle in the floating backend.

#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/real_forms.hpp"
#include "speclab/scalar.hpp"

namespace speclab {

enum class CurveKind { SLTrace, EvenHalf, Quotient };

inline constexpr double kDefaultDiscRadius = 1.5;
inline constexpr double kDiscEdgeTol = 1e-9;

template <class S>
class PlaneCurve {
 public:
  PlaneCurve(CurveKind kind, Group group, int m, std::vector<Poly<S>> a,
             double disc_radius)
      : kind_(kind), group_(group), m_(m), a_(std::move(a)),
        disc_radius_(disc_radius) {
    if (m_ < 1) throw MOutOfRange("plane curve: m must be >= 1");
    if (disc_radius_ <= 0) throw ConfigError("plane curve: R must be > 0");
    const std::size_t expected =
        (kind_ == CurveKind::SLTrace) ? std::size_t(m_ - 1) : std::size_t(m_);
    if (a_.size() != expected)
      throw BadDegreePattern("plane curve: wrong number of coefficients");
  }

  CurveKind kind() const { return kind_; }
  Group group() const { return group_; }
  int m() const { return m_; }
  double disc_radius() const { return disc_radius_; }
  const std::vector<Poly<S>>& coefficients() const { return a_; }

  int deg_x() const { return kind_ == CurveKind::EvenHalf ? 2 * m_ : m_; }

  int deg_z() const {
    int d = 0;
    for (const auto& p : a_) d = std::max(d, p.degree());
    return d;
  }

  // x-power carried by coefficient list entry j.
  int x_power(std::size_t j) const {
    switch (kind_) {
      case CurveKind::SLTrace: return m_ - int(j) - 2;
      case CurveKind::EvenHalf: return 2 * (m_ - int(j) - 1);
      case CurveKind::Quotient: return m_ - int(j) - 1;
    }
    return 0;
  }

  const Poly<S>& last_coefficient() const {
    if (a_.empty()) throw BadDegreePattern("plane curve: no coefficients");
    return a_.back();
  }

  // p(., z0) as a monic polynomial in x.
  Poly<S> fiber_poly(const S& z0) const {
    std::vector<S> c(std::size_t(deg_x()) + 1, S(0));
    c.back() = S(1);
    for (std::size_t j = 0; j < a_.size(); ++j)
      c[std::size_t(x_power(j))] += a_[j].eval(z0);
    return Poly<S>(std::move(c));
  }

  // dp/dz(x0, z0).
  S dz_at(const S& x0, const S& z0) const {
    S acc(0);
    for (std::size_t j = 0; j < a_.size(); ++j)
      acc += a_[j].derivative().eval(z0) * scalar_pow(x0, x_power(j));
    return acc;
  }

  typename scalar_traits<S>::Real max_coeff_mag() const {
    using Real = typename scalar_traits<S>::Real;
    Real out(0);
    for (const auto& p : a_) out = std::max(out, p.max_coeff_mag());
    return out;
  }

 private:
  CurveKind kind_;
  Group group_;
  int m_;
  std::vector<Poly<S>> a_;
  double disc_radius_;
};

// Group-facing constructor: SL_H expects [a_2..a_m], SO_STAR/SP_MM expect
// [a_1..a_m]. Wrong list length is a BadDegreePattern.
template <class S>
PlaneCurve<S> curve_from_coefficients(Group group, int m,
                                      std::vector<Poly<S>> a,
                                      double disc_radius = kDefaultDiscRadius) {
  CurveKind kind =
      group == Group::SL_H ? CurveKind::SLTrace : CurveKind::EvenHalf;
  return PlaneCurve<S>(kind, group, m, std::move(a), disc_radius);
}

template <class S>
PlaneCurve<Complex> to_floating(const PlaneCurve<S>& c) {
  std::vector<Poly<Complex>> a;
  a.reserve(c.coefficients().size());
  for (const auto& p : c.coefficients()) a.push_back(to_floating(p));
  return PlaneCurve<Complex>(c.kind(), c.group(), c.m(), std::move(a),
                             c.disc_radius());
}

// Deterministic random curve; coefficient polynomials of degree coeff_deg.
template <class S>
PlaneCurve<S> random_curve(Group group, int m, std::uint64_t seed,
                           int coeff_deg = 4,
                           double disc_radius = kDefaultDiscRadius) {
  SplitMix64 rng(seed);
  const std::size_t count =
      group == Group::SL_H ? std::size_t(m - 1) : std::size_t(m);
  std::vector<Poly<S>> a;
  a.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<S> c(std::size_t(coeff_deg) + 1);
    for (auto& v : c) v = random_scalar<S>(rng);
    a.push_back(Poly<S>(std::move(c)));
  }
  return curve_from_coefficients(group, m, std::move(a), disc_radius);
}

namespace detail {

// Sylvester determinant of (p, q) together with its Hadamard row bound,
// used to decide whether an interpolated discriminant is identically zero.
template <class S>
std::pair<S, double> resultant_with_bound(const Poly<S>& p, const Poly<S>& q) {
  const int dp = p.degree(), dq = q.degree();
  if (dp <= 0 || dq < 0) return {resultant(p, q), 1.0};
  if (dq == 0) return {resultant(p, q), 1.0};
  const int n = dp + dq;
  Matrix<S> syl = Matrix<S>::Zero(n, n);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) syl(r, r + k) = p.coeff(dp - k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) syl(dq + r, r + k) = q.coeff(dq - k);
  double bound = 1.0;
  for (int r = 0; r < n; ++r) {
    double row = 0.0;
    for (int c = 0; c < n; ++c) {
      Complex v = scalar_traits<S>::to_std_complex(syl(r, c));
      row += std::norm(v);
    }
    bound *= std::sqrt(std::max(row, 1e-300));
  }
  return {determinant(syl), bound};
}

}  // namespace detail

// Res_x(p, dp/dx) as a polynomial in z. The boolean is true when every
// sampled determinant is negligible against its Hadamard bound, i.e. the
// discriminant vanishes identically and the curve is non-reduced.
template <class S>
std::pair<Poly<S>, bool> discriminant(const PlaneCurve<S>& curve) {
  const int dx = curve.deg_x();
  const int dz = curve.deg_z();
  const int bound_deg = std::max(0, (2 * dx - 1) * dz);
  const int npts = bound_deg + 1;

  if constexpr (scalar_traits<S>::is_exact) {
    const std::size_t count = std::size_t(npts);
    std::vector<S> nodes(count), values(count);
    bool all_zero = true;
    for (int k = 0; k < npts; ++k) {
      nodes[std::size_t(k)] = S(k);
      Poly<S> p = curve.fiber_poly(nodes[std::size_t(k)]);
      values[std::size_t(k)] = resultant(p, p.derivative());
      if (!scalar_traits<S>::is_zero(values[std::size_t(k)])) all_zero = false;
    }
    if (all_zero) return {Poly<S>(), true};
    return {interpolate_newton(nodes, values), false};
  } else {
    const double rho = std::max(1.0, curve.disc_radius());
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<Complex> values(std::size_t(npts), Complex(0.0));
    double worst_ratio = 0.0;
    for (int k = 0; k < npts; ++k) {
      Complex zk = std::polar(rho, two_pi * double(k) / double(npts));
      Poly<Complex> p = curve.fiber_poly(zk);
      auto [val, bound] = detail::resultant_with_bound(p, p.derivative());
      values[std::size_t(k)] = val;
      worst_ratio = std::max(worst_ratio, std::abs(val) / bound);
    }
    if (worst_ratio <= 1e-12) return {Poly<Complex>(), true};
    return {interpolate_on_circle(values, rho), false};
  }
}

struct RootCluster {
  Complex value;
  int multiplicity;
};

// Cluster a root list within 1e-7 * (1 + max |root|).
inline std::vector<RootCluster> cluster_roots(std::vector<Complex> rs,
                                              double tol_scale = kClusterTol) {
  std::vector<RootCluster> out;
  if (rs.empty()) return out;
  double rmax = 0.0;
  for (const auto& r : rs) rmax = std::max(rmax, std::abs(r));
  const double tol = tol_scale * (1.0 + rmax);
  std::sort(rs.begin(), rs.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(rs.size(), false);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (used[i]) continue;
    Complex sum = rs[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(rs[j] - sum / double(count)) <= tol) {
        sum += rs[j];
        ++count;
        used[j] = true;
      }
    }
    out.push_back({sum / double(count), count});
  }
  return out;
}

// Branch locus: roots of the discriminant inside |z| <= R + 1e-9, with
// multiplicities from clustering. NonReduced if the discriminant vanishes.
template <class S>
std::vector<RootCluster> branch_points(const PlaneCurve<S>& curve) {
  auto [disc, is_zero] = discriminant(curve);
  if (is_zero)
    throw NonReduced("branch_points: discriminant vanishes identically");
  std::vector<RootCluster> all = cluster_roots(roots(to_floating(disc)));
  std::vector<RootCluster> in_disc;
  for (const auto& rc : all)
    if (std::abs(rc.value) <= curve.disc_radius() + kDiscEdgeTol)
      in_disc.push_back(rc);
  return in_disc;
}

struct SingularPoint {
  Complex x, z;
};

struct SmoothnessReport {
  bool smooth = true;
  bool non_reduced = false;
  std::vector<SingularPoint> singular_points;
};

inline constexpr double kBranchClusterTol = 1e-5;
inline constexpr double kSingularTol = 1e-6;

// Smoothness of the affine curve over the disc. At each branch point z*,
// multiple x-roots are located by (loose) clustering; the curve is singular
// there when dp/dz also vanishes at the multiple root. A vanishing
// discriminant (non-reduced curve) is reported as singular directly.
template <class S>
SmoothnessReport smoothness_check(const PlaneCurve<S>& curve) {
  SmoothnessReport report;
  auto [disc, disc_zero] = discriminant(curve);
  if (disc_zero) {
    report.smooth = false;
    report.non_reduced = true;
    return report;
  }
  PlaneCurve<Complex> fc = to_floating(curve);
  std::vector<RootCluster> zs = cluster_roots(roots(to_floating(disc)));
  for (const auto& zc : zs) {
    if (std::abs(zc.value) > curve.disc_radius() + kDiscEdgeTol) continue;
    Poly<Complex> p = fc.fiber_poly(zc.value);
    std::vector<RootCluster> xs =
        cluster_roots(roots(p), kBranchClusterTol);
    for (const auto& xc : xs) {
      if (xc.multiplicity < 2) continue;
      // Scale: the z-derivative evaluated with absolute coefficients.
      double scale = 1.0;
      for (std::size_t j = 0; j < fc.coefficients().size(); ++j) {
        const Poly<Complex> da = fc.coefficients()[j].derivative();
        double mag = 0.0;
        for (int k = 0; k <= da.degree(); ++k)
          mag += std::abs(da.coeff(k)) *
                 std::pow(std::abs(zc.value), double(k));
        scale += mag * std::pow(std::abs(xc.value), double(fc.x_power(j)));
      }
      if (std::abs(fc.dz_at(xc.value, zc.value)) <= kSingularTol * scale) {
        report.smooth = false;
        report.singular_points.push_back({xc.value, zc.value});
      }
    }
  }
  return report;
}

// Fixed points of the sheet involution x -> -x on an even curve: the zeros
// of a_m in the disc, located directly (no resultant involved).
template <class S>
std::vector<RootCluster> sigma_fixed_points(const PlaneCurve<S>& curve) {
  if (curve.kind() != CurveKind::EvenHalf)
    throw WrongGroup("sigma_fixed_points: curve has no sheet involution");
  const Poly<S>& am = curve.last_coefficient();
  if (am.is_zero())
    throw DegenerateCase("sigma_fixed_points: a_m vanishes identically");
  std::vector<RootCluster> all = cluster_roots(roots(to_floating(am)));
  std::vector<RootCluster> in_disc;
  for (const auto& rc : all)
    if (std::abs(rc.value) <= curve.disc_radius() + kDiscEdgeTol)
      in_disc.push_back(rc);
  return in_disc;
}

// The quotient by x -> -x in the variable w = x^2: same coefficient list,
// consecutive powers of w.
template <class S>
PlaneCurve<S> quotient_curve(const PlaneCurve<S>& curve) {
  if (curve.kind() != CurveKind::EvenHalf)
    throw WrongGroup("quotient_curve: curve has no sheet involution");
  return PlaneCurve<S>(CurveKind::Quotient, curve.group(), curve.m(),
                       curve.coefficients(), curve.disc_radius());
}

struct FiberRoots {
  std::vector<RootCluster> clusters;
  // For even curves: index pairs (i, j) with value_j = -value_i; a cluster
  // at x = 0 is self-paired as (i, i).
  std::vector<std::pair<int, int>> sigma_pairs;
  bool regular = true;  // all multiplicities 1
};

// Roots of p(., z0) with multiplicity. Even curves are solved through the
// quotient (w-roots, then x = +-sqrt(w)), which keeps the +- pairing exact
// and marks z0 non-regular when a sheet collision or an x = 0 sheet occurs.
template <class S>
FiberRoots fiber_roots(const PlaneCurve<S>& curve, const Complex& z0) {
  PlaneCurve<Complex> fc = to_floating(curve);
  FiberRoots out;
  if (curve.kind() == CurveKind::EvenHalf) {
    Poly<Complex> q = quotient_curve(fc).fiber_poly(z0);
    std::vector<RootCluster> ws = cluster_roots(roots(q));
    double wmax = 0.0;
    for (const auto& w : ws) wmax = std::max(wmax, std::abs(w.value));
    const double ztol = kClusterTol * (1.0 + wmax);
    for (const auto& w : ws) {
      if (std::abs(w.value) <= ztol) {
        int idx = int(out.clusters.size());
        out.clusters.push_back({Complex(0.0), 2 * w.multiplicity});
        out.sigma_pairs.emplace_back(idx, idx);
      } else {
        Complex x = std::sqrt(w.value);
        int idx = int(out.clusters.size());
        out.clusters.push_back({x, w.multiplicity});
        out.clusters.push_back({-x, w.multiplicity});
        out.sigma_pairs.emplace_back(idx, idx + 1);
      }
    }
  } else {
    out.clusters = cluster_roots(roots(fc.fiber_poly(z0)));
  }
  for (const auto& rc : out.clusters)
    if (rc.multiplicity != 1) out.regular = false;
  return out;
}

}  // namespace speclab
