// speclab/spectrum.hpp
//
// Pfaffian characteristic polynomials of form-symmetric endomorphisms.
// For a symmetric with respect to a skew form omega, det(xI - a) is the
// square of the monic degree-m polynomial p(x) = Pf(omega(xI - a))/Pf(omega)
// computed here, and p annihilates a.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/matrix.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/structured.hpp"

namespace speclab {

// Characteristic polynomial det(xI - a) by Faddeev-LeVerrier; the only
// divisions are by integers, so the exact backend stays exact.
template <class S>
Poly<S> char_poly(const Matrix<S>& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw DimensionMismatch("char_poly: matrix not square");
  std::vector<S> c(std::size_t(n) + 1, S(0));
  c[std::size_t(n)] = S(1);
  Matrix<S> m = Matrix<S>::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m).eval();
    S tr(0);
    for (Eigen::Index i = 0; i < n; ++i) tr += m(i, i);
    S ck = -(tr / S(int(k)));
    c[std::size_t(n - k)] = ck;
    m += ck * Matrix<S>::Identity(n, n);
  }
  return Poly<S>(std::move(c));
}

namespace detail {

// Pfaffian of a skew matrix with polynomial entries by Laplace-style
// expansion along the lowest active index, memoized on the index subset.
// Division-free; used for the symbolic expansion of Pf(x*Omega - Omega*a).
template <class S>
Poly<S> pfaffian_poly(const std::vector<std::vector<Poly<S>>>& b,
                      std::uint32_t mask,
                      std::unordered_map<std::uint32_t, Poly<S>>& memo) {
  if (mask == 0) return Poly<S>(S(1));
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  const int i = __builtin_ctz(mask);
  std::uint32_t rest = mask & ~(1u << i);
  Poly<S> acc;
  int sign = 1;
  for (std::uint32_t r = rest; r != 0; r &= r - 1) {
    const int j = __builtin_ctz(r);
    Poly<S> sub = pfaffian_poly(b, rest & ~(1u << j), memo);
    Poly<S> term = b[std::size_t(i)][std::size_t(j)] * sub;
    acc = (sign > 0) ? acc + term : acc - term;
    sign = -sign;
  }
  memo.emplace(mask, acc);
  return acc;
}

}  // namespace detail

// Monic degree-m Pfaffian characteristic polynomial of a form-symmetric a
// on a 2m-dimensional symplectic space. Exact backend: the quotient
// Pf(omega(xI - a))/Pf(omega) is expanded symbolically over polynomial
// entries (interpolated exactly at integer nodes above dimension 16, where
// the subset expansion no longer pays). Floating backend: p is recovered by
// interpolation at m+1 roots-of-unity nodes of radius 1 + max_mag(a).
template <class S>
Poly<S> pfaffian_char_poly(const Matrix<S>& a, const SymplecticSpace<S>& space,
                           double tol = kDefaultTol) {
  const Eigen::Index n = space.dim();
  if (a.rows() != a.cols() || a.rows() != n)
    throw DimensionMismatch("pfaffian_char_poly: size mismatch");
  if (!scalar_traits<S>::passes(check_form_symmetric(a, space), tol))
    throw NotSymmetric("pfaffian_char_poly: a is not symmetric for the form");
  if (n == 0) return Poly<S>(S(1));
  const int m = int(n / 2);
  const S pf_omega = pfaffian(space.omega(), tol);

  if constexpr (scalar_traits<S>::is_exact) {
    Matrix<S> oa = space.omega() * a;
    if (n <= 16) {
      const std::size_t dim = std::size_t(n);
      std::vector<std::vector<Poly<S>>> b(dim, std::vector<Poly<S>>(dim));
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          b[std::size_t(i)][std::size_t(j)] =
              Poly<S>(std::vector<S>{-oa(i, j), space.omega()(i, j)});
      std::unordered_map<std::uint32_t, Poly<S>> memo;
      Poly<S> pf = detail::pfaffian_poly(b, (n >= 32) ? ~0u : ((1u << n) - 1u),
                                         memo);
      std::vector<S> c(pf.coeffs());
      for (auto& v : c) v = v / pf_omega;
      return Poly<S>(std::move(c));
    }
    std::vector<S> nodes(std::size_t(m) + 1), values(std::size_t(m) + 1);
    for (int k = 0; k <= m; ++k) {
      nodes[std::size_t(k)] = S(k);
      Matrix<S> bk = S(k) * space.omega() - oa;
      values[std::size_t(k)] = pfaffian(bk, tol) / pf_omega;
    }
    return interpolate_newton(nodes, values);
  } else {
    // Project both factors onto exact skewness so the interpolation nodes
    // see none of the (tolerated) symmetry noise of the inputs.
    Matrix<S> omega_skew =
        ((space.omega() - space.omega().transpose()) / 2.0).eval();
    Matrix<S> oa = space.omega() * a;
    oa = ((oa - oa.transpose()) / 2.0).eval();
    const double r = 1.0 + max_mag(a);
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<Complex> values(std::size_t(m) + 1);
    for (int k = 0; k <= m; ++k) {
      Complex xk = std::polar(r, two_pi * double(k) / double(m + 1));
      Matrix<S> bk = xk * omega_skew - oa;
      values[std::size_t(k)] = pfaffian(bk, tol) / pf_omega;
    }
    return interpolate_on_circle(values, r).monic();
  }
}

// max over 2m+1 sample points of |p(x)^2 - det(xI - a)|, relative to the
// largest sampled determinant magnitude. DegreeMismatch if deg p != m.
template <class S>
typename scalar_traits<S>::Real verify_det_square(const Matrix<S>& a,
                                                  const Poly<S>& p) {
  using Real = typename scalar_traits<S>::Real;
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw DimensionMismatch("verify_det_square: not square");
  if (n % 2 != 0) throw OddDimension("verify_det_square: odd dimension");
  if (p.degree() != int(n / 2))
    throw DegreeMismatch("verify_det_square: deg p != dim/2");

  std::vector<S> xs;
  if constexpr (scalar_traits<S>::is_exact) {
    for (Eigen::Index k = 0; k <= n; ++k) xs.push_back(S(int(k)));
  } else {
    const double r = 1.0 + max_mag(a);
    const double two_pi = 6.283185307179586476925286766559;
    for (Eigen::Index k = 0; k <= n; ++k)
      xs.push_back(std::polar(r, two_pi * double(k) / double(n + 1)));
  }
  Real worst(0), scale(1);
  for (const S& x : xs) {
    Matrix<S> xa = x * Matrix<S>::Identity(n, n) - a;
    S det = determinant(xa);
    S px = p.eval(x);
    Real diff = scalar_traits<S>::mag(px * px - det);
    Real dmag = scalar_traits<S>::mag(det);
    if (diff > worst) worst = diff;
    if (dmag > scale) scale = dmag;
  }
  return worst / scale;
}

// max_mag(p(a)) / max(1, max_mag(a)^deg p): zero iff p annihilates a.
template <class S>
typename scalar_traits<S>::Real verify_annihilator(const Matrix<S>& a,
                                                   const Poly<S>& p) {
  using Real = typename scalar_traits<S>::Real;
  if (a.rows() != a.cols()) throw DimensionMismatch("verify_annihilator");
  Matrix<S> pa = eval_at_matrix(p, a);
  Real scale = real_pow<S>(max_mag(a), std::max(0, p.degree()));
  if (scale < Real(1)) scale = Real(1);
  return max_mag(pa) / scale;
}

struct Eigenspace {
  Complex lambda;
  MatrixXc basis;  // orthonormal columns (Euclidean), kernel of a - lambda*I
  MatrixXc gram;   // restriction of the skew form: basis^T * Omega * basis
};

inline constexpr double kClusterTol = 1e-7;
inline constexpr double kKernelTol = 1e-8;

// Eigenspaces of a form-symmetric a with pairwise-distinct Pfaffian roots.
// Roots closer than 1e-7 * (1 + max |root|) are rejected as clustered.
// Generic eigenspaces are 2-dimensional and carry a nondegenerate
// restriction of the form; both are reported, not assumed.
inline std::vector<Eigenspace> eigenspace_decomposition(
    const MatrixXc& a, const SymplecticSpace<Complex>& space,
    double tol = kDefaultTol) {
  Poly<Complex> p = pfaffian_char_poly(a, space, tol);
  std::vector<Complex> lams = roots(p);
  double lmax = 0.0;
  for (const auto& l : lams) lmax = std::max(lmax, std::abs(l));
  for (std::size_t i = 0; i < lams.size(); ++i)
    for (std::size_t j = i + 1; j < lams.size(); ++j)
      if (std::abs(lams[i] - lams[j]) <= kClusterTol * (1.0 + lmax))
        throw ClusteredSpectrum("pfaffian roots are not separated");

  const Eigen::Index n = a.rows();
  std::vector<Eigenspace> out;
  out.reserve(lams.size());
  for (const Complex& lam : lams) {
    MatrixXc shifted = a - lam * MatrixXc::Identity(n, n);
    MatrixXc basis = nullspace(shifted, kKernelTol);
    Eigenspace e;
    e.lambda = lam;
    e.basis = basis;
    e.gram = basis.transpose() * space.omega() * basis;
    out.push_back(std::move(e));
  }
  return out;
}

struct PfaffianSpectrum {
  Poly<Complex> p;
  std::vector<Eigenspace> eigen_data;
};

inline PfaffianSpectrum analyze_pfaffian_spectrum(
    const MatrixXc& a, const SymplecticSpace<Complex>& space,
    double tol = kDefaultTol) {
  PfaffianSpectrum out;
  out.p = pfaffian_char_poly(a, space, tol);
  out.eigen_data = eigenspace_decomposition(a, space, tol);
  return out;
}

}  // namespace speclab
