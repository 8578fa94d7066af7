// speclab/polynomial.hpp
//
// Univariate polynomials over either scalar backend, plus the numeric
// root-finder (companion matrix + Newton polish) and the interpolation
// kernels used to reconstruct characteristic and resultant polynomials.

#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "speclab/matrix.hpp"
#include "speclab/scalar.hpp"

namespace speclab {

// Coefficients ascending: c[k] multiplies x^k. Only exact zeros are trimmed,
// so floating coefficients are never silently discarded.
template <class S>
class Poly {
 public:
  Poly() = default;
  Poly(S c0) : c_{std::move(c0)} { trim(); }  // implicit: scalars are degree-0 polys
  explicit Poly(std::vector<S> ascending) : c_(std::move(ascending)) { trim(); }

  static Poly monomial(int deg, S coeff = S(1)) {
    std::vector<S> c(std::size_t(deg) + 1, S(0));
    c.back() = std::move(coeff);
    return Poly(std::move(c));
  }

  int degree() const { return int(c_.size()) - 1; }  // zero poly: -1
  bool is_zero() const { return c_.empty(); }

  const S& coeff(int k) const {
    static const S zero(0);
    return (k >= 0 && k < int(c_.size())) ? c_[std::size_t(k)] : zero;
  }
  const std::vector<S>& coeffs() const { return c_; }
  const S& leading() const { return c_.back(); }

  S eval(const S& x) const {
    S acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<S> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = S(int(k)) * c_[k];
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator-(const Poly& a) {
    std::vector<S> c(a.c_);
    for (auto& v : c) v = -v;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const S& s, const Poly& a) { return Poly(s) * a; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (!(a.c_[k] == b.c_[k])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly monic() const {
    Poly out(*this);
    if (!out.is_zero()) {
      S lead = out.c_.back();
      for (auto& v : out.c_) v = v / lead;
    }
    return out;
  }

  typename scalar_traits<S>::Real max_coeff_mag() const {
    using Real = typename scalar_traits<S>::Real;
    Real out(0);
    for (const auto& v : c_) {
      Real m = scalar_traits<S>::mag(v);
      if (m > out) out = m;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && scalar_traits<S>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<S> c_;
};

template <class S>
Poly<Complex> to_floating(const Poly<S>& p) {
  std::vector<Complex> c(p.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = scalar_traits<S>::to_std_complex(p.coeffs()[k]);
  return Poly<Complex>(std::move(c));
}

// Horner evaluation of p at a square matrix.
template <class S>
Matrix<S> eval_at_matrix(const Poly<S>& p, const Matrix<S>& a) {
  const Eigen::Index n = a.rows();
  Matrix<S> acc = Matrix<S>::Zero(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = (acc * a).eval();
    acc += p.coeff(k) * Matrix<S>::Identity(n, n);
  }
  return acc;
}

// All complex roots: balanced companion matrix eigenvalues followed by a few
// Newton steps. Leading coefficients below 1e-13 of the largest are treated
// as interpolation noise and dropped before the companion matrix is formed.
inline std::vector<Complex> roots(const Poly<Complex>& p, int polish_steps = 3) {
  std::vector<Complex> c = p.coeffs();
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return {};
  while (c.size() > 1 && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
  const int n = int(c.size()) - 1;
  if (n < 1) return {};

  MatrixXc companion = MatrixXc::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[std::size_t(i)] / c.back();
  Eigen::ComplexEigenSolver<MatrixXc> es(companion, false);

  Poly<Complex> q(c);
  Poly<Complex> dq = q.derivative();
  std::vector<Complex> out(c.size() - 1);
  for (int i = 0; i < n; ++i) {
    Complex x = es.eigenvalues()(i);
    for (int s = 0; s < polish_steps; ++s) {
      Complex d = dq.eval(x);
      if (std::abs(d) < 1e-300) break;
      Complex step = q.eval(x) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      x -= step;
    }
    out[std::size_t(i)] = x;
  }
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

// Newton divided differences; exact over GaussQ when nodes are distinct.
template <class S>
Poly<S> interpolate_newton(const std::vector<S>& nodes,
                           const std::vector<S>& values) {
  const std::size_t n = nodes.size();
  std::vector<S> dd = values;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n; i-- > level;)
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
  Poly<S> acc;
  for (std::size_t i = n; i-- > 0;) {
    Poly<S> shift(std::vector<S>{-nodes[i], S(1)});
    acc = acc * shift + Poly<S>(dd[i]);
  }
  return acc;
}

// Inverse DFT for values sampled at rho * exp(2*pi*i*k/n), k = 0..n-1.
inline Poly<Complex> interpolate_on_circle(const std::vector<Complex>& values,
                                           double rho) {
  const std::size_t n = values.size();
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<Complex> c(n, Complex(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc(0.0);
    for (std::size_t k = 0; k < n; ++k) {
      double ang = -two_pi * double(j * k % n) / double(n);
      acc += values[k] * std::polar(1.0, ang);
    }
    c[j] = acc / (double(n) * std::pow(rho, double(j)));
  }
  return Poly<Complex>(std::move(c));
}

template <class S>
S scalar_pow(const S& base, int e) {
  S out(1);
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

// Resultant of two scalar polynomials as the Sylvester matrix determinant.
template <class S>
S resultant(const Poly<S>& p, const Poly<S>& q) {
  const int dp = p.degree(), dq = q.degree();
  if (dp < 0 || dq < 0) return S(0);
  if (dp == 0) return scalar_pow(p.coeff(0), dq);
  if (dq == 0) return scalar_pow(q.coeff(0), dp);
  const int n = dp + dq;
  Matrix<S> syl = Matrix<S>::Zero(n, n);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) syl(r, r + k) = p.coeff(dp - k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) syl(dq + r, r + k) = q.coeff(dq - k);
  return determinant(syl);
}

}  // namespace speclab
