// speclab/scalar.hpp
//
// The two scalar backends every template in this library is instantiated
// with: std::complex<double> for fast floating work and GaussQ (rational
// real and imaginary parts, GMP-backed) when identities must hold exactly.

#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <utility>

#include <gmpxx.h>

#include <Eigen/Core>

#include "speclab/errors.hpp"

namespace speclab {

using Complex = std::complex<double>;
using Rational = mpq_class;
using BigInt = mpz_class;

// Complex number with exact rational coordinates. Closed under +,-,*,/
// without rounding, so residuals computed over GaussQ are exactly zero
// precisely when the identity holds.
struct GaussQ {
  Rational re, im;

  GaussQ() : re(0), im(0) {}
  GaussQ(int v) : re(v), im(0) {}  // implicit: generic code needs S(0), S(1)
  GaussQ(Rational r) : re(std::move(r)), im(0) {}
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussQ from_complex(const Complex& z) {
    return GaussQ(Rational(z.real()), Rational(z.imag()));
  }

  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussQ operator-(const GaussQ& a, const GaussQ& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussQ operator-(const GaussQ& a) { return {-a.re, -a.im}; }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
    Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw SingularMatrix("GaussQ division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  GaussQ& operator+=(const GaussQ& b) { re += b.re; im += b.im; return *this; }
  GaussQ& operator-=(const GaussQ& b) { re -= b.re; im -= b.im; return *this; }
  GaussQ& operator*=(const GaussQ& b) { *this = *this * b; return *this; }
  GaussQ& operator/=(const GaussQ& b) { *this = *this / b; return *this; }

  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

  friend GaussQ conj(const GaussQ& a) { return {a.re, -a.im}; }

  friend std::ostream& operator<<(std::ostream& os, const GaussQ& a) {
    return os << "(" << a.re << ", " << a.im << ")";
  }
};

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Backend policy. Real is the type residual measures live in; mag() is the
// magnitude measure used for pivoting and residual norms. In the floating
// backend mag is |z|; in the exact backend it is |z|^2 = re^2 + im^2, which
// stays rational. Both vanish exactly on zero, which is the property the
// exact backend relies on.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  using Real = double;
  static constexpr bool is_exact = false;

  static Real mag(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z) { return z == Complex(0.0); }
  static Complex conjugate(const Complex& z) { return std::conj(z); }
  static Complex to_std_complex(const Complex& z) { return z; }
  static Complex from_std_complex(const Complex& z) { return z; }
  // Pass/fail policy for a residual against a tolerance.
  static bool passes(Real residual, double tol) { return residual <= tol; }
};

template <>
struct scalar_traits<GaussQ> {
  using Real = Rational;
  static constexpr bool is_exact = true;

  static Real mag(const GaussQ& z) { return z.re * z.re + z.im * z.im; }
  static bool is_zero(const GaussQ& z) { return z.is_zero(); }
  static GaussQ conjugate(const GaussQ& z) { return conj(z); }
  static Complex to_std_complex(const GaussQ& z) {
    return Complex(z.re.get_d(), z.im.get_d());
  }
  static GaussQ from_std_complex(const Complex& z) {
    return GaussQ::from_complex(z);
  }
  // Exact identities admit no tolerance.
  static bool passes(const Real& residual, double) { return residual == 0; }
};

template <class S>
typename scalar_traits<S>::Real real_pow(typename scalar_traits<S>::Real base,
                                          int e) {
  using Real = typename scalar_traits<S>::Real;
  Real out(1);
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

}  // namespace speclab

namespace Eigen {

template <>
struct NumTraits<speclab::GaussQ> {
  typedef speclab::GaussQ Real;
  typedef speclab::GaussQ NonInteger;
  typedef speclab::GaussQ Nested;
  typedef speclab::GaussQ Literal;
  enum {
    IsComplex = 0,  // conjugation is handled explicitly, not through Eigen
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 20,
    MulCost = 40
  };
  static inline Real epsilon() { return speclab::GaussQ(0); }
  static inline Real dummy_precision() { return speclab::GaussQ(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
