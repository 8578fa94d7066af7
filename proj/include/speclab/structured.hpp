// speclab/structured.hpp
//
// Skew bilinear forms and the operations tied to them: Pfaffians
// (Parlett-Reid elimination), form transposes, symmetry residuals,
// quaternionic structures and hermitian signatures.
//
// Sign convention: pfaffian([[0,1],[-1,0]]) = +1.

#pragma once

#include <utility>

#include <Eigen/Eigenvalues>

#include "speclab/errors.hpp"
#include "speclab/matrix.hpp"
#include "speclab/scalar.hpp"

namespace speclab {

inline constexpr double kDefaultTol = 1e-9;

// A nondegenerate skew form on an even-dimensional space. Construction
// validates skewness and invertibility; the inverse is cached because every
// form transpose uses it.
template <class S>
class SymplecticSpace {
 public:
  explicit SymplecticSpace(Matrix<S> omega, double tol = kDefaultTol)
      : omega_(std::move(omega)) {
    if (omega_.rows() != omega_.cols())
      throw DimensionMismatch("symplectic form must be square");
    if (omega_.rows() % 2 != 0)
      throw OddDimension("symplectic form needs even dimension");
    if (!scalar_traits<S>::passes(skew_residual(omega_), tol))
      throw NotSkew("symplectic form must be skew-symmetric");
    try {
      omega_inv_ = inverse(omega_);
    } catch (const SingularMatrix&) {
      throw DegenerateForm("symplectic form is singular");
    }
  }

  Eigen::Index dim() const { return omega_.rows(); }
  const Matrix<S>& omega() const { return omega_; }
  const Matrix<S>& omega_inverse() const { return omega_inv_; }

  // omega(u, v) = u^T * Omega * v
  S pair(const Vector<S>& u, const Vector<S>& v) const {
    return (u.transpose() * omega_ * v)(0, 0);
  }

 private:
  Matrix<S> omega_;
  Matrix<S> omega_inv_;
};

// Standard form [[0, I], [-I, 0]] on dimension n = 2k.
template <class S>
SymplecticSpace<S> standard_symplectic(Eigen::Index n) {
  if (n % 2 != 0) throw OddDimension("standard symplectic form: odd dimension");
  const Eigen::Index k = n / 2;
  Matrix<S> omega = Matrix<S>::Zero(n, n);
  omega.block(0, k, k, k) = Matrix<S>::Identity(k, k);
  omega.block(k, 0, k, k) = -Matrix<S>::Identity(k, k);
  return SymplecticSpace<S>(std::move(omega));
}

// Pfaffian via Parlett-Reid skew elimination, O(n^3), pivoting on mag().
// Rejects matrices whose skew residual exceeds tol (exact backend: any
// deviation). Odd dimension is an error, not zero.
template <class S>
S pfaffian(Matrix<S> m, double tol = kDefaultTol) {
  using Real = typename scalar_traits<S>::Real;
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("pfaffian: matrix not square");
  if (n % 2 != 0) throw OddDimension("pfaffian: odd dimension");
  if (!scalar_traits<S>::passes(skew_residual(m), tol))
    throw NotSkew("pfaffian: matrix is not skew-symmetric");
  if (n == 0) return S(1);

  S pf(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index piv = k + 1;
    Real best = scalar_traits<S>::mag(m(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      Real v = scalar_traits<S>::mag(m(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == Real(0)) return S(0);
    if (piv != k + 1) {
      m.row(piv).swap(m.row(k + 1));
      m.col(piv).swap(m.col(k + 1));
      pf = -pf;
    }
    pf *= m(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index r = n - k - 2;
      Vector<S> tau(r), col(r);
      for (Eigen::Index i = 0; i < r; ++i) {
        tau(i) = m(k, k + 2 + i) / m(k, k + 1);
        col(i) = m(k + 1, k + 2 + i);
      }
      m.block(k + 2, k + 2, r, r) +=
          col * tau.transpose() - tau * col.transpose();
    }
  }
  return pf;
}

// a^T with respect to the form: omega^{-1} * a^T * omega, the unique map
// with omega(a u, v) = omega(u, a^T v).
template <class S>
Matrix<S> form_transpose(const Matrix<S>& a, const SymplecticSpace<S>& space) {
  if (a.rows() != a.cols() || a.rows() != space.dim())
    throw DimensionMismatch("form_transpose: endomorphism/form size mismatch");
  return space.omega_inverse() * a.transpose() * space.omega();
}

// max_mag(a - a^T_omega) / max(1, max_mag(a)); zero iff a is symmetric for
// the form, i.e. omega * a is skew.
template <class S>
typename scalar_traits<S>::Real check_form_symmetric(
    const Matrix<S>& a, const SymplecticSpace<S>& space) {
  using Real = typename scalar_traits<S>::Real;
  Matrix<S> diff = a - form_transpose(a, space);
  Real scale = max_mag(a);
  if (scale < Real(1)) scale = Real(1);
  return max_mag(diff) / scale;
}

// Antilinear structure candidate J, stored through its matrix J0 so that
// J(v) = J0 * conj(v).
template <class S>
struct QuaternionicStructure {
  Matrix<S> j0;

  explicit QuaternionicStructure(Matrix<S> j) : j0(std::move(j)) {
    if (j0.rows() != j0.cols())
      throw DimensionMismatch("quaternionic structure must be square");
  }

  Vector<S> apply(const Vector<S>& v) const {
    Vector<S> c(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      c(i) = scalar_traits<S>::conjugate(v(i));
    return j0 * c;
  }
};

// max_mag(J0 * conj(J0) + I): zero iff J squares to -1, i.e. the structure
// is genuinely quaternionic. Unnormalized by design.
template <class S>
typename scalar_traits<S>::Real check_quaternionic(
    const QuaternionicStructure<S>& j) {
  const Eigen::Index n = j.j0.rows();
  Matrix<S> r = j.j0 * conjugate_entries(j.j0) + Matrix<S>::Identity(n, n);
  return max_mag(r);
}

// Standard quaternionic structure on even dimension: 2x2 blocks
// [[0,-1],[1,0]] along the diagonal.
template <class S>
QuaternionicStructure<S> standard_quaternionic(Eigen::Index n) {
  if (n % 2 != 0) throw OddDimension("quaternionic structure: odd dimension");
  Matrix<S> j = Matrix<S>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    j(k, k + 1) = S(-1);
    j(k + 1, k) = S(1);
  }
  return QuaternionicStructure<S>(std::move(j));
}

// Hermitian form h(u, v) = u^dagger * H * v.
template <class S>
struct HermitianForm {
  Matrix<S> h;

  explicit HermitianForm(Matrix<S> matrix, double tol = kDefaultTol)
      : h(std::move(matrix)) {
    using Real = typename scalar_traits<S>::Real;
    if (h.rows() != h.cols())
      throw DimensionMismatch("hermitian form must be square");
    Matrix<S> diff = h - conjugate_entries(Matrix<S>(h.transpose()));
    Real scale = max_mag(h);
    if (scale < Real(1)) scale = Real(1);
    if (!scalar_traits<S>::passes(max_mag(diff) / scale, tol))
      throw NotSymmetric("hermitian form: matrix is not conjugate-symmetric");
  }
};

// Pairing h(u, v) = omega(u, J v) of a skew form with an antilinear map,
// expressed as a hermitian matrix Omega * J0.
template <class S>
HermitianForm<S> hermitian_from_pair(const SymplecticSpace<S>& space,
                                     const QuaternionicStructure<S>& j) {
  if (space.dim() != j.j0.rows())
    throw DimensionMismatch("hermitian_from_pair: size mismatch");
  return HermitianForm<S>(Matrix<S>(space.omega() * j.j0));
}

namespace detail {

// Exact inertia by congruence (Jacobi/Sylvester): diagonalize h by
// simultaneous row and conjugate-column operations. Diagonal entries of a
// hermitian GaussQ matrix are rational, so their signs are exact.
inline std::pair<int, int> signature_exact(Matrix<GaussQ> h) {
  const Eigen::Index n = h.rows();
  int pos = 0, neg = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (h(k, k).is_zero()) {
      Eigen::Index sw = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!h(i, i).is_zero()) { sw = i; break; }
      if (sw >= 0) {
        h.row(k).swap(h.row(sw));
        h.col(k).swap(h.col(sw));
      } else {
        Eigen::Index j = -1;
        for (Eigen::Index i = k + 1; i < n; ++i)
          if (!h(k, i).is_zero()) { j = i; break; }
        if (j < 0) throw DegenerateForm("hermitian form is degenerate");
        // row_k += h(k,j) * row_j (and conjugate on columns) makes
        // h(k,k) = 2|h(k,j)|^2 > 0.
        GaussQ c = h(k, j);
        h.row(k) += c * h.row(j);
        h.col(k) += conj(c) * h.col(j);
      }
    }
    GaussQ d = h(k, k);
    if (d.im != 0)
      throw NotSymmetric("hermitian form: non-real diagonal");
    if (d.re > 0) ++pos; else ++neg;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      GaussQ f = h(i, k) / d;
      if (!f.is_zero()) {
        h.row(i) -= f * h.row(k);
        h.col(i) -= conj(f) * h.col(k);
      }
    }
  }
  return {pos, neg};
}

inline std::pair<int, int> signature_floating(const Matrix<Complex>& h,
                                              double tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h, Eigen::EigenvaluesOnly);
  double scale = std::max(1.0, max_mag(h));
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (std::abs(lam) <= tol * scale)
      throw DegenerateForm("hermitian form is numerically degenerate");
    (lam > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

}  // namespace detail

// Signature (p, q) of a nondegenerate hermitian form; degenerate input is an
// error. Exact backend: Sylvester inertia by congruence. Floating backend:
// eigenvalue signs with |lambda| <= tol * max(1, max_mag(h)) rejected.
template <class S>
std::pair<int, int> hermitian_signature(const HermitianForm<S>& form,
                                        double tol = kDefaultTol) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)tol;
    return detail::signature_exact(form.h);
  } else {
    return detail::signature_floating(form.h, tol);
  }
}

}  // namespace speclab
