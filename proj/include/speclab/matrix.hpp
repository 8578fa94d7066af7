// speclab/matrix.hpp
//
// Dense matrix aliases plus the handful of field-generic kernels (pivoted
// elimination, inverse, nullspace) that must run unchanged over the exact
// backend, where Eigen's own decompositions do not apply.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "speclab/errors.hpp"
#include "speclab/scalar.hpp"

namespace speclab {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Matrix2 = Eigen::Matrix<S, 2, 2>;
template <class S>
using Vector2 = Eigen::Matrix<S, 2, 1>;

using MatrixXc = Matrix<Complex>;
using VectorXc = Vector<Complex>;
using MatrixXq = Matrix<GaussQ>;

// Largest entry magnitude; the norm used for residual scaling throughout.
template <class S>
typename scalar_traits<S>::Real max_mag(const Matrix<S>& m) {
  using Real = typename scalar_traits<S>::Real;
  Real out(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Real v = scalar_traits<S>::mag(m(i, j));
      if (v > out) out = v;
    }
  return out;
}

template <class S>
Matrix<S> conjugate_entries(const Matrix<S>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = scalar_traits<S>::conjugate(m(i, j));
  return out;
}

// max_mag(m + m^T) / max(1, max_mag(m)); zero iff m is skew-symmetric.
template <class S>
typename scalar_traits<S>::Real skew_residual(const Matrix<S>& m) {
  using Real = typename scalar_traits<S>::Real;
  Matrix<S> sum = m + m.transpose();
  Real scale = max_mag(m);
  if (scale < Real(1)) scale = Real(1);
  return max_mag(sum) / scale;
}

// Determinant by Gaussian elimination with partial pivoting on mag().
// Exact backend: any nonzero pivot keeps the result exact.
template <class S>
S determinant(Matrix<S> m) {
  using Real = typename scalar_traits<S>::Real;
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("determinant: matrix not square");
  S det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    Real best = scalar_traits<S>::mag(m(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      Real v = scalar_traits<S>::mag(m(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == Real(0)) return S(0);
    if (piv != k) { m.row(piv).swap(m.row(k)); det = -det; }
    det *= m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      S f = m(i, k) / m(k, k);
      if (!scalar_traits<S>::is_zero(f))
        m.row(i).tail(n - k) -= f * m.row(k).tail(n - k);
    }
  }
  return det;
}

// Gauss-Jordan inverse, same pivoting policy as determinant().
template <class S>
Matrix<S> inverse(Matrix<S> m) {
  using Real = typename scalar_traits<S>::Real;
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("inverse: matrix not square");
  Matrix<S> inv = Matrix<S>::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    Real best = scalar_traits<S>::mag(m(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      Real v = scalar_traits<S>::mag(m(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == Real(0)) throw SingularMatrix("inverse: singular matrix");
    if (piv != k) { m.row(piv).swap(m.row(k)); inv.row(piv).swap(inv.row(k)); }
    S d = m(k, k);
    m.row(k) /= d;
    inv.row(k) /= d;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k) continue;
      S f = m(i, k);
      if (!scalar_traits<S>::is_zero(f)) {
        m.row(i) -= f * m.row(k);
        inv.row(i) -= f * inv.row(k);
      }
    }
  }
  return inv;
}

namespace detail {

// Exact nullspace from reduced row echelon form.
inline Matrix<GaussQ> nullspace_exact(Matrix<GaussQ> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    m.row(r) /= m(r, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && !m(i, c).is_zero()) m.row(i) -= m(i, c) * m.row(r);
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<Eigen::Index> free_col;
  {
    std::size_t p = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (p < pivot_col.size() && pivot_col[p] == c) { ++p; continue; }
      free_col.push_back(c);
    }
  }
  Matrix<GaussQ> basis = Matrix<GaussQ>::Zero(cols, Eigen::Index(free_col.size()));
  for (std::size_t j = 0; j < free_col.size(); ++j) {
    basis(free_col[j], Eigen::Index(j)) = GaussQ(1);
    for (std::size_t p = 0; p < pivot_col.size(); ++p)
      basis(pivot_col[p], Eigen::Index(j)) = -m(Eigen::Index(p), free_col[j]);
  }
  return basis;
}

inline Matrix<Complex> nullspace_floating(const Matrix<Complex>& m,
                                          double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0)
    return Matrix<Complex>::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix<Complex>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = rel_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace detail

// Basis of the (numerical) kernel as matrix columns. rel_tol is the rank
// cutoff relative to the largest singular value; ignored by the exact
// backend, which computes the kernel exactly.
template <class S>
Matrix<S> nullspace(const Matrix<S>& m, double rel_tol = 1e-9) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)rel_tol;
    return detail::nullspace_exact(m);
  } else {
    return detail::nullspace_floating(m, rel_tol);
  }
}

template <class S>
Matrix<Complex> to_floating(const Matrix<S>& m) {
  Matrix<Complex> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = scalar_traits<S>::to_std_complex(m(i, j));
  return out;
}

}  // namespace speclab
