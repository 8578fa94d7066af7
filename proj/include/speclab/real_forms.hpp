// speclab/real_forms.hpp
//
// Structured Higgs-field models for the three quaternionic shapes:
//
//   SL_H   : Phi = omega^{-1} phi with phi skew on a 2m-dim space,
//   SO_STAR: Phi = [[0, beta], [gamma, 0]] on W + W^*, beta and gamma skew,
//   SP_MM  : Phi = [[0, beta], [-beta^T, 0]] on W1 + W2 with the symplectic
//            transpose taken between (W1, omega1) and (W2, omega2) and the
//            pairing form omega = omega1 (-omega2).
//
// In all three cases Phi is symmetric for the stated form, its spectrum is
// negation-symmetric, and the block involution iota = diag(I, -I)
// anticommutes with Phi.

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "speclab/errors.hpp"
#include "speclab/matrix.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/rng.hpp"
#include "speclab/spectrum.hpp"
#include "speclab/structured.hpp"

namespace speclab {

enum class Group { SL_H, SO_STAR, SP_MM };

inline const char* group_name(Group g) {
  switch (g) {
    case Group::SL_H: return "SL_H";
    case Group::SO_STAR: return "SO_STAR";
    case Group::SP_MM: return "SP_MM";
  }
  return "?";
}

inline Group group_from_name(const std::string& s) {
  if (s == "SL_H") return Group::SL_H;
  if (s == "SO_STAR") return Group::SO_STAR;
  if (s == "SP_MM") return Group::SP_MM;
  throw ConfigError("unknown group: " + s);
}

template <class S>
struct HiggsModel {
  Group group;
  int m = 0;
  Matrix<S> phi;            // the endomorphism on the full space
  SymplecticSpace<S> space; // the form Phi is symmetric for
  Matrix<S> beta, gamma;    // off-diagonal blocks; empty for SL_H

  // First half of the coordinates is W (resp. W1), second half W^* (W2).
  Eigen::Index block_dim() const { return phi.rows() / 2; }
};

// SL_H model from a skew form phi_skew: Phi = omega^{-1} * phi_skew.
template <class S>
HiggsModel<S> build_sl_quaternion(const Matrix<S>& phi_skew,
                                  SymplecticSpace<S> space,
                                  double tol = kDefaultTol) {
  if (phi_skew.rows() != phi_skew.cols() || phi_skew.rows() != space.dim())
    throw DimensionMismatch("build_sl_quaternion: size mismatch");
  if (!scalar_traits<S>::passes(skew_residual(phi_skew), tol))
    throw NotSkew("build_sl_quaternion: phi must be skew");
  HiggsModel<S> model{Group::SL_H, int(space.dim() / 2),
                      Matrix<S>(space.omega_inverse() * phi_skew),
                      std::move(space), Matrix<S>(), Matrix<S>()};
  return model;
}

// SO_STAR model from skew blocks beta (W^* -> W) and gamma (W -> W^*); the
// pairing form on W + W^* is the standard [[0, I], [-I, 0]].
template <class S>
HiggsModel<S> build_so_star(const Matrix<S>& beta, const Matrix<S>& gamma,
                            double tol = kDefaultTol) {
  const Eigen::Index n = beta.rows();
  if (beta.cols() != n || gamma.rows() != n || gamma.cols() != n)
    throw DimensionMismatch("build_so_star: blocks must be square, same size");
  if (n % 2 != 0) throw OddDimension("build_so_star: blocks need even size");
  if (!scalar_traits<S>::passes(skew_residual(beta), tol))
    throw NotSkew("build_so_star: beta must be skew");
  if (!scalar_traits<S>::passes(skew_residual(gamma), tol))
    throw NotSkew("build_so_star: gamma must be skew");
  Matrix<S> phi = Matrix<S>::Zero(2 * n, 2 * n);
  phi.block(0, n, n, n) = beta;
  phi.block(n, 0, n, n) = gamma;
  HiggsModel<S> model{Group::SO_STAR, int(n / 2), std::move(phi),
                      standard_symplectic<S>(2 * n), beta, gamma};
  return model;
}

// SP_MM model: gamma = -omega2^{-1} beta^T omega1 is the negated symplectic
// transpose of beta: W2 -> W1, and the form is omega1 on W1, -omega2 on W2.
template <class S>
HiggsModel<S> build_sp_mm(const Matrix<S>& beta, SymplecticSpace<S> space1,
                          SymplecticSpace<S> space2) {
  const Eigen::Index n = space1.dim();
  if (space2.dim() != n || beta.rows() != n || beta.cols() != n)
    throw DimensionMismatch("build_sp_mm: size mismatch");
  Matrix<S> gamma =
      -(space2.omega_inverse() * beta.transpose() * space1.omega());
  Matrix<S> phi = Matrix<S>::Zero(2 * n, 2 * n);
  phi.block(0, n, n, n) = beta;
  phi.block(n, 0, n, n) = gamma;
  Matrix<S> omega = Matrix<S>::Zero(2 * n, 2 * n);
  omega.block(0, 0, n, n) = space1.omega();
  omega.block(n, n, n, n) = -space2.omega();
  HiggsModel<S> model{Group::SP_MM, int(n / 2), std::move(phi),
                      SymplecticSpace<S>(std::move(omega)), beta,
                      std::move(gamma)};
  return model;
}

// The block involution iota = diag(I, -I) on W + W^* (resp. W1 + W2).
template <class S>
Matrix<S> block_involution(const HiggsModel<S>& model) {
  const Eigen::Index k = model.block_dim();
  Matrix<S> iota = Matrix<S>::Zero(2 * k, 2 * k);
  iota.block(0, 0, k, k) = Matrix<S>::Identity(k, k);
  iota.block(k, k, k, k) = -Matrix<S>::Identity(k, k);
  return iota;
}

// Deterministic random model; floating entries uniform in [-1,1], exact
// entries small rationals. SP_MM uses standard factor forms.
template <class S>
HiggsModel<S> random_model(Group group, int m, std::uint64_t seed) {
  if (m < 1) throw MOutOfRange("random_model: m must be >= 1");
  SplitMix64 rng(seed);
  switch (group) {
    case Group::SL_H: {
      Matrix<S> phi_skew = random_skew<S>(2 * m, rng);
      return build_sl_quaternion(phi_skew, standard_symplectic<S>(2 * m));
    }
    case Group::SO_STAR: {
      Matrix<S> beta = random_skew<S>(2 * m, rng);
      Matrix<S> gamma = random_skew<S>(2 * m, rng);
      return build_so_star(beta, gamma);
    }
    case Group::SP_MM: {
      Matrix<S> beta = random_matrix<S>(2 * m, 2 * m, rng);
      return build_sp_mm(beta, standard_symplectic<S>(2 * m),
                         standard_symplectic<S>(2 * m));
    }
  }
  throw ConfigError("random_model: unknown group");
}

struct EigenPair {
  Complex lambda;          // representative with Re > 0 (or Im > 0 on the axis)
  int dim = 0;             // dimension of each of the two eigenspaces
  double residual = 0.0;   // how far iota maps E_lambda from E_{-lambda}
  bool self_paired = false;  // lambda = 0 cluster, iota-invariant instead
};

namespace detail {

struct EigenCluster {
  Complex lambda;
  MatrixXc basis;  // orthonormal columns
};

// Group eigenvalues of a into clusters within 1e-7 * (1 + max |lambda|);
// bases orthonormalized per cluster.
inline std::vector<EigenCluster> eigen_clusters(const MatrixXc& a) {
  Eigen::ComplexEigenSolver<MatrixXc> es(a);
  if (es.info() != Eigen::Success)
    throw Error("eigen_clusters: eigensolver failed");
  const Eigen::Index n = a.rows();
  double lmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    lmax = std::max(lmax, std::abs(es.eigenvalues()(i)));
  const double tol = kClusterTol * (1.0 + lmax);

  std::vector<int> owner(std::size_t(n), -1);
  std::vector<EigenCluster> clusters;
  std::vector<std::vector<Eigen::Index>> members;
  for (Eigen::Index i = 0; i < n; ++i) {
    int hit = -1;
    for (std::size_t c = 0; c < clusters.size(); ++c)
      if (std::abs(es.eigenvalues()(i) - clusters[c].lambda) <= tol) {
        hit = int(c);
        break;
      }
    if (hit < 0) {
      clusters.push_back({es.eigenvalues()(i), MatrixXc()});
      members.emplace_back();
      hit = int(clusters.size()) - 1;
    }
    members[std::size_t(hit)].push_back(i);
    owner[std::size_t(i)] = hit;
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    MatrixXc cols(n, Eigen::Index(members[c].size()));
    Complex mean(0.0);
    for (std::size_t k = 0; k < members[c].size(); ++k) {
      cols.col(Eigen::Index(k)) = es.eigenvectors().col(members[c][k]);
      mean += es.eigenvalues()(members[c][k]);
    }
    clusters[c].lambda = mean / double(members[c].size());
    Eigen::HouseholderQR<MatrixXc> qr(cols);
    clusters[c].basis = qr.householderQ() * MatrixXc::Identity(n, cols.cols());
  }
  return clusters;
}

inline double subspace_transport_residual(const MatrixXc& image,
                                          const MatrixXc& target) {
  // Both orthonormal; distance of image columns from span(target).
  MatrixXc defect = image - target * (target.adjoint() * image);
  return defect.norm() / std::max(1.0, image.norm());
}

}  // namespace detail

// Pair the spectrum of Phi under lambda -> -lambda and measure how well the
// block involution intertwines paired eigenspaces. SL_H models are rejected:
// their spectrum has no canonical involution. UnpairedEigenvalue if some
// cluster has no negated partner of equal size.
template <class S>
std::vector<EigenPair> involution_pairing(const HiggsModel<S>& model) {
  if (model.group == Group::SL_H)
    throw WrongGroup("involution_pairing: needs SO_STAR or SP_MM");
  MatrixXc a = to_floating(model.phi);
  MatrixXc iota = to_floating(block_involution(model));
  std::vector<detail::EigenCluster> clusters = detail::eigen_clusters(a);

  double lmax = 0.0;
  for (const auto& c : clusters) lmax = std::max(lmax, std::abs(c.lambda));
  const double tol = kClusterTol * (1.0 + lmax);

  std::vector<bool> used(clusters.size(), false);
  std::vector<EigenPair> out;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    EigenPair pair;
    if (std::abs(clusters[i].lambda) <= tol) {
      pair.lambda = clusters[i].lambda;
      pair.dim = int(clusters[i].basis.cols());
      pair.self_paired = true;
      pair.residual = detail::subspace_transport_residual(
          iota * clusters[i].basis, clusters[i].basis);
      out.push_back(pair);
      continue;
    }
    int partner = -1;
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(clusters[i].lambda + clusters[j].lambda) <= tol) {
        partner = int(j);
        break;
      }
    }
    if (partner < 0)
      throw UnpairedEigenvalue("involution_pairing: no partner for eigenvalue");
    used[std::size_t(partner)] = true;
    const auto& ci = clusters[i];
    const auto& cj = clusters[std::size_t(partner)];
    if (ci.basis.cols() != cj.basis.cols())
      throw UnpairedEigenvalue("involution_pairing: eigenspace dims differ");
    Complex rep = ci.lambda;
    const MatrixXc* from = &ci.basis;
    const MatrixXc* to = &cj.basis;
    bool flip = rep.real() < 0 ||
                (rep.real() == 0 && rep.imag() < 0);
    if (flip) {
      rep = cj.lambda;
      from = &cj.basis;
      to = &ci.basis;
    }
    pair.lambda = rep;
    pair.dim = int(ci.basis.cols());
    pair.residual = detail::subspace_transport_residual(iota * (*from), *to);
    out.push_back(pair);
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.lambda.real() != b.lambda.real())
      return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return out;
}

template <class S>
struct FixedPointSigns {
  std::vector<int> signs;  // +1 for kernel vectors in the first block
  Matrix<S> kernel;        // the classified kernel basis, one column per sign
};

// Sign pattern of the block involution on ker Phi. The kernel of an
// off-diagonal Phi splits blockwise: gamma-kernel vectors sit in the first
// block (sign +1), beta-kernel vectors in the second (sign -1). NoKernel if
// Phi is invertible; MixedKernelVector if the full kernel is bigger than the
// blockwise one, i.e. some kernel vector straddles both blocks.
template <class S>
FixedPointSigns<S> fixed_point_signs(const HiggsModel<S>& model,
                                     double rank_tol = kKernelTol) {
  if (model.group == Group::SL_H)
    throw WrongGroup("fixed_point_signs: needs SO_STAR or SP_MM");
  const Eigen::Index k = model.block_dim();
  Matrix<S> ker_gamma = nullspace(model.gamma, rank_tol);
  Matrix<S> ker_beta = nullspace(model.beta, rank_tol);
  Matrix<S> full = nullspace(model.phi, rank_tol);
  if (full.cols() == 0) throw NoKernel("fixed_point_signs: Phi is invertible");
  if (full.cols() != ker_gamma.cols() + ker_beta.cols())
    throw MixedKernelVector(
        "fixed_point_signs: kernel does not split along the blocks");

  FixedPointSigns<S> out;
  out.kernel = Matrix<S>::Zero(2 * k, full.cols());
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < ker_gamma.cols(); ++j, ++col) {
    out.kernel.block(0, col, k, 1) = ker_gamma.col(j);
    out.signs.push_back(+1);
  }
  for (Eigen::Index j = 0; j < ker_beta.cols(); ++j, ++col) {
    out.kernel.block(k, col, k, 1) = ker_beta.col(j);
    out.signs.push_back(-1);
  }
  return out;
}

template <class S>
struct CayleyComposite {
  Matrix<S> psi;  // beta * gamma
  typename scalar_traits<S>::Real symmetry_residual;  // for the form gamma
};

// Compose the off-diagonal blocks: Psi = beta * gamma is symmetric for the
// skew form defined by gamma itself. SingularGamma if gamma has a kernel.
template <class S>
CayleyComposite<S> cayley_compose(const HiggsModel<S>& model,
                                  double tol = kDefaultTol) {
  if (model.group == Group::SL_H)
    throw WrongGroup("cayley_compose: needs SO_STAR or SP_MM");
  if (nullspace(model.gamma, kKernelTol).cols() > 0)
    throw SingularGamma("cayley_compose: gamma is singular");
  Matrix<S> gamma_skew =
      (model.gamma - Matrix<S>(model.gamma.transpose())) / S(2);
  SymplecticSpace<S> gamma_space(std::move(gamma_skew), tol);
  CayleyComposite<S> out{Matrix<S>(model.beta * model.gamma),
                         typename scalar_traits<S>::Real(0)};
  out.symmetry_residual = check_form_symmetric(out.psi, gamma_space);
  return out;
}

// Largest odd-degree coefficient magnitude of p, normalized by the largest
// coefficient magnitude; zero iff p is even.
template <class S>
typename scalar_traits<S>::Real max_odd_coefficient(const Poly<S>& p) {
  using Real = typename scalar_traits<S>::Real;
  Real worst(0);
  for (int kdeg = 1; kdeg <= p.degree(); kdeg += 2) {
    Real v = scalar_traits<S>::mag(p.coeff(kdeg));
    if (v > worst) worst = v;
  }
  Real scale = p.max_coeff_mag();
  if (scale < Real(1)) scale = Real(1);
  return worst / scale;
}

}  // namespace speclab
