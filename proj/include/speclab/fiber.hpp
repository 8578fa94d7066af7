// speclab/fiber.hpp
//
// The direct-image fiber over a regular point z0: one copy of C^2 (fixed
// volume trivialization) per sheet y of p(., z0) = 0, with the residue
// pairing  <s, t> = sum_y det(s_y, t_y) / p_x(y).  The pairing is skew and
// nondegenerate, multiplication by x is symmetric for it, and on paired
// (y, -y) fibers an involutive lift of the sheet involution splits the
// space into eigen-halves whose gram blocks vanish or stay nondegenerate
// according to the lift sign epsilon.

#pragma once

#include <utility>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/plane_curve.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/spectrum.hpp"

namespace speclab {

template <class S>
using Section = std::vector<Vector2<S>>;  // one 2-vector per sheet, in order

template <class S>
struct FiberModel {
  Group group;
  bool paired = false;     // sheets laid out as (y, -y) consecutive pairs
  S z0;
  std::vector<S> sheets;   // distinct roots of p(., z0)
  std::vector<S> weights;  // 1 / p_x(y) per sheet
  Poly<S> p_z0;            // the monic fiber polynomial

  Eigen::Index dim() const { return 2 * Eigen::Index(sheets.size()); }
};

// Assemble from the curve's own root finder. NonRegularPoint unless all
// sheets are simple.
template <class S>
FiberModel<Complex> assemble_fiber(const PlaneCurve<S>& curve,
                                   const Complex& z0) {
  FiberRoots fr = fiber_roots(curve, z0);
  if (!fr.regular)
    throw NonRegularPoint("assemble_fiber: z0 is not a regular point");
  PlaneCurve<Complex> fc = to_floating(curve);
  FiberModel<Complex> fiber;
  fiber.group = curve.group();
  fiber.paired = curve.kind() == CurveKind::EvenHalf;
  fiber.z0 = z0;
  fiber.p_z0 = fc.fiber_poly(z0);
  Poly<Complex> dp = fiber.p_z0.derivative();
  if (fiber.paired) {
    for (const auto& pr : fr.sigma_pairs) {
      fiber.sheets.push_back(fr.clusters[std::size_t(pr.first)].value);
      fiber.sheets.push_back(fr.clusters[std::size_t(pr.second)].value);
    }
  } else {
    for (const auto& rc : fr.clusters) fiber.sheets.push_back(rc.value);
  }
  for (const auto& y : fiber.sheets) {
    Complex d = dp.eval(y);
    if (scalar_traits<Complex>::is_zero(d))
      throw NonRegularPoint("assemble_fiber: p_x vanishes on a sheet");
    fiber.weights.push_back(Complex(1.0) / d);
  }
  return fiber;
}

// Assemble from caller-supplied sheets, validated against the curve. This is
// the constructor the exact backend uses: with exact sheets the pairing and
// all gram blocks are exact. Sheets of even curves must arrive in (y, -y)
// pair order.
template <class S>
FiberModel<S> fiber_from_sheets(const PlaneCurve<S>& curve, const S& z0,
                                const std::vector<S>& sheets,
                                double tol = kDefaultTol) {
  FiberModel<S> fiber;
  fiber.group = curve.group();
  fiber.paired = curve.kind() == CurveKind::EvenHalf;
  fiber.z0 = z0;
  fiber.p_z0 = curve.fiber_poly(z0);
  if (int(sheets.size()) != curve.deg_x())
    throw DimensionMismatch("fiber_from_sheets: wrong number of sheets");

  using Real = typename scalar_traits<S>::Real;
  Real scale = fiber.p_z0.max_coeff_mag();
  if (scale < Real(1)) scale = Real(1);
  for (const auto& y : sheets)
    if (!scalar_traits<S>::passes(scalar_traits<S>::mag(fiber.p_z0.eval(y)) / scale,
                                  tol))
      throw NonRegularPoint("fiber_from_sheets: sheet is not a root of p");
  for (std::size_t i = 0; i < sheets.size(); ++i)
    for (std::size_t j = i + 1; j < sheets.size(); ++j)
      if (scalar_traits<S>::is_zero(sheets[i] - sheets[j]))
        throw NonRegularPoint("fiber_from_sheets: repeated sheet");
  if (fiber.paired)
    for (std::size_t i = 0; i + 1 < sheets.size(); i += 2)
      if (!scalar_traits<S>::is_zero(sheets[i] + sheets[i + 1]))
        throw NonRegularPoint(
            "fiber_from_sheets: sheets of an even curve must pair as (y, -y)");

  fiber.sheets = sheets;
  Poly<S> dp = fiber.p_z0.derivative();
  for (const auto& y : sheets) {
    S d = dp.eval(y);
    if (scalar_traits<S>::is_zero(d))
      throw NonRegularPoint("fiber_from_sheets: p_x vanishes on a sheet");
    fiber.weights.push_back(S(1) / d);
  }
  return fiber;
}

// <s, t> = sum_y det(s_y, t_y) * w_y.
template <class S>
S residue_pairing(const FiberModel<S>& fiber, const Section<S>& s,
                  const Section<S>& t) {
  if (s.size() != fiber.sheets.size() || t.size() != fiber.sheets.size())
    throw DimensionMismatch("residue_pairing: sections must cover all sheets");
  S acc(0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    S det = s[i](0) * t[i](1) - s[i](1) * t[i](0);
    acc += det * fiber.weights[i];
  }
  return acc;
}

// The pairing as a matrix on stacked coordinates: 2x2 blocks w_y*[[0,1],[-1,0]].
template <class S>
Matrix<S> gram_matrix(const FiberModel<S>& fiber) {
  const Eigen::Index n = fiber.dim();
  Matrix<S> g = Matrix<S>::Zero(n, n);
  for (std::size_t i = 0; i < fiber.weights.size(); ++i) {
    if (scalar_traits<S>::is_zero(fiber.weights[i]))
      throw DegeneratePairing("gram_matrix: zero weight");
    g(2 * Eigen::Index(i), 2 * Eigen::Index(i) + 1) = fiber.weights[i];
    g(2 * Eigen::Index(i) + 1, 2 * Eigen::Index(i)) = -fiber.weights[i];
  }
  return g;
}

template <class S>
struct MultOperator {
  Matrix<S> op;  // multiplication by x: y * I_2 on the sheet at y
  typename scalar_traits<S>::Real symmetry_residual;  // for the residue pairing
};

template <class S>
MultOperator<S> multiplication_operator(const FiberModel<S>& fiber) {
  const Eigen::Index n = fiber.dim();
  Matrix<S> op = Matrix<S>::Zero(n, n);
  for (std::size_t i = 0; i < fiber.sheets.size(); ++i) {
    op(2 * Eigen::Index(i), 2 * Eigen::Index(i)) = fiber.sheets[i];
    op(2 * Eigen::Index(i) + 1, 2 * Eigen::Index(i) + 1) = fiber.sheets[i];
  }
  SymplecticSpace<S> space(gram_matrix(fiber));
  MultOperator<S> out{std::move(op), typename scalar_traits<S>::Real(0)};
  out.symmetry_residual = check_form_symmetric(out.op, space);
  return out;
}

template <class S>
struct EquivariantLift {
  int epsilon = 1;  // determinant each tau must carry
  std::vector<Matrix2<S>> tau;       // per pair: E_y -> E_{-y}
  std::vector<Matrix2<S>> tau_back;  // per pair: E_{-y} -> E_y
};

// Lift with tau_back forced to tau^{-1}, so the involution law holds by
// construction. BadLift if some tau is singular.
template <class S>
EquivariantLift<S> make_involutive_lift(int epsilon,
                                        std::vector<Matrix2<S>> taus) {
  EquivariantLift<S> lift;
  lift.epsilon = epsilon;
  for (const auto& t : taus) {
    S det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
    if (scalar_traits<S>::is_zero(det))
      throw BadLift("make_involutive_lift: singular tau");
    Matrix2<S> inv;
    inv << t(1, 1) / det, -t(0, 1) / det, -t(1, 0) / det, t(0, 0) / det;
    lift.tau_back.push_back(inv);
  }
  lift.tau = std::move(taus);
  return lift;
}

// Haar-ish random unitary tau per pair; epsilon = -1 folds in diag(1, -1).
// Unitary lifts keep the split verdicts well-conditioned.
inline EquivariantLift<Complex> random_unitary_lift(int epsilon, int pairs,
                                                    SplitMix64& rng) {
  std::vector<Matrix2<Complex>> taus;
  for (int k = 0; k < pairs; ++k) {
    Complex a(rng.next_symmetric(), rng.next_symmetric());
    Complex b(rng.next_symmetric(), rng.next_symmetric());
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n < 1e-9) { a = Complex(1.0); b = Complex(0.0); n = 1.0; }
    a /= n;
    b /= n;
    Matrix2<Complex> t;
    t << a, -std::conj(b), b, std::conj(a);
    if (epsilon == -1) t.col(1) *= -1.0;
    taus.push_back(t);
  }
  return make_involutive_lift(epsilon, std::move(taus));
}

enum class SplitVerdict { DoubleLagrangian, OrthogonalSum, Inconclusive };

inline const char* split_verdict_name(SplitVerdict v) {
  switch (v) {
    case SplitVerdict::DoubleLagrangian: return "double_lagrangian";
    case SplitVerdict::OrthogonalSum: return "orthogonal_sum";
    case SplitVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <class S>
struct EquivariantSplit {
  Matrix<S> v_plus, v_minus;  // bases of the +1 / -1 eigenspaces of the lift
  typename scalar_traits<S>::Real intra_residual;  // max |<V+,V+>|,|<V-,V->| / scale
  typename scalar_traits<S>::Real cross_residual;  // max |<V+,V->| / scale
  bool cross_nondegenerate = false;
  bool diag_nondegenerate = false;
  SplitVerdict verdict = SplitVerdict::Inconclusive;
};

namespace detail {

template <class S>
bool block_nondegenerate(const Matrix<S>& block, double floor_abs) {
  if constexpr (scalar_traits<S>::is_exact) {
    (void)floor_abs;
    return !scalar_traits<S>::is_zero(determinant(block));
  } else {
    Eigen::JacobiSVD<Matrix<Complex>> svd(block);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return false;
    return sv(sv.size() - 1) >= floor_abs;
  }
}

}  // namespace detail

inline constexpr double kNondegFactor = 1e3;  // nondegeneracy floor over tol

// Split V into the +-1 eigenspaces of the involutive lift and classify the
// gram blocks. epsilon = +1 is expected to produce two Lagrangian halves in
// nondegenerate mutual pairing; epsilon = -1 two symplectically orthogonal
// nondegenerate halves. The verdict reports what the grams actually did.
template <class S>
EquivariantSplit<S> equivariant_split(const FiberModel<S>& fiber,
                                      const EquivariantLift<S>& lift,
                                      double tol = kDefaultTol) {
  using Real = typename scalar_traits<S>::Real;
  using Traits = scalar_traits<S>;
  if (!fiber.paired)
    throw WrongGroup("equivariant_split: fiber has no sheet involution");
  const std::size_t pairs = fiber.sheets.size() / 2;
  if (lift.tau.size() != pairs || lift.tau_back.size() != pairs)
    throw DimensionMismatch("equivariant_split: one tau per sheet pair");
  if (lift.epsilon != 1 && lift.epsilon != -1)
    throw BadLift("equivariant_split: epsilon must be +-1");

  // Lift validity: det tau = epsilon and tau_back tau = identity.
  const S eps = S(lift.epsilon);
  Real tau_mag(1);
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto& t = lift.tau[k];
    const auto& tb = lift.tau_back[k];
    S det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
    S det_b = tb(0, 0) * tb(1, 1) - tb(0, 1) * tb(1, 0);
    Matrix2<S> prod = tb * t;
    Matrix2<S> defect = prod - Matrix2<S>::Identity();
    Real bad = Traits::mag(det - eps);
    bad = std::max(bad, Traits::mag(det_b - eps));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        bad = std::max(bad, Traits::mag(defect(i, j)));
    if (!Traits::passes(bad, tol))
      throw BadLift("equivariant_split: tau is not an involutive lift of sign epsilon");
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        tau_mag = std::max(tau_mag, Traits::mag(t(i, j)));
        tau_mag = std::max(tau_mag, Traits::mag(tb(i, j)));
      }
  }

  // Basis of V+-: per pair j and k in {0,1}, the section with e_k at y_j and
  // +- tau_j e_k at -y_j.
  const Eigen::Index n = fiber.dim();
  Matrix<S> v_plus = Matrix<S>::Zero(n, Eigen::Index(2 * pairs));
  Matrix<S> v_minus = Matrix<S>::Zero(n, Eigen::Index(2 * pairs));
  for (std::size_t j = 0; j < pairs; ++j) {
    const Eigen::Index row_y = 4 * Eigen::Index(j);      // sheet y_j
    const Eigen::Index row_ny = row_y + 2;               // sheet -y_j
    for (int k = 0; k < 2; ++k) {
      const Eigen::Index col = 2 * Eigen::Index(j) + k;
      v_plus(row_y + k, col) = S(1);
      v_minus(row_y + k, col) = S(1);
      for (int i = 0; i < 2; ++i) {
        v_plus(row_ny + i, col) = lift.tau[j](i, k);
        v_minus(row_ny + i, col) = -lift.tau[j](i, k);
      }
    }
  }

  Matrix<S> gram = gram_matrix(fiber);
  Matrix<S> g_pp = v_plus.transpose() * gram * v_plus;
  Matrix<S> g_mm = v_minus.transpose() * gram * v_minus;
  Matrix<S> g_pm = v_plus.transpose() * gram * v_minus;

  Real w_mag(0);
  for (const auto& w : fiber.weights)
    w_mag = std::max(w_mag, Traits::mag(w));
  Real scale = w_mag * std::max(Real(1), tau_mag);
  if (scale < Real(1)) scale = Real(1);

  EquivariantSplit<S> out;
  out.v_plus = std::move(v_plus);
  out.v_minus = std::move(v_minus);
  out.intra_residual = std::max(max_mag(g_pp), max_mag(g_mm)) / scale;
  out.cross_residual = max_mag(g_pm) / scale;

  const double floor_abs =
      kNondegFactor * tol * to_double(scale);  // floating nondegeneracy floor
  out.cross_nondegenerate = detail::block_nondegenerate(g_pm, floor_abs);
  out.diag_nondegenerate = detail::block_nondegenerate(g_pp, floor_abs) &&
                           detail::block_nondegenerate(g_mm, floor_abs);

  const bool intra_vanish = Traits::passes(out.intra_residual, tol);
  const bool cross_vanish = Traits::passes(out.cross_residual, tol);
  if (intra_vanish && out.cross_nondegenerate)
    out.verdict = SplitVerdict::DoubleLagrangian;
  else if (cross_vanish && out.diag_nondegenerate)
    out.verdict = SplitVerdict::OrthogonalSum;
  else
    out.verdict = SplitVerdict::Inconclusive;
  return out;
}

}  // namespace speclab
