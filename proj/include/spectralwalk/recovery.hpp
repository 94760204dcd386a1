#ifndef SPECTRALWALK_RECOVERY_HPP
#define SPECTRALWALK_RECOVERY_HPP

// Recovery of a finitely supported positive measure on (0, inf) from its
// power moments m_n = sum_j w_j x_j^n (Stieltjes moment problem with finite
// spectrum). Header-only and templated on the scalar so callers can trade
// speed for extra precision (e.g. long double) in the Hankel arithmetic.

#include "spectralwalk/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace spectralwalk {

struct RecoveryOptions {
  /// A Hankel pivot det M_{.,n+1} / det M_{.,n} of the normalized moments
  /// below this value counts as zero; below its negative, as a violation of
  /// the positivity necessary for a Stieltjes solution.
  double hankel_tolerance = 1e-10;
  /// Use exactly this many atoms instead of detecting the rank.
  std::optional<Index> forced_atoms;
};

/// Determinant data of the Hankel matrices M_{0,n} = (m_{i+j}) and
/// M_{1,n} = (m_{i+j+1}), computed on moments normalized to
/// m_n / (m_0 scale^n) so that the leading entry of M_{0,.} is 1.
struct HankelDiagnostics {
  double scale = 1.0;
  std::vector<double> det0; // det M_{0,n}, n = 1, 2, ...
  std::vector<double> det1; // det M_{1,n}
  std::vector<double> pivot0; // det M_{0,n+1} / det M_{0,n}
  std::vector<double> pivot1;
  Index available = 0; // largest n whose M_{0,n} and M_{1,n} are both computable
  bool rank_confirmed = false; // a vanishing pivot was observed past the rank

  std::string summary() const {
    std::ostringstream os;
    os << "scale " << scale << "; det M0:";
    for (double d : det0) os << ' ' << d;
    os << "; det M1:";
    for (double d : det1) os << ' ' << d;
    return os.str();
  }
};

class RecoveryError : public InvalidInput {
public:
  enum class Kind { InsufficientLength, NonPositiveMoment, HankelNecessity, SingularHankel, IllConditioned };

  RecoveryError(Kind kind, const std::string& what, HankelDiagnostics diagnostics = {})
      : InvalidInput(what), kind_(kind), diagnostics_(std::move(diagnostics)) {}

  Kind kind() const { return kind_; }
  const HankelDiagnostics& diagnostics() const { return diagnostics_; }

private:
  Kind kind_;
  HankelDiagnostics diagnostics_;
};

template <typename Scalar>
struct RecoveredMeasure {
  VectorX<Scalar> support; // ascending
  VectorX<Scalar> masses;  // aligned with support
  Index atoms = 0;
  HankelDiagnostics diagnostics;
};

namespace detail {

/// Pivots d_i = det A_{i+1} / det A_i of an unpivoted LDL^T factorization of
/// the symmetric matrix A. Stops after the first pivot that is not above
/// `floor`, which is still reported.
template <typename Scalar>
std::vector<Scalar> ldlt_pivots(const MatrixX<Scalar>& A, Scalar floor) {
  const Index p = A.rows();
  MatrixX<Scalar> L = MatrixX<Scalar>::Zero(p, p);
  std::vector<Scalar> d;
  for (Index i = 0; i < p; ++i) {
    Scalar di = A(i, i);
    for (Index k = 0; k < i; ++k) di -= L(i, k) * L(i, k) * d[static_cast<std::size_t>(k)];
    d.push_back(di);
    if (!(di > floor)) break;
    for (Index j = i + 1; j < p; ++j) {
      Scalar s = A(j, i);
      for (Index k = 0; k < i; ++k) s -= L(j, k) * L(i, k) * d[static_cast<std::size_t>(k)];
      L(j, i) = s / di;
    }
  }
  return d;
}

template <typename Scalar>
MatrixX<Scalar> hankel(const VectorX<Scalar>& m, Index n, Index shift) {
  MatrixX<Scalar> H(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) H(i, j) = m[i + j + shift];
  return H;
}

} // namespace detail

/// Moments scaled as m_n / (m_0 scale^n), with scale = max_n (m_n/m_0)^{1/n}.
template <typename Scalar>
VectorX<Scalar> normalized_moments(const VectorX<Scalar>& m, Scalar& scale) {
  using std::pow;
  scale = Scalar(0);
  for (Index n = 1; n < m.size(); ++n)
    scale = std::max(scale, Scalar(pow(m[n] / m[0], Scalar(1) / Scalar(n))));
  if (!(scale > Scalar(0))) scale = Scalar(1);
  VectorX<Scalar> t(m.size());
  Scalar factor = m[0];
  for (Index n = 0; n < m.size(); ++n) {
    t[n] = m[n] / factor;
    factor *= scale;
  }
  return t;
}

/// Detects the number of atoms N from the Hankel pivots, then takes the
/// support as the eigenvalues of the pencil (M_{1,N}, M_{0,N}) and the masses
/// from the Vandermonde system sum_j w_j x_j^n = m_n, n < N.
template <typename Scalar>
RecoveredMeasure<Scalar> recover_measure(const VectorX<Scalar>& moments,
                                         const RecoveryOptions& options = {}) {
  using Kind = RecoveryError::Kind;
  const Index len = moments.size();
  if (len < 2)
    throw RecoveryError(Kind::InsufficientLength, "need at least two moments");
  for (Index n = 0; n < len; ++n) {
    if (!(moments[n] > Scalar(0)) || !std::isfinite(static_cast<double>(moments[n]))) {
      std::ostringstream os;
      os << "moment " << n << " is not positive (" << static_cast<double>(moments[n]) << ")";
      throw RecoveryError(Kind::NonPositiveMoment, os.str());
    }
  }

  Scalar scale;
  const VectorX<Scalar> t = normalized_moments(moments, scale);
  const Scalar tol = Scalar(options.hankel_tolerance);

  HankelDiagnostics diag;
  diag.scale = static_cast<double>(scale);
  diag.available = len / 2;
  const Index size0 = (len - 1) / 2 + 1; // M_{0,n} needs m_{2n-2}
  const Index size1 = (len - 2) / 2 + 1; // M_{1,n} needs m_{2n-1}
  const auto piv0 = detail::ldlt_pivots(detail::hankel(t, size0, 0), tol);
  const auto piv1 = detail::ldlt_pivots(detail::hankel(t, size1, 1), tol * t[1]);
  const auto record = [](const auto& pivots, std::vector<double>& dets, std::vector<double>& out) {
    double det = 1.0;
    for (auto p : pivots) {
      out.push_back(static_cast<double>(p));
      det *= static_cast<double>(p);
      dets.push_back(det);
    }
  };
  record(piv0, diag.det0, diag.pivot0);
  record(piv1, diag.det1, diag.pivot1);

  // Rank: leading run of pivots that are clearly positive in both matrices.
  Index rank = 0;
  for (;; ++rank) {
    const auto r = static_cast<std::size_t>(rank);
    if (rank >= diag.available || r >= piv0.size() || r >= piv1.size()) break;
    const bool zero0 = !(piv0[r] > tol);
    const bool zero1 = !(piv1[r] > tol * t[1]);
    if (piv0[r] < -tol || piv1[r] < -tol * t[1]) {
      std::ostringstream os;
      os << "moments violate Hankel positivity at order " << rank + 1
         << " (no positive measure has these moments): " << diag.summary();
      throw RecoveryError(Kind::HankelNecessity, os.str(), diag);
    }
    if (zero0 || zero1) {
      diag.rank_confirmed = true;
      break;
    }
  }

  Index atoms = rank;
  if (options.forced_atoms) {
    atoms = *options.forced_atoms;
    if (atoms < 1 || atoms > diag.available) {
      std::ostringstream os;
      os << "requested " << atoms << " atoms but " << len << " moments support at most "
         << diag.available;
      throw RecoveryError(Kind::InsufficientLength, os.str(), diag);
    }
    if (atoms > rank) {
      std::ostringstream os;
      os << "Hankel matrix is singular at the requested order " << atoms
         << " (detected rank " << rank << "): " << diag.summary();
      throw RecoveryError(Kind::SingularHankel, os.str(), diag);
    }
  }
  if (atoms == 0)
    throw RecoveryError(Kind::SingularHankel, "no positive Hankel pivot: " + diag.summary(), diag);

  const MatrixX<Scalar> M0 = detail::hankel(t, atoms, 0);
  const MatrixX<Scalar> M1 = detail::hankel(t, atoms, 1);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixX<Scalar>> pencil(M1, M0, Eigen::EigenvaluesOnly);
  if (pencil.info() != Eigen::Success)
    throw RecoveryError(Kind::IllConditioned, "Hankel pencil solve failed: " + diag.summary(), diag);
  const VectorX<Scalar> x = pencil.eigenvalues();

  for (Index j = 0; j < atoms; ++j) {
    const bool distinct = j == 0 || x[j] > x[j - 1] * (Scalar(1) + Scalar(1e-12));
    if (!(x[j] > Scalar(0)) || !distinct) {
      std::ostringstream os;
      os << "Hankel pencil gave a non-positive or repeated support point at atom " << j
         << ": " << diag.summary();
      throw RecoveryError(Kind::IllConditioned, os.str(), diag);
    }
  }

  MatrixX<Scalar> V(atoms, atoms);
  for (Index j = 0; j < atoms; ++j) {
    Scalar power(1);
    for (Index n = 0; n < atoms; ++n) {
      V(n, j) = power;
      power *= x[j];
    }
  }
  const VectorX<Scalar> w = V.fullPivLu().solve(t.head(atoms));
  for (Index j = 0; j < atoms; ++j) {
    if (!(w[j] > Scalar(0))) {
      std::ostringstream os;
      os << "Vandermonde solve gave a non-positive mass at atom " << j << ": " << diag.summary();
      throw RecoveryError(Kind::IllConditioned, os.str(), diag);
    }
  }

  RecoveredMeasure<Scalar> out;
  out.atoms = atoms;
  out.support = x * scale;
  out.masses = w * moments[0];
  out.diagnostics = std::move(diag);
  return out;
}

/// Monic characteristic polynomial of M_{1,N} M_{0,N}^{-1}, coefficients in
/// ascending order (c_0, ..., c_{N-1}, 1). Its roots are the support points.
/// Computed from the linear system M_{0,N} c = -(m_N, ..., m_{2N-1}).
template <typename Scalar>
VectorX<Scalar> characteristic_polynomial(const VectorX<Scalar>& moments, Index atoms,
                                          double hankel_tolerance = 1e-10) {
  using Kind = RecoveryError::Kind;
  if (atoms < 1 || moments.size() < 2 * atoms)
    throw RecoveryError(Kind::InsufficientLength,
                        "need 2N moments for a degree-N characteristic polynomial");
  for (Index n = 0; n < moments.size(); ++n)
    if (!(moments[n] > Scalar(0)))
      throw RecoveryError(Kind::NonPositiveMoment, "moments must be positive");
  Scalar scale;
  const VectorX<Scalar> t = normalized_moments(VectorX<Scalar>(moments.head(2 * atoms)), scale);
  const MatrixX<Scalar> M0 = detail::hankel(t, atoms, 0);
  const auto piv = detail::ldlt_pivots(M0, Scalar(hankel_tolerance));
  if (static_cast<Index>(piv.size()) < atoms || !(piv.back() > Scalar(hankel_tolerance)))
    throw RecoveryError(Kind::SingularHankel, "M_{0,N} is singular at the requested order");
  const VectorX<Scalar> c = M0.ldlt().solve(-t.segment(atoms, atoms));

  VectorX<Scalar> coeffs(atoms + 1);
  for (Index i = 0; i < atoms; ++i) {
    using std::pow;
    coeffs[i] = c[i] * Scalar(pow(scale, Scalar(atoms - i)));
  }
  coeffs[atoms] = Scalar(1);
  return coeffs;
}

/// Roots of a real polynomial with ascending coefficients (leading nonzero),
/// from the companion matrix; returned sorted by real part.
template <typename Scalar>
std::vector<std::complex<Scalar>> polynomial_roots(const VectorX<Scalar>& coeffs) {
  const Index degree = coeffs.size() - 1;
  if (degree < 1 || coeffs[degree] == Scalar(0))
    throw InvalidInput("polynomial must have degree >= 1 with nonzero leading coefficient");
  MatrixX<Scalar> C = MatrixX<Scalar>::Zero(degree, degree);
  for (Index i = 1; i < degree; ++i) C(i, i - 1) = Scalar(1);
  for (Index i = 0; i < degree; ++i) C(i, degree - 1) = -coeffs[i] / coeffs[degree];
  Eigen::EigenSolver<MatrixX<Scalar>> solver(C, false);
  std::vector<std::complex<Scalar>> roots;
  for (Index i = 0; i < degree; ++i) roots.push_back(solver.eigenvalues()[i]);
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.real() < b.real(); });
  return roots;
}

} // namespace spectralwalk

#endif // SPECTRALWALK_RECOVERY_HPP
