#ifndef SPECTRALWALK_OPERATORS_HPP
#define SPECTRALWALK_OPERATORS_HPP

#include "spectralwalk/domain.hpp"

#include <Eigen/Cholesky>

#include <vector>

namespace spectralwalk {

/// Dense interior Laplacian L = diag(w_V) (I - T_D) of a domain with
/// nonempty boundary, with L[i][i] = w_V(x_i) and L[i][j] = -W_E(x_i, x_j).
///
/// diag(W_V) L is symmetric, so S = D^{1/2} L D^{-1/2} (D = diag(W_V)) is
/// symmetric positive definite; its Cholesky factor is computed once and
/// used for every solve.
class InteriorOperator {
public:
  explicit InteriorOperator(Domain domain);

  const Domain& domain() const { return domain_; }
  Index size() const { return laplacian_.rows(); }

  const Matrix& laplacian() const { return laplacian_; }
  /// S = D^{1/2} L D^{-1/2}.
  const Matrix& symmetrized() const { return symmetrized_; }
  const Vector& vertex_weights() const { return vertex_weights_; }
  const Vector& aux_weights() const { return aux_weights_; }

  /// x with L x = b.
  InteriorVector solve(const InteriorVector& b) const;
  /// Reciprocal condition estimate of S.
  double rcond() const { return rcond_; }

  /// <u,v> weighted by W_V over the interior.
  double inner(const InteriorVector& u, const InteriorVector& v) const;
  /// <1, v> weighted by W_V over the interior.
  double mass(const InteriorVector& v) const { return vertex_weights_.dot(v); }

private:
  Domain domain_;
  Matrix laplacian_;
  Matrix symmetrized_;
  Vector vertex_weights_;
  Vector aux_weights_;
  Vector sqrt_weights_;
  Eigen::LLT<Matrix> factor_;
  double rcond_ = 0.0;
};

InteriorOperator interior_laplacian(const Domain& d);

/// Transition matrix of the walk killed on leaving the interior:
/// T_D[i][j] = p(x_i, x_j) for interior pairs.
Matrix killed_transition(const Domain& d);

/// Green operator (I - T_D)^{-1} f, computed as L^{-1} diag(w_V) f.
InteriorVector green_apply(const InteriorOperator& op, const InteriorVector& f);

/// P^x(eta = l) for l = 1..l_max from interior vertex x (parent index),
/// i.e. [T_D^{l-1} (I - T_D) 1](x). Entry l-1 of the result holds l.
std::vector<double> exit_index_distribution(const Domain& d, Index x, int l_max);

} // namespace spectralwalk

#endif // SPECTRALWALK_OPERATORS_HPP
