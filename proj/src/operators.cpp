#include "spectralwalk/operators.hpp"

#include <sstream>

namespace spectralwalk {

namespace {

Matrix assemble_laplacian(const Domain& d) {
  const Index m = d.interior_size();
  const auto& g = d.parent();
  Matrix L = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    const Index x = d.interior()[static_cast<std::size_t>(i)];
    L(i, i) = g.aux_weight(x);
    for (const auto& nb : g.neighbors(x)) {
      const Index j = d.interior_position(nb.vertex);
      if (j >= 0) L(i, j) = -nb.weight;
    }
  }
  return L;
}

} // namespace

InteriorOperator::InteriorOperator(Domain domain) : domain_(std::move(domain)) {
  domain_.require_boundary();
  laplacian_ = assemble_laplacian(domain_);
  vertex_weights_ = domain_.interior_vertex_weights();
  aux_weights_ = domain_.interior_aux_weights();
  sqrt_weights_ = vertex_weights_.cwiseSqrt();
  symmetrized_ = sqrt_weights_.asDiagonal() * laplacian_ * sqrt_weights_.cwiseInverse().asDiagonal();
  // Remove the last-bit asymmetry left by the similarity transform.
  symmetrized_ = (0.5 * (symmetrized_ + symmetrized_.transpose())).eval();
  factor_.compute(symmetrized_);
  rcond_ = factor_.info() == Eigen::Success ? factor_.rcond() : 0.0;
  if (factor_.info() != Eigen::Success || !(rcond_ > 0.0)) {
    std::ostringstream os;
    os << "interior Laplacian is not positive definite (rcond estimate " << rcond_ << ")";
    throw NumericalError(os.str());
  }
}

InteriorVector InteriorOperator::solve(const InteriorVector& b) const {
  if (b.size() != size()) throw InvalidInput("right-hand side has the wrong length");
  // L = D^{-1/2} S D^{1/2}  =>  L^{-1} b = D^{-1/2} S^{-1} D^{1/2} b.
  const Vector y = factor_.solve(sqrt_weights_.cwiseProduct(b));
  return y.cwiseQuotient(sqrt_weights_);
}

double InteriorOperator::inner(const InteriorVector& u, const InteriorVector& v) const {
  return (u.array() * v.array() * vertex_weights_.array()).sum();
}

InteriorOperator interior_laplacian(const Domain& d) { return InteriorOperator(d); }

Matrix killed_transition(const Domain& d) {
  d.require_boundary();
  const Matrix L = assemble_laplacian(d);
  const Vector w = d.interior_aux_weights();
  Matrix T = -(w.cwiseInverse().asDiagonal() * L);
  T.diagonal().setZero(); // no self-edges
  return T;
}

InteriorVector green_apply(const InteriorOperator& op, const InteriorVector& f) {
  if (f.size() != op.size()) throw InvalidInput("Green operator input has the wrong length");
  return op.solve(op.aux_weights().cwiseProduct(f));
}

std::vector<double> exit_index_distribution(const Domain& d, Index x, int l_max) {
  const Index i = d.interior_position(x);
  if (i < 0) throw InvalidInput("start vertex " + std::to_string(x) + " is not interior");
  if (l_max < 1) throw InvalidInput("l_max must be positive");
  const Matrix T = killed_transition(d);
  // v_l = T^{l-1} (I - T) 1; (I - T) 1 is the one-step exit probability,
  // summed over non-interior neighbours directly so it is never negative.
  Vector v = Vector::Zero(T.rows());
  for (Index j = 0; j < T.rows(); ++j) {
    const Index y = d.interior()[static_cast<std::size_t>(j)];
    for (const auto& nb : d.parent().neighbors(y))
      if (!d.is_interior(nb.vertex)) v[j] += nb.weight;
    v[j] /= d.parent().aux_weight(y);
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(l_max));
  for (int l = 1; l <= l_max; ++l) {
    out.push_back(v[i]);
    v = T * v;
  }
  return out;
}

} // namespace spectralwalk
