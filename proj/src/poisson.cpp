#include "spectralwalk/poisson.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace spectralwalk {

namespace {

void check_order(int k_max) {
  if (k_max < 0 || k_max > kMaxOrder)
    throw InvalidInput("moment order must be in [0, " + std::to_string(kMaxOrder) +
                       "], got " + std::to_string(k_max));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

} // namespace

HierarchySolution solve_hierarchies(const InteriorOperator& op, int k_max) {
  check_order(k_max);
  const Index m = op.size();
  const Vector neg_inv_w = -op.aux_weights().cwiseInverse();

  HierarchySolution h;
  h.k_max = k_max;
  h.g.push_back(Vector::Ones(m));
  h.f.push_back(Vector::Ones(m));
  for (int k = 1; k <= k_max; ++k) {
    h.g.push_back(op.solve(k * h.g[static_cast<std::size_t>(k - 1)]));

    Vector rhs = k * h.f[static_cast<std::size_t>(k - 1)];
    Vector power = neg_inv_w; // (-1/w_V)^{j-1}
    for (int j = 2; j <= k; ++j) {
      rhs += binomial(k, j) * power.cwiseProduct(h.f[static_cast<std::size_t>(k - j)]);
      power = power.cwiseProduct(neg_inv_w);
    }
    h.f.push_back(op.solve(rhs));
  }
  return h;
}

MomentTable moment_table(const InteriorOperator& op, int k_max) {
  const auto h = solve_hierarchies(op, k_max);
  MomentTable t;
  t.A1.resize(k_max + 1);
  t.A2.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    t.A1[k] = op.mass(h.f[static_cast<std::size_t>(k)]);
    t.A2[k] = op.mass(h.g[static_cast<std::size_t>(k)]);
  }
  if (const auto r = regularity(op.domain()); r.is_regular) t.alpha = r.alpha;
  return t;
}

Vector moment_spectrum(const InteriorOperator& op, int k_max) {
  return moment_table(op, k_max).A1;
}

Vector poisson_spectrum(const InteriorOperator& op, int k_max) {
  return moment_table(op, k_max).A2;
}

double variational_quotient(const InteriorOperator& op, const InteriorVector& g, int k) {
  if (k < 0) throw InvalidInput("variational quotient order must be nonnegative");
  if (g.size() != op.size()) throw InvalidInput("trial vector has the wrong length");
  if (g.isZero(0.0)) throw InvalidInput("trial vector must be nonzero");
  Vector Lkg = g;
  for (int i = 0; i < k; ++i) Lkg = op.laplacian() * Lkg;
  const double num = op.mass(g);
  const double den = std::abs(op.inner(g, Lkg));
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num * num / den;
}

} // namespace spectralwalk
