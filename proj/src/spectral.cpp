#include "spectralwalk/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace spectralwalk {

SpectralData eigendecompose(const InteriorOperator& op, const SpectralOptions& options) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.symmetrized());
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");

  const Vector sqrt_w = op.vertex_weights().cwiseSqrt();
  SpectralData s;
  s.options = options;
  s.mu = solver.eigenvalues();
  s.eigenvectors = sqrt_w.cwiseInverse().asDiagonal() * solver.eigenvectors();
  s.projections = solver.eigenvectors().transpose() * sqrt_w;
  s.volume = op.vertex_weights().sum();

  const Index m = s.mu.size();
  const double gap = options.cluster_tolerance * s.mu.cwiseAbs().maxCoeff();
  for (Index j = 0; j < m; ++j) {
    if (s.clusters.empty() || s.mu[j] - s.mu[j - 1] > gap)
      s.clusters.push_back({j, 0, 0.0, 0.0, false});
    auto& c = s.clusters.back();
    ++c.count;
    c.mass += s.projections[j] * s.projections[j];
  }
  for (auto& c : s.clusters) {
    c.mu = s.mu.segment(c.first, c.count).mean();
    c.starred = c.mass > options.star_tolerance * s.volume;
  }
  return s;
}

Vector SpectralData::star_mu() const {
  std::vector<double> v;
  for (const auto& c : clusters)
    if (c.starred) v.push_back(c.mu);
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

Vector SpectralData::star_mass() const {
  std::vector<double> v;
  for (const auto& c : clusters)
    if (c.starred) v.push_back(c.mass);
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

Vector SpectralData::partition() const {
  Vector v(static_cast<Index>(clusters.size()));
  for (std::size_t i = 0; i < clusters.size(); ++i) v[static_cast<Index>(i)] = clusters[i].mass;
  return v;
}

double eigen_pairing(const SpectralData& s, int k, Index j) {
  if (j < 0 || j >= s.mu.size()) throw InvalidInput("eigenpair index out of range");
  if (k < 0 || k > kMaxOrder) throw InvalidInput("order out of range");
  return factorial(k) * std::pow(s.mu[j], -k) * s.projections[j];
}

double heat_content(const SpectralData& s, double t) {
  if (!(t >= 0.0)) throw InvalidInput("heat content needs t >= 0");
  double q = 0.0;
  for (const auto& c : s.clusters)
    if (c.starred) q += c.mass * std::exp(-c.mu * t);
  return q;
}

InteriorVector heat_solution(const SpectralData& s, double t) {
  if (!(t >= 0.0)) throw InvalidInput("heat solution needs t >= 0");
  const Vector coeff = s.projections.cwiseProduct((-s.mu * t).array().exp().matrix());
  return s.eigenvectors * coeff;
}

Vector heat_asymptotics(const SpectralData& s, int n_max) {
  if (n_max < 0 || n_max > kMaxOrder)
    throw InvalidInput("heat asymptotics order must be in [0, " + std::to_string(kMaxOrder) + "]");
  Vector q = Vector::Zero(n_max + 1);
  for (const auto& c : s.clusters) {
    if (!c.starred) continue;
    double term = c.mass; // mass (-mu)^n / n!
    for (int n = 0; n <= n_max; ++n) {
      q[n] += term;
      term *= -c.mu / (n + 1);
    }
  }
  return q;
}

std::complex<double> zeta(const SpectralData& s, std::complex<double> arg) {
  std::complex<double> z = 0.0;
  for (const auto& c : s.clusters)
    if (c.starred) z += c.mass * std::exp(-arg * std::log(c.mu));
  return z;
}

std::pair<double, double> zeta_special_values(const SpectralData& s, int n) {
  if (n < 1 || n > kMaxOrder)
    throw InvalidInput("zeta special values need 1 <= n <= " + std::to_string(kMaxOrder));
  double pos = 0.0;
  double neg = 0.0;
  for (const auto& c : s.clusters) {
    if (!c.starred) continue;
    pos += c.mass * std::pow(c.mu, -n);
    neg += c.mass * std::pow(c.mu, n);
  }
  return {pos, neg};
}

Vector pspec_moments(const Vector& A2) {
  if (A2.size() > kMaxOrder + 1)
    throw InvalidInput("at most " + std::to_string(kMaxOrder + 1) + " Poisson-spectrum entries");
  Vector m(A2.size());
  for (Index n = 0; n < A2.size(); ++n) m[n] = A2[n] / factorial(static_cast<int>(n));
  return m;
}

Vector heat_moments(const Vector& q) {
  if (q.size() > kMaxOrder + 1)
    throw InvalidInput("at most " + std::to_string(kMaxOrder + 1) + " heat coefficients");
  Vector m(q.size());
  for (Index n = 0; n < q.size(); ++n)
    m[n] = ((n % 2 == 0) ? 1.0 : -1.0) * factorial(static_cast<int>(n)) * q[n];
  return m;
}

RecoveredSpectrum recover_from_pspec(const Vector& A2, const RecoveryOptions& options) {
  RecoveredSpectrum r;
  r.measure = recover_measure<double>(pspec_moments(A2), options);
  // support 1/mu ascending  =>  mu descending; reverse.
  r.mu = r.measure.support.cwiseInverse().reverse();
  r.masses = r.measure.masses.reverse();
  return r;
}

RecoveredSpectrum recover_from_heat(const Vector& q, const RecoveryOptions& options) {
  RecoveredSpectrum r;
  r.measure = recover_measure<double>(heat_moments(q), options);
  r.mu = r.measure.support;
  r.masses = r.measure.masses;
  return r;
}

Vector star_polynomial(const Vector& A2, Index atoms) {
  return characteristic_polynomial<double>(pspec_moments(A2), atoms);
}

} // namespace spectralwalk
