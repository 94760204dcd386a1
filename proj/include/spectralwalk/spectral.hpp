#ifndef SPECTRALWALK_SPECTRAL_HPP
#define SPECTRALWALK_SPECTRAL_HPP

#include "spectralwalk/operators.hpp"
#include "spectralwalk/recovery.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace spectralwalk {

struct SpectralOptions {
  /// Consecutive eigenvalues closer than this times the largest one share a
  /// cluster (one distinct eigenvalue).
  double cluster_tolerance = 1e-9;
  /// A cluster is starred when its mass exceeds this times the volume.
  double star_tolerance = 1e-10;
};

/// One distinct eigenvalue of L: eigenpairs first..first+count-1.
struct EigenCluster {
  Index first = 0;
  Index count = 0;
  double mu = 0.0;   // eigenvalue of L (the weighted-average operator has -mu)
  double mass = 0.0; // sum over the cluster of <phi, 1_iD>_V^2
  bool starred = false;
};

/// Eigendecomposition of the interior Laplacian with the spectral partition
/// of the interior volume.
struct SpectralData {
  Vector mu;           // ascending eigenvalues of L
  Matrix eigenvectors; // columns, orthonormal in <.,.>_V
  Vector projections;  // a_j = <phi_j, 1_iD>_V per eigenpair
  std::vector<EigenCluster> clusters;
  double volume = 0.0;
  SpectralOptions options;

  /// Distinct starred eigenvalues (ascending) and their masses.
  Vector star_mu() const;
  Vector star_mass() const;
  Vector partition() const; // mass of every cluster, ascending mu
};

SpectralData eigendecompose(const InteriorOperator& op, const SpectralOptions& options = {});

/// <g_k, phi_j>_V predicted from the eigenpair: k! mu_j^{-k} a_j.
double eigen_pairing(const SpectralData& s, int k, Index j);

/// Q(t) = sum over starred clusters of mass * exp(-mu t).
double heat_content(const SpectralData& s, double t);
/// Interior heat solution H(., t) = sum_j a_j phi_j exp(-mu_j t), H(., 0) = 1.
InteriorVector heat_solution(const SpectralData& s, double t);
/// Taylor coefficients q_n = sum mass (-mu)^n / n!, n = 0..n_max.
Vector heat_asymptotics(const SpectralData& s, int n_max);

/// zeta(s) = sum over starred clusters of mass * mu^{-s}.
std::complex<double> zeta(const SpectralData& s, std::complex<double> arg);
/// (zeta(n), zeta(-n)) for a positive integer n <= 20.
std::pair<double, double> zeta_special_values(const SpectralData& s, int n);

/// Starred spectrum recovered from moment data.
struct RecoveredSpectrum {
  RecoveredMeasure<double> measure; // the Stieltjes measure as recovered
  Vector mu;                        // ascending eigenvalues of L
  Vector masses;                    // cluster masses aligned with mu

  Vector lambda() const { return -mu; } // eigenvalues of the weighted-average form -L
};

/// From the Poisson spectrum: moments A2[n]/n! have support {1/mu}.
RecoveredSpectrum recover_from_pspec(const Vector& A2, const RecoveryOptions& options = {});
/// From heat coefficients: moments (-1)^n n! q_n have support {mu}.
RecoveredSpectrum recover_from_heat(const Vector& q, const RecoveryOptions& options = {});

/// Monic polynomial (ascending coefficients) whose roots are the support
/// points 1/mu of the Poisson-spectrum moments, using A2[0..2N-1].
Vector star_polynomial(const Vector& A2, Index atoms);

/// Moment sequences fed to the recovery routines.
Vector pspec_moments(const Vector& A2);
Vector heat_moments(const Vector& q);

} // namespace spectralwalk

#endif // SPECTRALWALK_SPECTRAL_HPP
