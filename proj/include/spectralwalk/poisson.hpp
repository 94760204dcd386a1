#ifndef SPECTRALWALK_POISSON_HPP
#define SPECTRALWALK_POISSON_HPP

#include "spectralwalk/operators.hpp"

#include <optional>
#include <vector>

namespace spectralwalk {

/// Solutions of the two Poisson hierarchies on a domain interior.
///
///   g_0 = 1,  L g_k = k g_{k-1}                          (g_k = k! L^{-k} 1)
///   f_0 = 1,  L f_k = k f_{k-1}
///                 + sum_{j=2..k} C(k,j) (-1/w_V)^{j-1} f_{k-j}
///
/// f_k(x) is the k-th moment E^x[tau^k] of the exit time.
struct HierarchySolution {
  int k_max = 0;
  std::vector<InteriorVector> g;
  std::vector<InteriorVector> f;
};

HierarchySolution solve_hierarchies(const InteriorOperator& op, int k_max);

/// mspec / pspec: A1[k] = <f_k, 1>_V and A2[k] = <g_k, 1>_V for k = 0..k_max.
struct MomentTable {
  Vector A1;
  Vector A2;
  std::optional<double> alpha; // set when the domain is weight regular
};

MomentTable moment_table(const InteriorOperator& op, int k_max);
Vector moment_spectrum(const InteriorOperator& op, int k_max);
Vector poisson_spectrum(const InteriorOperator& op, int k_max);

/// Q_k(g) = <1,g>^2 / |<g, L^k g>|, weighted by W_V. Returns +infinity when
/// the denominator vanishes; throws InvalidInput for g = 0.
double variational_quotient(const InteriorOperator& op, const InteriorVector& g, int k);

} // namespace spectralwalk

#endif // SPECTRALWALK_POISSON_HPP
