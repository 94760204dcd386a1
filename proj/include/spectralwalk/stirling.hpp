#ifndef SPECTRALWALK_STIRLING_HPP
#define SPECTRALWALK_STIRLING_HPP

#include "spectralwalk/poisson.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace spectralwalk {

/// Exact Stirling numbers for 0 <= n, k <= kMaxOrder, filled from the
/// recurrences
///   S(k+1,n) = n S(k,n) + S(k,n-1)
///   s(k+1,n) = s(k,n-1) - k s(k,n)
/// with S(0,0) = s(0,0) = 1. s is signed: x(x-1)...(x-k+1) = sum_n s(k,n) x^n.
class StirlingTable {
public:
  static const StirlingTable& instance();

  /// Zero for n > k; throws std::out_of_range past kMaxOrder.
  std::int64_t second(int k, int n) const { return second_.at(at(k, n)); }
  std::int64_t first_signed(int k, int n) const { return first_.at(at(k, n)); }

private:
  StirlingTable();
  static std::size_t at(int k, int n);

  static constexpr std::size_t kSide = kMaxOrder + 1;
  std::array<std::int64_t, kSide * kSide> second_{};
  std::array<std::int64_t, kSide * kSide> first_{};
};

/// S(k,n), second kind; requires 1 <= n <= k <= 20.
std::int64_t stirling_second(int k, int n);
/// s(k,n), signed first kind; requires 1 <= n <= k <= 20.
std::int64_t stirling_first_signed(int k, int n);

/// P_k(x) = x sum_{l>=1} l^k (1-x)^{l-1}, the k-th moment of a geometric
/// exit index with per-step exit probability x, in closed form
///   P_k(x) = (-1)^k sum_{n=1..k} S(k,n) n! (-1/x)^n,  P_0 = 1.
/// Requires x in (0,2) and 0 <= k <= 20.
double pk_closed(double x, int k);

/// Exit-time moments on an alpha-weight-regular domain from the g-hierarchy:
///   E^x[tau^k] = g_k + sum_{n=1..k-1} S(k,n) (-alpha)^{n-k} g_n.
/// Entry k of the result is the k-th moment (entry 0 is 1). Throws
/// InvalidInput when the domain is not regular.
std::vector<InteriorVector> regular_moments_closed(const InteriorOperator& op, int k_max);

/// A1[k] = A2[k] + sum_{j=1..k-1} (-alpha)^{j-k} S(k,j) A2[j], k = 0..k_max.
Vector mspec_from_pspec(const Vector& A2, double alpha, int k_max);
/// A2[k] = A1[k] + sum_{j=1..k-1} (-alpha)^{j-k} s(k,j) A1[j], k = 0..k_max.
Vector pspec_from_mspec(const Vector& A1, double alpha, int k_max);

} // namespace spectralwalk

#endif // SPECTRALWALK_STIRLING_HPP
