#include "spectralwalk/stirling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spectralwalk {

StirlingTable::StirlingTable() {
  second_[at(0, 0)] = 1;
  first_[at(0, 0)] = 1;
  for (int k = 0; k < kMaxOrder; ++k) {
    for (int n = 1; n <= k + 1; ++n) {
      second_[at(k + 1, n)] = n * second_[at(k, n)] + second_[at(k, n - 1)];
      first_[at(k + 1, n)] = first_[at(k, n - 1)] - k * first_[at(k, n)];
    }
  }
}

std::size_t StirlingTable::at(int k, int n) {
  if (k < 0 || n < 0 || k > kMaxOrder || n > kMaxOrder)
    throw std::out_of_range("Stirling index out of range");
  return static_cast<std::size_t>(k) * kSide + static_cast<std::size_t>(n);
}

const StirlingTable& StirlingTable::instance() {
  static const StirlingTable table;
  return table;
}

namespace {

void check_range(int k, int n) {
  if (n < 1 || n > k || k > kMaxOrder)
    throw InvalidInput("Stirling numbers need 1 <= n <= k <= " + std::to_string(kMaxOrder) +
                       ", got k=" + std::to_string(k) + " n=" + std::to_string(n));
}

void check_conversion(const Vector& in, double alpha, int k_max) {
  if (!(alpha > 0.0)) throw InvalidInput("alpha must be positive");
  if (k_max < 0 || k_max > kMaxOrder)
    throw InvalidInput("order must be in [0, " + std::to_string(kMaxOrder) + "]");
  if (in.size() < k_max + 1)
    throw InvalidInput("need " + std::to_string(k_max + 1) + " entries (k = 0.." +
                       std::to_string(k_max) + "), got " + std::to_string(in.size()));
}

} // namespace

std::int64_t stirling_second(int k, int n) {
  check_range(k, n);
  return StirlingTable::instance().second(k, n);
}

std::int64_t stirling_first_signed(int k, int n) {
  check_range(k, n);
  return StirlingTable::instance().first_signed(k, n);
}

double pk_closed(double x, int k) {
  if (!(x > 0.0 && x < 2.0)) throw InvalidInput("P_k needs x in (0,2)");
  if (k < 0 || k > kMaxOrder) throw InvalidInput("P_k order out of range");
  if (k == 0) return 1.0;
  const auto& table = StirlingTable::instance();
  double sum = 0.0;
  double power = 1.0; // (-1/x)^n
  for (int n = 1; n <= k; ++n) {
    power *= -1.0 / x;
    sum += static_cast<double>(table.second(k, n)) * factorial(n) * power;
  }
  return (k % 2 == 0) ? sum : -sum;
}

std::vector<InteriorVector> regular_moments_closed(const InteriorOperator& op, int k_max) {
  const auto report = regularity(op.domain());
  if (!report.is_regular) throw InvalidInput("domain is not weight regular");
  const double alpha = report.alpha;
  const auto h = solve_hierarchies(op, k_max);
  const auto& table = StirlingTable::instance();

  std::vector<InteriorVector> out{h.g[0]};
  for (int k = 1; k <= k_max; ++k) {
    InteriorVector m = h.g[static_cast<std::size_t>(k)];
    for (int n = 1; n < k; ++n)
      m += static_cast<double>(table.second(k, n)) * std::pow(-alpha, n - k) *
           h.g[static_cast<std::size_t>(n)];
    out.push_back(std::move(m));
  }
  return out;
}

Vector mspec_from_pspec(const Vector& A2, double alpha, int k_max) {
  check_conversion(A2, alpha, k_max);
  const auto& table = StirlingTable::instance();
  Vector A1(k_max + 1);
  A1[0] = A2[0];
  for (int k = 1; k <= k_max; ++k) {
    double sum = A2[k];
    for (int j = 1; j < k; ++j)
      sum += std::pow(-alpha, j - k) * static_cast<double>(table.second(k, j)) * A2[j];
    A1[k] = sum;
  }
  return A1;
}

Vector pspec_from_mspec(const Vector& A1, double alpha, int k_max) {
  check_conversion(A1, alpha, k_max);
  const auto& table = StirlingTable::instance();
  Vector A2(k_max + 1);
  A2[0] = A1[0];
  for (int k = 1; k <= k_max; ++k) {
    double sum = A1[k];
    for (int j = 1; j < k; ++j)
      sum += std::pow(-alpha, j - k) * static_cast<double>(table.first_signed(k, j)) * A1[j];
    A2[k] = sum;
  }
  return A2;
}

} // namespace spectralwalk
