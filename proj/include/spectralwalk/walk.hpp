#ifndef SPECTRALWALK_WALK_HPP
#define SPECTRALWALK_WALK_HPP

#include "spectralwalk/domain.hpp"
#include "spectralwalk/poisson.hpp"

#include <cstdint>
#include <vector>

namespace spectralwalk {

/// Small counter-seeded generator: xoshiro256** whose state is expanded by
/// splitmix64 from (seed, stream). Walk i always draws from stream i, so
/// results do not depend on scheduling.
class WalkRng {
public:
  using result_type = std::uint64_t;
  WalkRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t s_[4];
};

struct WalkConfig {
  Index start = 0;              // parent vertex index, must be interior
  std::uint64_t walks = 100000;
  std::uint64_t seed = 0;
  int k_max = 3;                // at most 6
  std::uint64_t max_steps = 100000000; // total over all walks
  unsigned threads = 0;         // 0: SPECTRALWALK_THREADS or hardware
};

inline constexpr int kMaxWalkMoment = 6;

struct ExitStats {
  Index start = 0;
  int k_max = 0;
  Vector moments;         // E[tau^k] estimates, k = 0..k_max
  Vector standard_errors; // per k
  std::vector<std::uint64_t> eta_histogram; // entry l counts eta = l (entry 0 unused)
  std::uint64_t walks_run = 0;
  std::uint64_t steps = 0;
  bool truncated = false; // stopped at max_steps; statistics are partial
  /// max over samples of |eta - alpha tau| / eta on weight-regular domains,
  /// negative when the domain is not regular.
  double regular_bridge_gap = -1.0;
};

/// Runs cfg.walks independent natural random walks from cfg.start until they
/// first leave the interior, accumulating tau = sum 1/w_V(X_n) over visited
/// interior vertices and the exit index eta.
ExitStats run_walks(const Domain& d, const WalkConfig& cfg);

/// z_k = (empirical - f_k(start)) / SE_k for k = 1..k_max (entry 0 is 0).
/// A zero standard error gives z = 0 on exact agreement and +-inf otherwise.
Vector compare_exact(const Domain& d, const ExitStats& stats, const HierarchySolution& h);

/// Thread count from SPECTRALWALK_THREADS, else hardware concurrency.
unsigned default_thread_count();

} // namespace spectralwalk

#endif // SPECTRALWALK_WALK_HPP
