#include "spectralwalk/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace spectralwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr std::uint64_t kChunk = 4096;

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct ChunkResult {
  std::vector<long double> power_sums; // sum tau^p, p = 0..2 k_max
  std::vector<std::uint64_t> histogram;
  std::uint64_t walks = 0;
  std::uint64_t steps = 0;
  double bridge_gap = 0.0;
  bool hit_cap = false;
};

struct Sampler {
  const Domain& domain;
  std::vector<std::vector<double>> cumulative; // per interior position
  std::vector<std::vector<Index>> targets;
  std::vector<double> inv_aux;

  explicit Sampler(const Domain& d) : domain(d) {
    const auto& g = d.parent();
    for (auto x : d.interior()) {
      std::vector<double> cum;
      std::vector<Index> tgt;
      double acc = 0.0;
      for (const auto& nb : g.neighbors(x)) {
        acc += nb.weight;
        cum.push_back(acc);
        tgt.push_back(nb.vertex);
      }
      cumulative.push_back(std::move(cum));
      targets.push_back(std::move(tgt));
      inv_aux.push_back(1.0 / g.aux_weight(x));
    }
  }

  /// Next vertex from interior position i.
  Index step(Index i, WalkRng& rng) const {
    const auto& cum = cumulative[static_cast<std::size_t>(i)];
    const double u = rng.uniform() * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return targets[static_cast<std::size_t>(i)][static_cast<std::size_t>(it - cum.begin())];
  }
};

ChunkResult run_chunk(const Sampler& sampler, const WalkConfig& cfg, std::uint64_t first,
                      std::uint64_t last, double alpha) {
  ChunkResult r;
  r.power_sums.assign(static_cast<std::size_t>(2 * cfg.k_max + 1), 0.0L);
  const Index start = sampler.domain.interior_position(cfg.start);
  for (std::uint64_t w = first; w < last; ++w) {
    WalkRng rng(cfg.seed, w);
    CompensatedSum tau;
    std::uint64_t eta = 0;
    Index pos = start;
    while (pos >= 0) {
      tau.add(sampler.inv_aux[static_cast<std::size_t>(pos)]);
      ++eta;
      if (eta > cfg.max_steps) {
        r.hit_cap = true;
        return r;
      }
      pos = sampler.domain.interior_position(sampler.step(pos, rng));
    }
    const double t = tau.value();
    long double p = 1.0L;
    for (auto& s : r.power_sums) {
      s += p;
      p *= t;
    }
    if (r.histogram.size() <= eta) r.histogram.resize(eta + 1, 0);
    ++r.histogram[eta];
    ++r.walks;
    r.steps += eta;
    if (alpha > 0.0)
      r.bridge_gap = std::max(r.bridge_gap, std::abs(static_cast<double>(eta) - alpha * t) /
                                                static_cast<double>(eta));
  }
  return r;
}

} // namespace

WalkRng::WalkRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed;
  const std::uint64_t mixed = splitmix64(x) ^ (stream * 0xd1342543de82ef95ULL);
  x = mixed;
  for (auto& s : s_) s = splitmix64(x);
}

WalkRng::result_type WalkRng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SPECTRALWALK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExitStats run_walks(const Domain& d, const WalkConfig& cfg) {
  d.require_boundary();
  if (!d.is_interior(cfg.start))
    throw InvalidInput("start vertex " + std::to_string(d.parent().external_id(cfg.start)) +
                       " is not an interior vertex");
  if (cfg.walks < 1) throw InvalidInput("need at least one walk");
  if (cfg.k_max < 1 || cfg.k_max > kMaxWalkMoment)
    throw InvalidInput("walk moment order must be in [1, " + std::to_string(kMaxWalkMoment) + "]");

  const Sampler sampler(d);
  const auto reg = regularity(d);
  const double alpha = reg.is_regular ? reg.alpha : 0.0;

  const std::uint64_t chunks = (cfg.walks + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(chunks);
  std::vector<char> done(chunks, 0);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> total_steps{0};

  const auto worker = [&] {
    for (;;) {
      if (total_steps.load() > cfg.max_steps) return;
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::uint64_t first = c * kChunk;
      results[c] = run_chunk(sampler, cfg, first, std::min(cfg.walks, first + kChunk), alpha);
      done[c] = 1;
      total_steps += results[c].steps;
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : default_thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Merge chunks in index order, keeping the longest prefix within the cap.
  ExitStats stats;
  stats.start = cfg.start;
  stats.k_max = cfg.k_max;
  std::vector<long double> sums(static_cast<std::size_t>(2 * cfg.k_max + 1), 0.0L);
  double gap = 0.0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const auto& r = results[c];
    if (!done[c] || r.hit_cap || stats.steps + r.steps > cfg.max_steps) {
      stats.truncated = true;
      break;
    }
    for (std::size_t p = 0; p < sums.size(); ++p) sums[p] += r.power_sums[p];
    if (stats.eta_histogram.size() < r.histogram.size())
      stats.eta_histogram.resize(r.histogram.size(), 0);
    for (std::size_t l = 0; l < r.histogram.size(); ++l) stats.eta_histogram[l] += r.histogram[l];
    stats.walks_run += r.walks;
    stats.steps += r.steps;
    gap = std::max(gap, r.bridge_gap);
  }
  stats.regular_bridge_gap = reg.is_regular ? gap : -1.0;

  stats.moments = Vector::Zero(cfg.k_max + 1);
  stats.standard_errors = Vector::Zero(cfg.k_max + 1);
  const auto n = static_cast<long double>(stats.walks_run);
  if (stats.walks_run == 0) return stats;
  for (int k = 0; k <= cfg.k_max; ++k) {
    const long double mean = sums[static_cast<std::size_t>(k)] / n;
    const long double second = sums[static_cast<std::size_t>(2 * k)] / n;
    long double var = stats.walks_run > 1 ? (second - mean * mean) * n / (n - 1) : 0.0L;
    if (var < 0) var = 0;
    stats.moments[k] = static_cast<double>(mean);
    stats.standard_errors[k] = static_cast<double>(std::sqrt(var / n));
  }
  return stats;
}

Vector compare_exact(const Domain& d, const ExitStats& stats, const HierarchySolution& h) {
  const Index i = d.interior_position(stats.start);
  if (i < 0) throw InvalidInput("statistics start vertex is not interior to this domain");
  if (h.k_max < stats.k_max)
    throw InvalidInput("hierarchy order " + std::to_string(h.k_max) +
                       " is below the simulated order " + std::to_string(stats.k_max));
  if (h.f.empty() || h.f[0].size() != d.interior_size())
    throw InvalidInput("hierarchy does not belong to this domain");
  Vector z = Vector::Zero(stats.k_max + 1);
  for (int k = 1; k <= stats.k_max; ++k) {
    const double diff = stats.moments[k] - h.f[static_cast<std::size_t>(k)][i];
    const double se = stats.standard_errors[k];
    if (se > 0.0) {
      z[k] = diff / se;
    } else if (diff != 0.0) {
      // Zero variance: only exact agreement up to rounding counts as a match.
      const double scale = std::abs(h.f[static_cast<std::size_t>(k)][i]);
      z[k] = std::abs(diff) <= 1e-12 * scale ? 0.0
                                              : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
  }
  return z;
}

} // namespace spectralwalk
