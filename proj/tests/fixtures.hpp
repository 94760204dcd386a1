#ifndef SPECTRALWALK_TESTS_FIXTURES_HPP
#define SPECTRALWALK_TESTS_FIXTURES_HPP

#include "spectralwalk/builders.hpp"
#include "spectralwalk/domain.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace spectralwalk;

inline std::shared_ptr<const GraphWithGeometry> share(GraphWithGeometry g) {
  return std::make_shared<const GraphWithGeometry>(std::move(g));
}

inline std::vector<Index> range(Index lo, Index hi) {
  std::vector<Index> v;
  for (Index i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Unit path 0..4, domain {1,2,3}: interior {2}, L = [2].
inline Domain fixture_a() { return make_domain(share(build_path(5)), range(1, 3)); }

// Unit path 0..5, domain {1,2,3,4}: interior {2,3}, L = [[2,-1],[-1,2]].
inline Domain fixture_b() { return make_domain(share(build_path(6)), range(1, 4)); }

// Unit path 0..n-1 with the two end vertices outside the domain.
inline Domain path_domain(Index n) { return make_domain(share(build_path(n)), range(1, n - 2)); }

// Weighted path 0..6: conductances (1,2,1,3,1,2) on consecutive edges,
// W_V = (1,2,1,3,1,2,1), W_E(x,y) = c / W_V(x). Domain {1..5}, interior
// {2,3,4} with w_V = (3, 4/3, 4): not weight regular.
inline std::shared_ptr<const GraphWithGeometry> weighted_path() {
  const std::vector<double> c{1, 2, 1, 3, 1, 2};
  const std::vector<double> wv{1, 2, 1, 3, 1, 2, 1};
  GraphSpec s;
  for (int i = 0; i < 7; ++i) s.vertices.push_back({i, wv[i], {}});
  for (int i = 0; i < 6; ++i) {
    s.edges.push_back({i, i + 1, c[i] / wv[i]});
    s.edges.push_back({i + 1, i, c[i] / wv[i + 1]});
  }
  return share(GraphWithGeometry(s));
}
inline Domain weighted_domain() { return make_domain(weighted_path(), range(1, 5)); }

// side x side box of vertices inside a (side+2)^2 unit lattice.
inline Domain lattice_box(int side) {
  auto g = share(build_lattice({2, {0, 0}, {side + 1, side + 1}, 1.0}));
  return make_box_domain(g, {1.0, 1.0}, {double(side), double(side)});
}

// Comb: interior chain 0..n-1 with weak coupling eps, interior vertex i tied
// to its own boundary vertex n+i with conductance ratio^i, and every
// boundary vertex tied to a ground vertex 2n outside the domain. The
// starred spectrum has n points close to 1, ratio, ..., ratio^(n-1) with
// comparable masses. `jitter` perturbs the conductances reproducibly.
inline Domain comb(int n, double ratio, double eps, unsigned jitter_seed = 0) {
  std::mt19937_64 rng(jitter_seed);
  std::uniform_real_distribution<double> u(0.9, 1.1);
  const auto j = [&] { return jitter_seed ? u(rng) : 1.0; };
  GraphSpec s;
  s.mode = GraphSpec::Mode::Symmetrize;
  for (int i = 0; i <= 2 * n; ++i) s.vertices.push_back({i, 1.0, {}});
  for (int i = 0; i + 1 < n; ++i) s.edges.push_back({i, i + 1, eps * j()});
  for (int i = 0; i < n; ++i) {
    s.edges.push_back({i, n + i, std::pow(ratio, i) * j()});
    s.edges.push_back({n + i, 2 * n, 1.0});
  }
  return make_domain(share(GraphWithGeometry(s)), range(0, 2 * n - 1));
}

// Random alpha-regular reweighting with conductances in [0.5, 2].
inline GraphWithGeometry random_regular(const GraphWithGeometry& g, double alpha, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> table;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  table.assign(n * n, 0.0);
  for (const auto& e : g.oriented_edges()) {
    const double c = u(rng);
    table[static_cast<std::size_t>(e.tail) * n + static_cast<std::size_t>(e.head)] = c;
    table[static_cast<std::size_t>(e.head) * n + static_cast<std::size_t>(e.tail)] = c;
  }
  return regular_reweighting(g, alpha, [table, n](Index x, Index y) {
    return table[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)];
  });
}

// Relative error with an absolute floor.
inline double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace fixtures

#endif // SPECTRALWALK_TESTS_FIXTURES_HPP
