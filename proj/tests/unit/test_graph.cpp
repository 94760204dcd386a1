#include "../fixtures.hpp"
#include "spectralwalk/graph.hpp"

#include <doctest.h>

#include <random>

using namespace spectralwalk;
using fixtures::share;

namespace {

GraphSpec two_vertex(double w01, double w10) {
  GraphSpec s;
  s.vertices = {{0, 1.0, {}}, {1, 1.0, {}}};
  s.edges = {{0, 1, w01}, {1, 0, w10}};
  return s;
}

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
  for (const auto& v : vs)
    if (v.kind == k) return true;
  return false;
}

} // namespace

TEST_CASE("reversibility violation is reported once per pair") {
  const auto vs = validate_weighting(two_vertex(2.0, 1.0));
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].kind == Violation::Kind::Reversibility);
  CHECK(vs[0].discrepancy > 0.0);
  CHECK(vs[0].message().find("0") != std::string::npos);
  CHECK_THROWS_AS(GraphWithGeometry(two_vertex(2.0, 1.0)), ValidationError);
}

TEST_CASE("consistent weighting validates cleanly") {
  CHECK(validate_weighting(two_vertex(1.0, 1.0)).empty());
  // W_V = (1, 2): W_E(0,1) * 1 == W_E(1,0) * 2
  GraphSpec s = two_vertex(2.0, 1.0);
  s.vertices[1].weight = 2.0;
  CHECK(validate_weighting(s).empty());
}

TEST_CASE("structural violations") {
  GraphSpec s = two_vertex(1.0, 1.0);
  s.edges.push_back({0, 0, 1.0});
  CHECK(has_kind(validate_weighting(s), Violation::Kind::SelfEdge));

  s = two_vertex(1.0, 1.0);
  s.edges.push_back({0, 7, 1.0});
  CHECK(has_kind(validate_weighting(s), Violation::Kind::UnknownVertex));

  s = two_vertex(1.0, 1.0);
  s.edges.pop_back();
  CHECK(has_kind(validate_weighting(s), Violation::Kind::MissingReverseEdge));
  CHECK(validate_weighting(symmetrized(s)).empty());

  s = two_vertex(-1.0, -1.0);
  CHECK(has_kind(validate_weighting(s), Violation::Kind::NonPositiveEdgeWeight));

  s = two_vertex(1.0, 1.0);
  s.vertices[0].weight = 0.0;
  CHECK(has_kind(validate_weighting(s), Violation::Kind::NonPositiveVertexWeight));

  s = two_vertex(1.0, 1.0);
  s.vertices.push_back({5, 1.0, {}});
  CHECK(has_kind(validate_weighting(s), Violation::Kind::Disconnected));

  s = two_vertex(1.0, 1.0);
  s.orientation = {{0, 1}, {1, 0}};
  CHECK(has_kind(validate_weighting(s), Violation::Kind::BadOrientation));

  CHECK(has_kind(validate_weighting(GraphSpec{}), Violation::Kind::Empty));
}

TEST_CASE("symmetrize fills reverse edges through reversibility") {
  GraphSpec s;
  s.mode = GraphSpec::Mode::Symmetrize;
  s.vertices = {{0, 1.0, {}}, {1, 4.0, {}}};
  s.edges = {{0, 1, 2.0}};
  const GraphWithGeometry g(s);
  CHECK(g.edge_weight(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.aux_weight(0) == 2.0);
  CHECK(g.aux_weight(1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("auxiliary weight on the unit lattice") {
  const auto g = build_lattice({2, {0, 0}, {4, 4}, 1.0});
  const Index centre = g.index_of(2 * 5 + 2);
  CHECK(auxiliary_weight(g, centre) == 4.0);
  CHECK(auxiliary_weight(g, g.index_of(0)) == 2.0);
}

TEST_CASE("transition probabilities sum to one and satisfy detailed balance") {
  const auto g = fixtures::weighted_path();
  for (Index x = 0; x < g->num_vertices(); ++x) {
    double sum = 0.0;
    for (const auto& nb : g->neighbors(x)) {
      sum += transition_probability(*g, x, nb.vertex);
      // pi(x) = W_V w_V is stationary and reversible
      const double lhs = g->vertex_weight(x) * g->aux_weight(x) * transition_probability(*g, x, nb.vertex);
      const double rhs = g->vertex_weight(nb.vertex) * g->aux_weight(nb.vertex) *
                         transition_probability(*g, nb.vertex, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("inner products") {
  const auto g = fixtures::weighted_path();
  Vector f = Vector::Ones(7);
  Vector h = Vector::Zero(7);
  h[3] = 1.0;
  CHECK(vertex_inner_product(*g, f, h) == 3.0);
  CHECK(vertex_inner_product(*g, f, f) == 11.0);

  // orthogonal eigenvectors of fixture B's 2x2 Laplacian, extended by zero
  const auto p = build_path(6);
  Vector u = Vector::Zero(6), v = Vector::Zero(6);
  u[2] = u[3] = 1.0;
  v[2] = 1.0;
  v[3] = -1.0;
  CHECK(vertex_inner_product(p, u, v) == 0.0);
}

TEST_CASE("coboundary adjoint and factorization of the Laplacian") {
  std::mt19937_64 rng(11);
  std::vector<GraphWithGeometry> graphs;
  graphs.push_back(*fixtures::weighted_path());
  graphs.push_back(build_lattice({2, {0, 0}, {3, 4}, 1.0}));
  graphs.push_back(fixtures::random_regular(build_cycle(9), 2.5, 3));
  graphs.push_back(build_point_cloud({(Matrix(4, 2) << 0, 0, 1, 0, 0, 1, 1.2, 1.1).finished(), 1.6}));
  for (const auto& g : graphs) {
    for (int trial = 0; trial < 20; ++trial) {
      const Vector f = random_vector(g.num_vertices(), rng);
      const Vector F = random_vector(g.num_edges(), rng);
      const double lhs = edge_inner_product(g, coboundary(g, f), F);
      const double rhs = vertex_inner_product(g, f, coboundary_adjoint(g, F));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));

      const Vector lf = laplacian(g, f);
      const Vector dd = coboundary_adjoint(g, coboundary(g, f));
      CHECK((lf - dd).cwiseAbs().maxCoeff() <= 1e-12 * (lf.cwiseAbs().maxCoeff() + 1.0));
      for (Index x = 0; x < g.num_vertices(); ++x)
        CHECK(std::abs(laplacian_apply(g, f, x) - lf[x]) <= 1e-14 * (std::abs(lf[x]) + 1.0));
    }
  }
}

TEST_CASE("orientation invariance of Laplacian and Dirichlet form") {
  std::mt19937_64 rng(5);
  const auto g = build_lattice({2, {0, 0}, {3, 3}, 1.0});
  std::bernoulli_distribution coin(0.5);
  std::vector<char> flips;
  for (Index e = 0; e < g.num_edges(); ++e) flips.push_back(coin(rng));
  std::size_t at = 0;
  const auto h = g.reoriented([&](const OrientedEdge&) { return flips[at++] != 0; });
  const Vector f = random_vector(g.num_vertices(), rng);
  const Vector k = random_vector(g.num_vertices(), rng);
  CHECK((laplacian(g, f) - laplacian(h, f)).cwiseAbs().maxCoeff() <= 1e-12);
  const double a = edge_inner_product(g, coboundary(g, f), coboundary(g, k));
  const double b = edge_inner_product(h, coboundary(h, f), coboundary(h, k));
  CHECK(std::abs(a - b) <= 1e-12 * (std::abs(a) + 1.0));
}

TEST_CASE("dense ids and external id round trip") {
  GraphSpec s;
  s.vertices = {{40, 1.0, {}}, {7, 1.0, {}}, {12, 1.0, {}}};
  s.edges = {{7, 12, 1.0}, {12, 7, 1.0}, {12, 40, 1.0}, {40, 12, 1.0}};
  const GraphWithGeometry g(s);
  CHECK(g.external_id(0) == 7);
  CHECK(g.external_id(2) == 40);
  CHECK(g.index_of(12) == 1);
  CHECK_FALSE(g.find(99).has_value());
  CHECK_THROWS_AS(g.index_of(99), InvalidInput);
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.edge_weight(0, 2) == 0.0);
}
