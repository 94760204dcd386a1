#include "../fixtures.hpp"

#include <doctest.h>

using namespace spectralwalk;
using fixtures::share;

TEST_CASE("interior and boundary classification") {
  const auto a = fixtures::fixture_a();
  CHECK(a.interior() == std::vector<Index>{2});
  CHECK(a.boundary() == std::vector<Index>{1, 3});
  CHECK(a.interior_position(2) == 0);
  CHECK(a.interior_position(1) == -1);
  CHECK(a.contains(3));
  CHECK_FALSE(a.contains(4));

  const auto box = fixtures::lattice_box(5);
  CHECK(box.vertices().size() == 25);
  CHECK(box.interior_size() == 9);
  CHECK(box.boundary().size() == 16);
}

TEST_CASE("every interior vertex keeps its whole neighbourhood") {
  const auto d = fixtures::lattice_box(4);
  for (auto x : d.interior())
    for (const auto& nb : d.parent().neighbors(x)) CHECK(d.contains(nb.vertex));
  for (auto x : d.boundary()) {
    bool leaves = false;
    for (const auto& nb : d.parent().neighbors(x)) leaves = leaves || !d.contains(nb.vertex);
    CHECK(leaves);
  }
}

TEST_CASE("domain construction errors") {
  const auto g = share(build_lattice({2, {0, 0}, {4, 4}, 1.0}));
  CHECK_THROWS_WITH_AS(make_domain(g, {12}), doctest::Contains("empty interior"), InvalidInput);
  CHECK_THROWS_WITH_AS(make_domain(g, {0, 24}), doctest::Contains("disconnected"), InvalidInput);
  CHECK_THROWS_AS(make_domain(g, {}), InvalidInput);
  CHECK_THROWS_AS(make_domain(g, {99}), InvalidInput);
  CHECK_THROWS_AS(make_domain_by_id(g, {-3}), InvalidInput);
}

TEST_CASE("closed domains are constructible but not invertible") {
  const auto g = share(build_cycle(6));
  const auto d = make_domain(g, fixtures::range(0, 5));
  CHECK_FALSE(d.has_boundary());
  CHECK_THROWS_AS(d.require_boundary(), EmptyBoundary);
}

TEST_CASE("weight regularity") {
  const auto b = regularity(fixtures::fixture_b());
  CHECK(b.is_regular);
  CHECK(b.alpha == 2.0);

  const auto box = regularity(fixtures::lattice_box(5));
  CHECK(box.is_regular);
  CHECK(box.alpha == 4.0);

  const auto w = regularity(fixtures::weighted_domain());
  CHECK_FALSE(w.is_regular);
  REQUIRE(w.per_vertex.size() == 3);
  CHECK(w.per_vertex[1].second == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("restriction, extension, volume") {
  const auto d = fixtures::weighted_domain();
  CHECK(d.volume() == 1.0 + 3.0 + 1.0);
  const Vector one = indicator(d);
  CHECK(one.sum() == 3.0);
  CHECK(d.restrict(one) == Vector::Ones(3));
  CHECK(d.extend(d.restrict(one)) == one);
  CHECK(d.interior_aux_weights()[0] == 3.0);
}
