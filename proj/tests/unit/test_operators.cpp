#include "../fixtures.hpp"
#include "spectralwalk/operators.hpp"

#include <doctest.h>

#include <random>

using namespace spectralwalk;

TEST_CASE("interior Laplacian of the fixtures") {
  const auto a = interior_laplacian(fixtures::fixture_a());
  CHECK(a.laplacian() == (Matrix(1, 1) << 2).finished());
  const auto b = interior_laplacian(fixtures::fixture_b());
  CHECK(b.laplacian() == (Matrix(2, 2) << 2, -1, -1, 2).finished());
  const auto box = interior_laplacian(fixtures::lattice_box(3));
  CHECK(box.laplacian() == (Matrix(1, 1) << 4).finished());
  CHECK_THROWS_AS(interior_laplacian(make_domain(fixtures::share(build_cycle(5)), fixtures::range(0, 4))),
                  EmptyBoundary);
}

TEST_CASE("killed transition: factorization, self-adjointness, spectral radius") {
  std::vector<Domain> domains{fixtures::fixture_b(), fixtures::weighted_domain(), fixtures::lattice_box(5),
                              fixtures::comb(4, 1.5, 0.1, 3)};
  for (const auto& d : domains) {
    const auto op = interior_laplacian(d);
    const Matrix T = killed_transition(d);
    const Vector w = op.aux_weights();
    const Matrix rebuilt = w.asDiagonal() * (Matrix::Identity(T.rows(), T.rows()) - T);
    CHECK((rebuilt - op.laplacian()).cwiseAbs().maxCoeff() <= 1e-15 * w.maxCoeff());

    // <T u, v>_w == <u, T v>_w with the stationary weight W_V w_V
    const Vector pi = op.vertex_weights().cwiseProduct(w);
    const Matrix M = pi.asDiagonal() * T;
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * M.cwiseAbs().maxCoeff());

    const double radius = T.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(radius < 1.0);
  }
}

TEST_CASE("Green operator matches the Neumann series") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& d : {fixtures::fixture_b(), fixtures::weighted_domain(), fixtures::lattice_box(4)}) {
    const auto op = interior_laplacian(d);
    const Matrix T = killed_transition(d);
    Vector f(op.size());
    for (Index i = 0; i < f.size(); ++i) f[i] = u(rng);
    const Vector green = green_apply(op, f);
    Vector term = f, sum = f;
    for (int n = 0; n < 5000 && term.cwiseAbs().maxCoeff() > 1e-18; ++n) {
      term = T * term;
      sum += term;
    }
    CHECK((green - sum).cwiseAbs().maxCoeff() <= 1e-10 * (sum.cwiseAbs().maxCoeff() + 1.0));
  }
}

TEST_CASE("solve and condition estimate") {
  const auto op = interior_laplacian(fixtures::fixture_b());
  const Vector x = op.solve(Vector::Ones(2));
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(op.rcond() == doctest::Approx(1.0 / 3.0));
  CHECK(op.inner(Vector::Ones(2), x) == doctest::Approx(2.0));
  CHECK_THROWS_AS(op.solve(Vector::Ones(3)), InvalidInput);
}

TEST_CASE("exit index distribution") {
  const auto a = exit_index_distribution(fixtures::fixture_a(), 2, 3);
  CHECK(a == std::vector<double>{1.0, 0.0, 0.0});

  // fixture B: from vertex 2, exit each step with probability 1/2
  const auto b = exit_index_distribution(fixtures::fixture_b(), 2, 6);
  for (int l = 1; l <= 6; ++l) CHECK(b[static_cast<std::size_t>(l - 1)] == doctest::Approx(std::ldexp(1.0, -l)));

  const auto d = fixtures::lattice_box(5);
  const auto centre = d.parent().index_of(3 * 7 + 3);
  const auto p = exit_index_distribution(d, centre, 400);
  double total = 0.0;
  for (double v : p) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(exit_index_distribution(d, d.boundary().front(), 3), InvalidInput);
}
