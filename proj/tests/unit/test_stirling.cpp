#include "../fixtures.hpp"
#include "spectralwalk/poisson.hpp"
#include "spectralwalk/stirling.hpp"

#include <doctest.h>
#include <gmpxx.h>

using namespace spectralwalk;
using fixtures::rel;

namespace {

using i128 = __int128;

mpz_class binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// S(k,n) = (1/n!) sum_j (-1)^(n-j) C(n,j) j^k
mpz_class second_explicit(int k, int n) {
  mpz_class sum = 0;
  for (int j = 0; j <= n; ++j) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(k));
    sum += ((n - j) % 2 ? -1 : 1) * binom(n, j) * p;
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  return sum / fact;
}

// s(k,n) = sum_m (-1)^m C(k-1+m, k-n+m) C(2k-n, k-n-m) S(k-n+m, m)
mpz_class first_schlaefli(int k, int n) {
  mpz_class sum = 0;
  for (int m = 0; m <= k - n; ++m)
    sum += (m % 2 ? -1 : 1) * binom(k - 1 + m, k - n + m) * binom(2 * k - n, k - n - m) *
           second_explicit(k - n + m, m);
  return sum;
}

mpz_class big(std::int64_t v) { return mpz_class(std::to_string(v)); }

} // namespace

TEST_CASE("recurrence tables match the explicit formulas exactly") {
  const auto& t = StirlingTable::instance();
  for (int k = 0; k <= kMaxOrder; ++k) {
    for (int n = 0; n <= kMaxOrder; ++n) {
      INFO("k=" << k << " n=" << n);
      CHECK(big(t.second(k, n)) == (n <= k ? second_explicit(k, n) : mpz_class(0)));
      if (n >= 1 && n <= k) CHECK(big(t.first_signed(k, n)) == first_schlaefli(k, n));
    }
  }
}

TEST_CASE("frozen Stirling values") {
  CHECK(stirling_second(20, 10) == 5917584964655LL);
  CHECK(stirling_first_signed(20, 10) == 381922055502195LL);
  CHECK(stirling_first_signed(20, 1) == -121645100408832000LL);
  CHECK(stirling_second(8, 3) == 966);
  CHECK(stirling_first_signed(8, 3) == -13132);
  CHECK(stirling_first_signed(3, 2) == -3);
  CHECK_THROWS_AS(stirling_second(21, 3), InvalidInput);
  CHECK_THROWS_AS(stirling_second(3, 0), InvalidInput);
  CHECK_THROWS_AS(StirlingTable::instance().second(21, 0), std::out_of_range);
}

TEST_CASE("the two kinds are mutually inverse") {
  const auto& t = StirlingTable::instance();
  for (int k = 0; k <= kMaxOrder; ++k)
    for (int j = 0; j <= kMaxOrder; ++j) {
      i128 sum = 0;
      for (int n = 0; n <= kMaxOrder; ++n)
        sum += static_cast<i128>(t.second(k, n)) * static_cast<i128>(t.first_signed(n, j));
      CHECK(sum == (k == j ? 1 : 0));
    }
}

TEST_CASE("geometric exit moments: closed form against the series") {
  CHECK(pk_closed(0.5, 2) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(pk_closed(0.7, 0) == 1.0);
  for (double x : {0.3, 0.5, 1.0, 1.5}) {
    for (int k = 0; k <= 8; ++k) {
      long double sum = 0.0L, term = 0.0L;
      for (int l = 1; l < 100000; ++l) {
        term = std::pow(static_cast<long double>(l), k) * std::pow(1.0L - x, l - 1);
        sum += term;
        if (l > 50 && std::abs(term) < 1e-30L * std::abs(sum)) break;
      }
      const double series = static_cast<double>(x * sum);
      INFO("x=" << x << " k=" << k);
      CHECK(rel(pk_closed(x, k), series) < 1e-8);
    }
  }
  CHECK_THROWS_AS(pk_closed(2.0, 1), InvalidInput);
  CHECK_THROWS_AS(pk_closed(0.0, 1), InvalidInput);
}

TEST_CASE("duality on the fixtures") {
  const Vector A2 = (Vector(4) << 2, 2, 4, 12).finished();
  const Vector A1 = mspec_from_pspec(A2, 2.0, 3);
  CHECK(A1[2] == 3.0);
  CHECK(A1[3] == 6.5);
  const Vector back = pspec_from_mspec(A1, 2.0, 3);
  CHECK((back - A2).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(mspec_from_pspec(A2, 2.0, 4), InvalidInput);
  CHECK_THROWS_AS(mspec_from_pspec(A2, -1.0, 3), InvalidInput);
}

TEST_CASE("closed-form regular moments agree with the f hierarchy") {
  for (const auto& d : {fixtures::fixture_b(), fixtures::lattice_box(5),
                        make_domain(fixtures::share(fixtures::random_regular(build_cycle(10), 3.0, 2)),
                                    fixtures::range(0, 6))}) {
    const InteriorOperator op(d);
    const auto closed = regular_moments_closed(op, 8);
    const auto h = solve_hierarchies(op, 8);
    for (int k = 0; k <= 8; ++k) {
      const auto K = static_cast<std::size_t>(k);
      CHECK((closed[K] - h.f[K]).cwiseAbs().maxCoeff() <= 1e-10 * h.f[K].cwiseAbs().maxCoeff());
    }
  }
  CHECK_THROWS_AS(regular_moments_closed(InteriorOperator(fixtures::weighted_domain()), 3), InvalidInput);
}

TEST_CASE("duality holds on a weighted regular domain") {
  const auto g = fixtures::share(fixtures::random_regular(build_regular_tree(3, 3), 2.0, 8));
  const auto d = make_domain(g, fixtures::range(0, 9));
  const auto t = moment_table(InteriorOperator(d), 8);
  REQUIRE(t.alpha.has_value());
  const Vector a1 = mspec_from_pspec(t.A2, *t.alpha, 8);
  const Vector a2 = pspec_from_mspec(t.A1, *t.alpha, 8);
  for (int k = 0; k <= 8; ++k) {
    CHECK(rel(a1[k], t.A1[k]) < 1e-9);
    CHECK(rel(a2[k], t.A2[k]) < 1e-9);
  }
}
