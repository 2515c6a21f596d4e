#include "doctest.h"

#include <chrono>
#include <cmath>

#include "fockpsi/errors.hpp"
#include "fockpsi/moments.hpp"
#include "fockpsi/verify.hpp"
#include "oracles.hpp"

using namespace fockpsi;

TEST_CASE("linear weight moments are factorials") {
  const auto t0 = std::chrono::steady_clock::now();
  const MomentTable m = compute_moments(linear_weight(), 25);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
  long double fact = 1.0L;
  for (int r = 0; r <= 25; ++r) {
    if (r > 0) fact *= r;
    CHECK(std::abs(m.c(r) - static_cast<double>(fact)) / static_cast<double>(fact) <= 1e-10);
  }
  CHECK(m.c(0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("linear-quadratic c_0 against completed-square closed form") {
  const MomentTable m = compute_moments(linear_quadratic_weight(), 0);
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double exact = std::sqrt(pi) / 2.0L * std::exp(0.25L) * oracle::erfc_series(0.5L);
  CHECK(std::abs(m.c(0) - static_cast<double>(exact)) <= 1e-10);
  CHECK(std::abs(m.c(0) - std::sqrt(pi) / 2.0 * std::exp(0.25) * std::erfc(0.5)) <= 1e-14);
}

TEST_CASE("linear-quadratic moments against long-double Simpson") {
  const auto ref = oracle::linear_quadratic_moments(30);
  const MomentTable m = compute_moments(linear_quadratic_weight(), 30);
  for (int r = 0; r <= 30; ++r)
    CHECK(std::abs(m.c(r) - static_cast<double>(ref[static_cast<std::size_t>(r)])) /
              static_cast<double>(ref[static_cast<std::size_t>(r)]) <=
          1e-11);
}

TEST_CASE("tables are positive, log-convex and within the error budget") {
  for (const auto& w : {linear_weight(), linear_weight(0.5), linear_quadratic_weight(),
                        polynomial_weight({0.0, 0.5, 0.0, 0.2})}) {
    MomentOptions o;
    const MomentTable m = compute_moments(w, 64, o);
    CHECK_NOTHROW(m.validate());
    for (int r = 0; r <= m.r_max(); ++r) {
      CHECK(m.c(r) > 0.0);
      CHECK(m.err(r) <= o.tol * std::max(1.0, m.c(r)));
      if (r >= 1 && r < m.r_max()) {
        CHECK(m.c(r) * m.c(r) <= m.c(r - 1) * m.c(r + 1) * (1.0 + 1e-10));
        CHECK(m.c(r + 1) / m.c(r) >= m.c(r) / m.c(r - 1) * (1.0 - 1e-10));
      }
    }
  }
}

TEST_CASE("scaled linear weight: c_r = r! / a^(r+1)") {
  const double a = 2.5;
  const MomentTable m = compute_moments(linear_weight(a), 20);
  double expect = 1.0 / a;
  for (int r = 0; r <= 20; ++r) {
    if (r > 0) expect *= r / a;
    CHECK(m.c(r) == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("validate rejects tables that break positivity or log-convexity") {
  CHECK_THROWS_AS(MomentTable("x", {1.0, -1.0, 2.0}, {0, 0, 0}).validate(), InputError);
  CHECK_THROWS_AS(MomentTable("x", {1.0, 5.0, 2.0}, {0, 0, 0}).validate(), InputError);
  CHECK_NOTHROW(MomentTable("x", {1.0, 1.0, 2.0}, {0, 0, 0}).validate());
}

TEST_CASE("index errors") {
  const MomentTable m = compute_moments(linear_weight(), 4);
  CHECK_THROWS_AS(m.c(5), IndexOutOfRange);
  CHECK_THROWS_AS(m.c(-1), IndexOutOfRange);
  CHECK_THROWS_AS(monomial_norm_sq(m, MultiIndex({3, 1}), 2), IndexOutOfRange);
  CHECK_THROWS_AS(compute_moments(linear_weight(), -1), InputError);
}

TEST_CASE("weights without enough decay are rejected") {
  const WeightFunction slow("log", [](double s) { return 1.5 * std::log1p(s); },
                            [](double s) { return 1.5 / (1.0 + s); });
  CHECK_THROWS_AS(compute_moments(slow, 3), Error);
}

TEST_CASE("monomial norms") {
  const MomentTable lin = compute_moments(linear_weight(), 12);
  double fact = 1.0;
  for (int m = 0; m <= 10; ++m) {
    if (m > 0) fact *= m;
    CHECK(monomial_norm_sq(lin, MultiIndex({m}), 1) == doctest::Approx(fact).epsilon(1e-12));
  }
  CHECK(monomial_norm_sq(lin, MultiIndex({0, 0}), 2) == doctest::Approx(lin.c(1)));
  for (int n = 1; n <= 4; ++n)
    CHECK(monomial_norm_sq(lin, MultiIndex::zero(n), n) == doctest::Approx(lin.c(n - 1)));
  // c_k = k! reduces the formula to (n-1)! alpha!
  CHECK(monomial_norm_sq(lin, MultiIndex({2, 3}), 2) == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(monomial_norm_sq(lin, MultiIndex({2, 3, 1}), 3) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("norm formula matches direct radial quadrature") {
  for (const auto& w : {linear_weight(), linear_quadratic_weight()}) {
    const MomentTable m = compute_moments(w, 16);
    for (int a = 0; a <= 6; ++a) {
      const MultiIndex one({a});
      CHECK(std::abs(monomial_norm_sq_by_quadrature(w, one) / monomial_norm_sq(m, one, 1) - 1.0) <= 1e-8);
      for (int b = 0; b <= 6 - a; ++b) {
        const MultiIndex two({a, b});
        CHECK(std::abs(monomial_norm_sq_by_quadrature(w, two) / monomial_norm_sq(m, two, 2) - 1.0) <=
              1e-8);
      }
    }
  }
}
