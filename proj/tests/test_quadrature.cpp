#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fockpsi/errors.hpp"
#include "fockpsi/quadrature.hpp"

using namespace fockpsi;

TEST_CASE("Kronrod 15 integrates polynomials through degree 22 exactly") {
  for (int k : {0, 1, 7, 15, 22}) {
    const auto est = quad::gauss_kronrod15([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    CHECK(est.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
  // Degree 23 is beyond the rule, so the estimate must differ measurably.
  const auto est = quad::gauss_kronrod15([](double x) { return std::pow(x, 46); }, 0.0, 1.0);
  CHECK(std::abs(est.value - 1.0 / 47) > 1e-12);
}

TEST_CASE("adaptive integration reaches relative tolerance") {
  const auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));

  const auto s = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(s.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(s.abs_error <= 1e-11);
  CHECK(s.panels > 8);
}

TEST_CASE("breakpoints are honoured and results are reproducible") {
  quad::Options o;
  o.breakpoints = {0.3};
  auto f = [](double x) { return std::abs(x - 0.3); };
  const auto a = quad::integrate(f, 0.0, 1.0, o);
  const auto b = quad::integrate(f, 0.0, 1.0, o);
  CHECK(a.value == doctest::Approx(0.045 + 0.245).epsilon(1e-14));
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("evaluation budget is enforced") {
  quad::Options o;
  o.max_evaluations = 200;
  o.rel_tol = 1e-15;
  CHECK_THROWS_AS(quad::integrate([](double x) { return std::sin(1.0 / (x + 1e-4)); }, 0.0, 1.0, o),
                  QuadratureBudgetExceeded);
}
