#include "doctest.h"

#include <cmath>
#include <limits>

#include "fockpsi/errors.hpp"
#include "fockpsi/weights.hpp"

using namespace fockpsi;

namespace {
std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return g;
}
}  // namespace

TEST_CASE("linear weight is admissible with zero smoothness ratio") {
  const auto rep = check_admissible(linear_weight(), log_grid(0.1, 100.0, 40), 0.0);
  CHECK(rep.growth_ok);
  CHECK(rep.smoothness_ok);
  CHECK(rep.witness.max_tail_ratio == 0.0);
  CHECK(rep.l_used == 0.0);
}

TEST_CASE("decreasing weight fails growth") {
  const WeightFunction w("neg", [](double y) { return -y; }, [](double) { return -1.0; },
                         [](double) { return 0.0; }, [](double) { return 0.0; });
  const auto rep = check_admissible(w, log_grid(0.1, 100.0, 20), 0.0);
  CHECK_FALSE(rep.growth_ok);
  CHECK(rep.witness.min_d1 == doctest::Approx(-1.0));
}

TEST_CASE("linear-quadratic weight: hand-derived derivatives and smoothness") {
  const WeightFunction w = linear_quadratic_weight();
  for (double y : {0.0, 0.5, 3.0, 40.0}) {
    CHECK(w.d1(y) == doctest::Approx(1.0 + 2.0 * y));
    CHECK(w.d2(y) == doctest::Approx(2.0));
    CHECK(w.d3(y) == doctest::Approx(0.0));
  }
  const auto rep = check_admissible(w, default_weight_grid(), 0.0);
  CHECK(rep.growth_ok);
  CHECK(rep.smoothness_ok);
  // phi = y + 2y^2, phi'' = 4, ratio = 4 sqrt(y) / (1 + 4y) -> 0
  const double y = rep.witness.tail_ratio_y;
  CHECK(rep.witness.max_tail_ratio == doctest::Approx(4.0 * std::sqrt(y) / (1.0 + 4.0 * y)));
}

TEST_CASE("finite differences agree with closed forms for built-in weights") {
  for (const auto& w : {linear_weight(), linear_weight(2.5), linear_quadratic_weight(),
                        polynomial_weight({0.0, 1.0, 0.5, 0.1})}) {
    CHECK(finite_difference_discrepancy(w, default_weight_grid()) <= 1e-6);
  }
}

TEST_CASE("derivatives without closed form fall back to central differences") {
  const WeightFunction w("fd-only", [](double y) { return y + y * y; });
  CHECK_FALSE(w.has_closed_form(1));
  for (double y : {0.01, 1.0, 10.0, 500.0}) {
    CHECK(w.d1(y) == doctest::Approx(1.0 + 2.0 * y).epsilon(1e-6));
    CHECK(w.d2(y) == doctest::Approx(2.0).epsilon(1e-3));
  }
  // nested differences leave noise in the third derivative
  AdmissibilityOptions opts;
  opts.tol = 1e-3;
  CHECK(check_admissible(w, default_weight_grid(), 0.0, opts).growth_ok);
}

TEST_CASE("loosening tol never turns a passing verdict into a failing one") {
  const WeightFunction w("flat-ish", [](double y) { return y - 1e-10 * y * y; },
                         [](double y) { return 1.0 - 2e-10 * y; }, [](double) { return -2e-10; },
                         [](double) { return 0.0; });
  const auto grid = log_grid(0.1, 10.0, 16);
  bool seen_pass = false;
  for (double tol : {1e-12, 1e-11, 1e-10, 1e-9, 1e-6}) {
    AdmissibilityOptions o;
    o.tol = tol;
    const bool ok = check_admissible(w, grid, 0.0, o).growth_ok;
    if (seen_pass) CHECK(ok);
    seen_pass = seen_pass || ok;
  }
  CHECK(seen_pass);
}

TEST_CASE("admissibility preconditions") {
  const auto grid = default_weight_grid();
  CHECK_THROWS_AS(check_admissible(linear_weight(), grid, 0.5), InputError);
  CHECK_THROWS_AS(check_admissible(linear_weight(), {}, 0.0), InputError);
  CHECK_THROWS_AS(check_admissible(linear_weight(), {2.0, 1.0}, 0.0), InputError);
  CHECK_THROWS_AS(check_admissible(linear_weight(), {0.0, 1.0}, 0.0), InputError);
  const WeightFunction bad("nan", [](double y) { return y > 5 ? std::nan("") : y; });
  CHECK_THROWS_AS(check_admissible(bad, grid, 0.0), NonFiniteValue);
  CHECK_THROWS_AS(linear_weight(0.0), InputError);
}
