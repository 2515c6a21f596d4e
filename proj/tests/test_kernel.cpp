#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include <Eigen/Eigenvalues>

#include "fockpsi/criteria.hpp"
#include "fockpsi/errors.hpp"
#include "fockpsi/kernel.hpp"
#include "oracles.hpp"

using namespace fockpsi;

namespace {

std::shared_ptr<const MomentTable> table(const WeightFunction& w, int r_max) {
  return std::make_shared<MomentTable>(compute_moments(w, r_max));
}

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("classical Fock kernel is the exponential") {
  const KernelEvaluator ev(table(linear_weight(), 64), 1);
  CHECK(std::abs(ev.g_eval(1.0, 0) - std::exp(1.0)) <= 1e-12);
  CHECK(std::abs(ev.kernel_eval(vec({1.0}), vec({1.0})) - std::exp(1.0)) <= 1e-12);
  CHECK(ev.kernel_norm_sq(vec({1.0})) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  const Complex t(0.7, -1.3);
  CHECK(std::abs(ev.g_eval(t, 0) - std::exp(t)) <= 1e-11 * std::abs(std::exp(t)));
  // K_p(z) = exp(z conj(p))
  const CVector p = vec({Complex(0.4, 0.9)}), z = vec({Complex(-1.2, 0.3)});
  CHECK(std::abs(ev.kernel_eval(p, z) - std::exp(z(0) * std::conj(p(0)))) <= 1e-11);
}

TEST_CASE("series at t = 0 and kernels centred at 0") {
  for (const auto& w : {linear_weight(), linear_quadratic_weight()}) {
    const auto m = table(w, 64);
    const KernelEvaluator ev1(m, 1);
    const auto s = ev1.g_series(0.0, 0);
    CHECK(s.value == Complex(1.0 / m->c(0)));
    CHECK(s.terms == 1);
    for (int n = 1; n <= 3; ++n) {
      const KernelEvaluator ev(m, n);
      const CVector zero = CVector::Zero(n);
      CVector z(n);
      for (int j = 0; j < n; ++j) z(j) = Complex(0.3 * j - 0.5, 0.7);
      CHECK(std::abs(ev.kernel_eval(zero, z) - 1.0 / m->c(n - 1)) <= 1e-15);
      CHECK(ev.kernel_norm_sq(zero) == doctest::Approx(1.0 / ev.c_n_minus_1()));
    }
  }
}

TEST_CASE("orthogonal arguments in C^2 give G'(0) / 1!") {
  const auto m = table(linear_weight(), 64);
  const KernelEvaluator ev(m, 2);
  const CVector p = vec({1.0, Complex(0, 1)}), z = vec({Complex(0, 1), 1.0});
  CHECK(std::abs(inner(z, p)) == 0.0);
  CHECK(std::abs(ev.kernel_eval(p, z) - 1.0 / m->c(1)) <= 1e-15);
  CHECK(std::abs(ev.kernel_eval(p, z) - 1.0) <= 1e-14);
}

TEST_CASE("linear-quadratic series against independent moments") {
  const auto ref = oracle::linear_quadratic_moments(160);
  const auto m = table(linear_quadratic_weight(), 160);
  const KernelEvaluator ev(m, 1, KernelOptions{1e-12, 150});
  const auto one = oracle::series(ref, 1.0L, 0);
  CHECK(std::abs(ev.g_eval(1.0, 0).real() / static_cast<double>(one.real()) - 1.0) <= 1e-12);
  // ||K_2||^2 = sum 4^r / c_r
  const auto four = oracle::series(ref, 4.0L, 0);
  CHECK(std::abs(ev.kernel_norm_sq(vec({2.0})) / static_cast<double>(four.real()) - 1.0) <= 1e-11);
  // derivative orders through the reindexed series
  for (int k = 1; k <= 3; ++k) {
    const std::complex<long double> t(0.6L, -0.8L);
    const auto expect = oracle::series(ref, t, k);
    const Complex got = ev.g_eval(Complex(0.6, -0.8), k);
    CHECK(std::abs(got - Complex(double(expect.real()), double(expect.imag()))) <=
          1e-11 * std::abs(got));
  }
}

TEST_CASE("tail bound covers the actual truncation error") {
  const KernelEvaluator ev(table(linear_weight(), 64), 1, KernelOptions{1e-6, 48});
  for (double t : {0.5, 2.0, 5.0}) {
    const auto s = ev.g_series(t, 0);
    CHECK(std::abs(s.value - std::exp(t)) <= s.tail_bound);
    CHECK(s.tail_bound <= 1e-6 * (1.0 + std::abs(s.value)));
  }
}

TEST_CASE("conjugate symmetry on seeded pairs") {
  for (const auto& w : {linear_weight(), linear_quadratic_weight()}) {
    const auto m = table(w, 160);
    for (int n = 1; n <= 2; ++n) {
      const KernelEvaluator ev(m, n, KernelOptions{1e-12, 150});
      const auto ps = sample_ball(n, 100, 2.0, 11);
      const auto zs = sample_ball(n, 100, 2.0, 12);
      for (int i = 0; i < 100; ++i)
        CHECK(std::abs(std::conj(ev.kernel_eval(ps[i], zs[i])) - ev.kernel_eval(zs[i], ps[i])) <= 1e-10);
    }
  }
}

TEST_CASE("Gram matrices of kernels are positive semidefinite") {
  for (const auto& w : {linear_weight(), linear_quadratic_weight()}) {
    const auto m = table(w, 160);
    for (int n = 1; n <= 3; ++n) {
      const KernelEvaluator ev(m, n, KernelOptions{1e-12, 150});
      const auto pts = sample_ball(n, 12, 1.5, 99 + n);
      CMatrix gram(12, 12);
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) gram(i, j) = ev.kernel_eval(pts[j], pts[i]);  // <K_j, K_i>
      CHECK((gram - gram.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * gram.cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
      CHECK(es.eigenvalues().minCoeff() >= -1e-9 * gram.trace().real());
    }
  }
}

TEST_CASE("kernel polynomial reproduces the series inside its degree") {
  const auto m = table(linear_quadratic_weight(), 64);
  const KernelEvaluator ev(m, 2);
  const CVector q = vec({Complex(0.2, -0.1), Complex(0.05, 0.3)});
  const CVector z = vec({Complex(-0.3, 0.2), Complex(0.1, 0.1)});
  const Polynomial k = ev.kernel_polynomial(q, 30);
  CHECK(std::abs(k(z) - ev.kernel_eval(q, z)) <= 1e-11);
}

TEST_CASE("evaluator errors") {
  const auto m = table(linear_weight(), 40);
  CHECK_THROWS_AS(KernelEvaluator(m, 1), IndexOutOfRange);  // needs 48 terms
  const KernelEvaluator ev(m, 1, KernelOptions{1e-12, 30});
  CHECK_THROWS_AS(ev.g_eval(40.0, 0), TruncationBudgetExceeded);
  CHECK_THROWS_AS(ev.g_eval(1.0, -1), InputError);
  CHECK_THROWS_AS(ev.kernel_eval(vec({1.0, 2.0}), vec({1.0})), DimensionMismatch);
  CHECK_THROWS_AS(KernelEvaluator(m, 0, KernelOptions{1e-12, 10}), InputError);
}
