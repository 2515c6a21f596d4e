#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "fockpsi/errors.hpp"
#include "fockpsi/linalg.hpp"
#include "fockpsi/operators.hpp"
#include "fockpsi/verify.hpp"

using namespace fockpsi;

namespace {

std::shared_ptr<const MomentTable> table(const WeightFunction& w, int r_max = 64) {
  return std::make_shared<MomentTable>(compute_moments(w, r_max));
}

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix rotation(double theta) {
  return mat2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
}

}  // namespace

TEST_CASE("apply: scaling, shift and multiplication") {
  const AffineMap scale = AffineMap::linear(CMatrix::Constant(1, 1, Complex(0.5, 0.5)));
  const Polynomial z3 = Polynomial::monomial(MultiIndex({3}));
  const Polynomial img = apply(WeightSymbol::constant(1.0), scale, z3).composed;
  CHECK(std::abs(img.coefficient(MultiIndex({3})) - std::pow(Complex(0.5, 0.5), 3)) < 1e-15);
  CHECK(img.terms().size() == 1);

  const Complex d(2.0, -1.0);
  const AffineMap shift(CMatrix::Identity(1, 1), vec({d}));
  const Polynomial sq = apply(WeightSymbol::constant(1.0), shift, Polynomial::monomial(MultiIndex({2}))).composed;
  CHECK(sq.coefficient(MultiIndex({2})) == Complex(1.0));
  CHECK(std::abs(sq.coefficient(MultiIndex({1})) - 2.0 * d) < 1e-15);
  CHECK(std::abs(sq.coefficient(MultiIndex({0})) - d * d) < 1e-15);

  Polynomial u(2);
  u.add_term(MultiIndex({1, 0}), 1.0);
  const Polynomial prod =
      apply(WeightSymbol::polynomial(u), AffineMap::identity(2), Polynomial::monomial(MultiIndex({0, 1}))).composed;
  CHECK(prod.coefficient(MultiIndex({1, 1})) == Complex(1.0));
  CHECK(prod.terms().size() == 1);
}

TEST_CASE("apply is linear in f and guards the degree") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  auto rnd = [&] { return Complex(g(rng), g(rng)); };
  const AffineMap gamma(mat2(rnd(), rnd(), rnd(), rnd()), vec({rnd(), rnd()}));
  Polynomial u(2), f(2), h(2);
  u.add_term(MultiIndex({0, 1}), rnd());
  u.add_term(MultiIndex({0, 0}), rnd());
  for (const auto& a : graded_indices(2, 3)) {
    f.add_term(a, rnd());
    h.add_term(a, rnd());
  }
  const Complex a = rnd(), b = rnd();
  const WeightSymbol w = WeightSymbol::polynomial(u);
  const Polynomial lhs = apply(w, gamma, f * a + h * b).composed;
  const Polynomial rhs = apply(w, gamma, f).composed * a + apply(w, gamma, h).composed * b;
  CHECK(lhs.max_coefficient_distance(rhs) <= 1e-12);
  CHECK_THROWS_AS(apply(w, gamma, f, 3), DegreeOverflow);
}

TEST_CASE("kernel-multiple symbols stay symbolic") {
  const auto m = table(linear_weight());
  const KernelEvaluator ev(m, 1);
  const WeightSymbol w = WeightSymbol::kernel_multiple(2.0, vec({0.5}));
  const AppliedImage img = apply(w, AffineMap::identity(1), Polynomial::monomial(MultiIndex({1})));
  CHECK(img.factor.kind() == WeightSymbol::Kind::KernelMultiple);
  const CVector z = vec({Complex(0.3, 0.4)});
  CHECK(std::abs(img(z, &ev) - 2.0 * std::exp(z(0) * 0.5) * z(0)) <= 1e-12);
  CHECK(std::abs(img.expand(&ev, 40)(z) - img(z, &ev)) <= 1e-12);
}

TEST_CASE("adjoint on kernels") {
  const auto m = table(linear_weight());
  const KernelEvaluator ev(m, 2);
  const CMatrix c = rotation(0.3);
  const CVector zero = CVector::Zero(2);
  auto k = adjoint_on_kernel(WeightSymbol::constant(1.0), AffineMap::linear(c), zero);
  CHECK(k.scalar == Complex(1.0));
  CHECK(k.point.norm() == 0.0);

  const CVector d = vec({1.0, Complex(0, 2)});
  k = adjoint_on_kernel(WeightSymbol::constant(Complex(0, 2)), AffineMap(c, d), zero);
  CHECK(k.scalar == Complex(0, -2));
  CHECK((k.point - d).norm() == 0.0);

  const CVector q = vec({0.3, Complex(0.1, -0.2)});
  const Complex alpha(0.5, 1.5);
  k = adjoint_on_kernel(WeightSymbol::kernel_multiple(alpha, q), AffineMap(c, d), q, &ev);
  CHECK(std::abs(k.scalar - std::conj(alpha * ev.kernel_norm_sq(q))) <= 1e-14);
  CHECK((k.point - (c * q + d)).norm() <= 1e-15);
}

TEST_CASE("truncated matrix of a scaling is diagonal") {
  const auto m = table(linear_weight());
  const KernelEvaluator ev(m, 1);
  const Complex c(0.6, -0.3);
  const auto t = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(CMatrix::Constant(1, 1, c)), ev, 5);
  REQUIRE(t.matrix.rows() == 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(t.matrix(i, j) - (i == j ? std::pow(c, i) : Complex{})) <= 1e-14);
  CHECK(t.guard == 0);
}

TEST_CASE("truncated matrix of a translation: binom(m,k) d^(m-k) sqrt(k!/m!)") {
  const auto m = table(linear_weight());
  const KernelEvaluator ev(m, 1);
  const Complex d(0.7, 0.2);
  const int N = 6;
  const auto t = truncated_matrix(WeightSymbol::constant(1.0), AffineMap(CMatrix::Identity(1, 1), vec({d})), ev, N);
  for (int k = 0; k <= N; ++k) {
    for (int col = 0; col <= N; ++col) {
      Complex expect = 0.0;
      if (k <= col)
        expect = binomial(col, k) * std::pow(d, col - k) * std::sqrt(factorial(k) / factorial(col));
      CHECK(std::abs(t.matrix(k, col) - expect) <= 1e-13);
    }
  }
  CHECK(t.guard == N / 2);
}

TEST_CASE("zero symbol gives the zero matrix") {
  const auto m = table(linear_quadratic_weight());
  const KernelEvaluator ev(m, 2);
  const auto t = truncated_matrix(WeightSymbol::zero(), AffineMap::linear(rotation(1.0)), ev, 4);
  CHECK(t.matrix.rows() == 15);
  CHECK(t.matrix.cwiseAbs().maxCoeff() == 0.0);
  CHECK(defect_self_adjoint(t) == 0.0);
  CHECK(defect_coisometry(t) == doctest::Approx(1.0));
}

TEST_CASE("degree-block structure when D = 0") {
  const auto m = table(linear_quadratic_weight());
  const KernelEvaluator ev(m, 2);
  Polynomial u(2);
  u.add_term(MultiIndex({0, 0}), 1.0);
  u.add_term(MultiIndex({1, 1}), Complex(0.2, 0.1));
  const auto t = truncated_matrix(WeightSymbol::polynomial(u), AffineMap::linear(mat2(0.3, 0.1, -0.2, 0.5)), ev, 6);
  CHECK(t.guard == 2);
  for (std::size_t b = 0; b < t.index.size(); ++b)
    for (std::size_t a = 0; a < t.index.size(); ++a) {
      const int db = t.index[b].degree(), da = t.index[a].degree();
      if (db < da || db > da + 2) CHECK(t.matrix(Eigen::Index(b), Eigen::Index(a)) == Complex{});
    }
}

TEST_CASE("defect norms on simple operators") {
  const auto m = table(linear_weight());
  {
    const KernelEvaluator ev(m, 1);
    const auto t = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(CMatrix::Constant(1, 1, Complex(0, 1))), ev, 6);
    CHECK(defect_self_adjoint(t) > 1.0);
  }
  const KernelEvaluator ev(m, 2);
  const auto rot = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(rotation(0.7)), ev, 8);
  CHECK(defect_coisometry(rot) <= 1e-8);
  CHECK(defect_isometry(rot) <= 1e-8);
  const auto half = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(0.5 * CMatrix::Identity(2, 2)), ev, 8);
  CHECK(defect_coisometry(half) >= 0.5);
  // Projection onto the first coordinate is self-adjoint.
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  const auto proj = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(p), ev, 8);
  CHECK(defect_self_adjoint(proj) <= 1e-12);
}

TEST_CASE("adjoint pair defect detects C2 = C1^*") {
  const auto m = table(linear_weight());
  const KernelEvaluator ev(m, 2);
  const CMatrix c = mat2(Complex(0.2, 0.1), 0.4, Complex(-0.3, 0.2), 0.1);
  const auto t1 = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(c), ev, 8);
  const auto t2 = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(c.adjoint()), ev, 8);
  const auto t3 = truncated_matrix(WeightSymbol::constant(1.0), AffineMap::linear(c.transpose()), ev, 8);
  CHECK(defect_adjoint_pair(t1, t2) <= 1e-12);
  CHECK(defect_adjoint_pair(t1, t3) >= 0.1);
}

TEST_CASE("T^dagger acting on kernel coordinates matches the kernel formula") {
  for (const auto& w : {linear_weight(), linear_quadratic_weight()}) {
    const auto m = table(w);
    for (int n = 1; n <= 2; ++n) {
      const KernelEvaluator ev(m, n);
      const auto r = operator_consistency_residual(ev, 25, 8, 77 + n);
      CHECK(r.points_tested == 100);
      CHECK(r.max_residual <= 1e-7);
    }
  }
}

TEST_CASE("operator errors") {
  const auto m = table(linear_weight());
  const KernelEvaluator ev(m, 2);
  CHECK_THROWS_AS(truncated_matrix(WeightSymbol::constant(1.0), AffineMap::identity(3), ev, 4), DimensionMismatch);
  CHECK_THROWS_AS(truncated_matrix(WeightSymbol::kernel_multiple(1.0, vec({1.0})), AffineMap::identity(2), ev, 4),
                  DimensionMismatch);
  CHECK_THROWS_AS(checked_inverse(CMatrix::Zero(2, 2)), SingularMatrix);
  CHECK(operator_norm(rotation(0.4)) == doctest::Approx(1.0));
}
