#include "fockpsi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "fockpsi/errors.hpp"
#include "fockpsi/linalg.hpp"
#include "fockpsi/moments.hpp"
#include "fockpsi/parse.hpp"
#include "fockpsi/quadrature.hpp"
#include "fockpsi/weights.hpp"

namespace fockpsi {

namespace {

// int_0^inf rho^k exp(-psi(rho^2)) d rho, integrated in rho rather than in
// s = rho^2 so that it shares no code path with the moment engine.
double radial_integral(const WeightFunction& w, int k) {
  auto log_f = [&](double rho) { return k * std::log(rho) - w.psi(rho * rho); };
  double peak_rho = 1e-3, peak = log_f(peak_rho);
  double rho = peak_rho;
  for (int i = 0; i < 4000; ++i) {
    rho *= 1.02;
    const double v = log_f(rho);
    if (v > peak) {
      peak = v;
      peak_rho = rho;
    } else if (v < peak - 60.0) {
      break;
    }
  }
  const double cutoff = rho;
  quad::Options opts;
  opts.rel_tol = 1e-13;
  opts.breakpoints = {peak_rho};
  auto f = [&](double r) { return r <= 0.0 ? (k == 0 ? std::exp(-w.psi(0.0) - peak) : 0.0)
                                           : std::exp(log_f(r) - peak); };
  return std::exp(peak) * quad::integrate(f, 0.0, cutoff, opts).value;
}

Polynomial random_polynomial(int n, int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Polynomial p(n);
  for (const auto& a : graded_indices(n, degree)) p.add_term(a, Complex(g(rng), g(rng)) * 0.5);
  return p;
}

CMatrix gaussian_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

CVector gaussian_vector(int n, double length, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v * (length / v.norm());
}

double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

// ||C|| drawn from [lo, hi].
CMatrix random_contraction(int n, std::mt19937_64& rng, double lo = 0.3, double hi = 1.0) {
  CMatrix a = gaussian_matrix(n, rng);
  return a * (uniform(rng, lo, hi) / operator_norm(a));
}

CMatrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(n, rng));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// Q diag(lambda) Q^* with |lambda_i| in [lo, hi] and random signs.
CMatrix random_hermitian(int n, std::mt19937_64& rng, double lo = 0.3, double hi = 1.0) {
  const CMatrix q = random_unitary(n, rng);
  CVector lambda(n);
  for (int i = 0; i < n; ++i)
    lambda(i) = uniform(rng, lo, hi) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  return q * lambda.asDiagonal() * q.adjoint();
}

// Contraction with max|C - C^*| >= 0.2.
CMatrix random_non_hermitian(int n, std::mt19937_64& rng) {
  for (;;) {
    CMatrix c = random_contraction(n, rng, 0.6, 1.0);
    if (max_abs_entry(c - c.adjoint()) >= 0.2) return c;
  }
}

Complex unit_phase(std::mt19937_64& rng) {
  return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

}  // namespace

double monomial_norm_sq_by_quadrature(const WeightFunction& w, const MultiIndex& alpha) {
  const int n = alpha.size();
  if (n == 1) return 2.0 * radial_integral(w, 2 * alpha[0] + 1);
  if (n == 2) {
    const int a = alpha[0], b = alpha[1];
    quad::Options opts;
    opts.rel_tol = 1e-13;
    const double angular =
        quad::integrate(
            [&](double phi) {
              return std::pow(std::cos(phi), 2 * a + 1) * std::pow(std::sin(phi), 2 * b + 1);
            },
            0.0, std::numbers::pi / 2.0, opts)
            .value;
    return 4.0 * radial_integral(w, 2 * (a + b) + 3) * angular;
  }
  throw InputError("quadrature norms are implemented for n = 1 and n = 2 only");
}

double reproducing_residual(const KernelEvaluator& ev, const Polynomial& f, const CVector& p) {
  const int n = ev.n();
  if (n > 2) throw InputError("reproducing residual supports n = 1 and n = 2");
  if (f.n() != n || p.size() != n) throw DimensionMismatch("polynomial, point and kernel disagree");
  if (f.degree() > 6) throw InputError("reproducing residual supports degree <= 6");

  // The moment table carries the weight by name; rebuild it from that.
  const WeightFunction w = parse_weight(ev.moments().weight_name());

  Complex pairing = 0.0;
  for (const auto& [alpha, coef] : f.terms()) {
    Complex pa = 1.0;
    for (int j = 0; j < n; ++j)
      for (int e = 0; e < alpha[j]; ++e) pa *= p(j);
    // <z^alpha, K_p> = p^alpha ||z^alpha||^2_quad / ||z^alpha||^2_table
    const double ratio =
        monomial_norm_sq_by_quadrature(w, alpha) / monomial_norm_sq(ev.moments(), alpha, n);
    pairing += coef * pa * ratio;
  }
  return std::abs(pairing - f(p));
}

ResidualReport kernel_equation_residual(KernelEquation eq, const WeightSymbol& u1,
                                        const AffineMap& g1, const WeightSymbol& u2,
                                        const AffineMap& g2, const KernelEvaluator& ev,
                                        int samples, std::uint64_t seed, double radius) {
  if (g1.n() != g2.n() || ev.n() != g1.n())
    throw DimensionMismatch("symbols and kernel evaluator disagree on dimension");
  if (samples <= 0) throw InputError("need at least one sample point");
  ResidualReport r;
  r.seed = seed;
  auto rel = [](Complex a, Complex b) {
    const double s = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / s;
  };

  if (eq == KernelEquation::SeriesBalance) {
    r.name = "series-balance";
    auto [lhs, rhs] = series_balance(g1, ev);
    r.max_residual = rel(lhs, rhs);
    r.points_tested = 1;
    return r;
  }

  const int n = g1.n();
  const auto zs = sample_ball(n, samples, radius, seed);
  const auto ws = sample_ball(n, samples, radius, seed ^ 0x9e3779b97f4a7c15ULL);
  r.name = eq == KernelEquation::AdjointKernel ? "adjoint-kernel" : "weighted-adjoint";
  for (int i = 0; i < samples; ++i) {
    const CVector& z = zs[static_cast<std::size_t>(i)];
    const CVector& w = ws[static_cast<std::size_t>(i)];
    Complex lhs, rhs;
    if (eq == KernelEquation::AdjointKernel) {
      std::tie(lhs, rhs) = adjoint_kernel_identity(g1, g2, ev, z, w);
    } else {
      lhs = std::conj(u1(z, &ev)) * ev.kernel_eval(g1(z), w);
      rhs = u2(w, &ev) * ev.kernel_eval(z, g2(w));
    }
    r.max_residual = std::max(r.max_residual, rel(lhs, rhs));
    ++r.points_tested;
  }
  return r;
}

ResidualReport kernel_symmetry_residual(const KernelEvaluator& ev, int pairs, double radius,
                                        std::uint64_t seed) {
  ResidualReport r;
  r.name = "kernel-symmetry";
  r.seed = seed;
  const auto ps = sample_ball(ev.n(), pairs, radius, seed);
  const auto zs = sample_ball(ev.n(), pairs, radius, seed + 1);
  for (int i = 0; i < pairs; ++i) {
    const auto& p = ps[static_cast<std::size_t>(i)];
    const auto& z = zs[static_cast<std::size_t>(i)];
    const Complex a = std::conj(ev.kernel_eval(p, z));
    const Complex b = ev.kernel_eval(z, p);
    r.max_residual = std::max(r.max_residual, std::abs(a - b) / std::max(1.0, std::abs(a)));
    ++r.points_tested;
  }
  return r;
}

ResidualReport operator_consistency_residual(const KernelEvaluator& ev, int trials, int max_degree,
                                             std::uint64_t seed) {
  ResidualReport r;
  r.name = "adjoint-on-kernel";
  r.seed = seed;
  std::mt19937_64 rng(seed);
  const int n = ev.n();
  for (int t = 0; t < trials; ++t) {
    const AffineMap g(random_contraction(n, rng), t % 2 == 0 ? CVector(CVector::Zero(n))
                                                             : gaussian_vector(n, 0.5, rng));
    const WeightSymbol u = t % 3 == 0 ? WeightSymbol::constant(Complex(uniform(rng, -1, 1), uniform(rng, -1, 1)))
                                      : WeightSymbol::polynomial(random_polynomial(n, 2, rng));
    const TruncatedOperator op = truncated_matrix(u, g, ev, max_degree);
    const auto block = static_cast<Eigen::Index>(op.guard_size());
    for (const auto& z : sample_ball(n, 4, 0.5, rng())) {
      const CVector lhs = (op.matrix.adjoint() * kernel_coordinates(op, ev, z)).head(block);
      const KernelImage img = adjoint_on_kernel(u, g, z, &ev);
      const CVector rhs = (img.scalar * kernel_coordinates(op, ev, img.point)).head(block);
      const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
      r.max_residual = std::max(r.max_residual, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
      ++r.points_tested;
    }
  }
  return r;
}

namespace {

struct Instance {
  Verdict verdict;
  double defect = 0.0;
};

class EvaluatorCache {
 public:
  EvaluatorCache() {
    // |<z, p>| stays below ~2 in the cross check; 120 moments cover the
    // series for both weights with margin.
    constexpr int kRmax = 120;
    tables_[0] = std::make_shared<MomentTable>(compute_moments(linear_weight(), kRmax));
    tables_[1] = std::make_shared<MomentTable>(compute_moments(linear_quadratic_weight(), kRmax));
  }
  const KernelEvaluator& get(int weight, int n) {
    const int key = weight * 64 + n;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      KernelOptions ko;
      ko.max_terms = tables_[weight]->r_max() - (n - 1);
      it = cache_.emplace(key, std::make_unique<KernelEvaluator>(tables_[weight], n, ko)).first;
    }
    return *it->second;
  }

 private:
  std::shared_ptr<const MomentTable> tables_[2];
  std::map<int, std::unique_ptr<KernelEvaluator>> cache_;
};

Instance make_instance(int family, bool positive, int weight, int n, int N, const KernelEvaluator& ev,
                       const CheckOptions& co, std::mt19937_64& rng) {
  const CVector zero = CVector::Zero(n);
  const WeightSymbol one = WeightSymbol::constant(1.0);
  Instance out;
  switch (family) {
    case 0: {  // adjoint pair of composition operators
      const CMatrix c1 = random_contraction(n, rng);
      CMatrix c2 = c1.adjoint();
      CVector d1 = zero;
      if (!positive) {
        if (rng() % 2 == 0) {
          d1 = gaussian_vector(n, uniform(rng, 0.2, 0.8), rng);
        } else {
          do c2 = random_contraction(n, rng); while (max_abs_entry(c2 - c1.adjoint()) < 0.2);
        }
      }
      const AffineMap g1(c1, d1), g2(c2, zero);
      out.verdict = adjoint_composition_pair(g1, g2, co);
      out.defect = defect_adjoint_pair(truncated_matrix(one, g1, ev, N), truncated_matrix(one, g2, ev, N));
      break;
    }
    case 1: {  // self-adjoint composition operator
      CMatrix c = positive ? random_hermitian(n, rng) : random_non_hermitian(n, rng);
      CVector d = zero;
      if (!positive && rng() % 2 == 0) {
        c = random_hermitian(n, rng);
        d = gaussian_vector(n, uniform(rng, 0.2, 0.8), rng);
      }
      const AffineMap g(c, d);
      out.verdict = is_self_adjoint_composition(g, co);
      out.defect = defect_self_adjoint(truncated_matrix(one, g, ev, N));
      break;
    }
    case 2: {  // adjoint pair of weighted composition operators
      const Complex s = unit_phase(rng) * uniform(rng, 0.5, 1.5);
      const int variant = weight == 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 2);
      WeightSymbol u1 = WeightSymbol::zero(), u2 = WeightSymbol::zero();
      CMatrix c = random_contraction(n, rng, 0.3, 0.9);
      CMatrix c2 = c.adjoint();
      CVector d1 = zero, d2 = zero;
      if (variant == 0) {
        u1 = WeightSymbol::constant(s);
        u2 = WeightSymbol::constant(positive ? std::conj(s) : std::conj(s) + 0.5);
      } else if (variant == 1) {
        c2 = random_contraction(n, rng, 0.3, 0.9);
        if (!positive) u2 = WeightSymbol::constant(0.5);
      } else {
        // Kernel-multiple symbols with shifts; the kernel identity holds for the linear weight.
        d1 = gaussian_vector(n, uniform(rng, 0.1, 0.5), rng);
        d2 = gaussian_vector(n, uniform(rng, 0.1, 0.5), rng);
        u1 = WeightSymbol::kernel_multiple(s, d2);
        u2 = WeightSymbol::kernel_multiple(positive ? std::conj(s) : std::conj(s) * 1.5, d1);
      }
      const AffineMap g1(c, d1), g2(c2, d2);
      out.verdict = adjoint_weighted_pair(u1, g1, u2, g2, ev, co);
      out.defect = defect_adjoint_pair(truncated_matrix(u1, g1, ev, N), truncated_matrix(u2, g2, ev, N));
      break;
    }
    case 3: {  // self-adjoint, D = 0
      const double a = uniform(rng, 0.5, 1.5);
      CMatrix c = random_hermitian(n, rng);
      Complex u = a;
      if (!positive) {
        if (rng() % 2 == 0) u = Complex(a, uniform(rng, 0.3, 1.0));
        else c = random_non_hermitian(n, rng);
      }
      const WeightSymbol w = WeightSymbol::constant(u);
      const AffineMap g = AffineMap::linear(c);
      out.verdict = self_adjoint_weighted(w, g, ev, co);
      out.defect = defect_self_adjoint(truncated_matrix(w, g, ev, N));
      break;
    }
    case 4: {  // self-adjoint, constant symbol
      const CVector d = gaussian_vector(n, uniform(rng, 0.2, 0.8), rng);
      const double a = uniform(rng, 0.5, 1.5);
      const Complex alpha = positive ? Complex(a) : Complex(a, uniform(rng, 0.3, 1.0));
      const WeightSymbol w = WeightSymbol::kernel_multiple(alpha, d);
      const AffineMap g = AffineMap::constant(d);
      out.verdict = self_adjoint_weighted(w, g, ev, co);
      out.defect = defect_self_adjoint(truncated_matrix(w, g, ev, N));
      break;
    }
    case 5: {  // self-adjoint, invertible C and D != 0 (necessary conditions only)
      const CMatrix c = random_hermitian(n, rng, 0.4, 0.9);
      const CVector d = gaussian_vector(n, uniform(rng, 0.2, 0.5), rng);
      const double a = uniform(rng, 0.5, 1.5);
      const Complex alpha = positive ? Complex(a) : Complex(a, uniform(rng, 0.3, 1.0));
      const WeightSymbol w = WeightSymbol::kernel_multiple(alpha, d);
      const AffineMap g(c, d);
      out.verdict = self_adjoint_weighted(w, g, ev, co);
      out.defect = defect_self_adjoint(truncated_matrix(w, g, ev, N));
      break;
    }
    case 6:
    case 7: {  // co-isometric composition operator
      CMatrix c = random_unitary(n, rng);
      CVector d = zero;
      if (!positive) {
        if (rng() % 2 == 0) c = random_contraction(n, rng, 0.3, 0.8);
        else d = gaussian_vector(n, uniform(rng, 0.2, 0.8), rng);
      }
      const AffineMap g(c, d);
      const TruncatedOperator t = truncated_matrix(one, g, ev, N);
      if (family == 6) {
        out.verdict = is_coisometry_composition(g, co);
        out.defect = defect_coisometry(t);
      } else {
        out.verdict = coisometry_equals_unitary_composition(g, ev, N, co);
        out.defect = std::max(defect_coisometry(t), defect_isometry(t));
      }
      break;
    }
    case 8: {  // co-isometry, D = 0
      CMatrix c = random_unitary(n, rng);
      Complex u = unit_phase(rng);
      if (!positive) {
        if (rng() % 2 == 0) u *= uniform(rng, 1.2, 1.6);
        else c = random_contraction(n, rng, 0.3, 0.8);
      }
      const WeightSymbol w = WeightSymbol::constant(u);
      const AffineMap g = AffineMap::linear(c);
      out.verdict = is_coisometry_weighted(w, g, ev, co);
      out.defect = defect_coisometry(truncated_matrix(w, g, ev, N));
      break;
    }
    case 9: {  // co-isometry, constant symbol: never
      const CVector d = gaussian_vector(n, uniform(rng, 0.0, 0.8), rng);
      const WeightSymbol w = WeightSymbol::constant(unit_phase(rng));
      const AffineMap g = AffineMap::constant(d);
      out.verdict = is_coisometry_weighted(w, g, ev, co);
      out.defect = defect_coisometry(truncated_matrix(w, g, ev, N));
      break;
    }
    default: {  // co-isometry, unitary C and D != 0 (necessary conditions only)
      const CMatrix c = random_unitary(n, rng);
      const CVector d = gaussian_vector(n, uniform(rng, 0.2, 0.5), rng);
      const CVector q = checked_inverse(c) * d;
      const double scale = std::sqrt(ev.c_n_minus_1()) / std::sqrt(ev.kernel_norm_sq(q));
      const Complex beta = unit_phase(rng) * (positive ? 1.0 : 1.8);
      const WeightSymbol w = WeightSymbol::kernel_multiple(beta * scale, q);
      const AffineMap g(c, -d);
      out.verdict = is_coisometry_weighted(w, g, ev, co);
      out.defect = defect_coisometry(truncated_matrix(w, g, ev, N));
      break;
    }
  }
  return out;
}

}  // namespace

CrossCheckReport randomized_cross_check(int trials, int nmax, int max_degree, std::uint64_t seed) {
  if (trials <= 0) throw InputError("cross check needs at least one trial");
  if (nmax < 1) throw InputError("cross check needs nmax >= 1");
  if (max_degree < 2) throw InputError("cross check needs truncation degree >= 2");
  constexpr double kSatisfiedDefect = 1e-7;
  constexpr double kFailingDefect = 1e-3;
  constexpr double kMargin = 0.1;
  constexpr int kFamilies = 11;

  CrossCheckReport rep;
  rep.summary.name = "randomized-cross-check";
  rep.summary.seed = seed;
  rep.summary.threshold = kSatisfiedDefect;
  rep.min_negative_defect = std::numeric_limits<double>::infinity();
  for (const auto& t : theorem::all()) rep.theorem_counts[t] = rep.satisfied_counts[t] = 0;

  EvaluatorCache cache;
  std::mt19937_64 rng(seed);
  CheckOptions co;
  co.radius = 1.0;
  co.samples = 32;

  for (int trial = 0; trial < trials; ++trial) {
    const int family = trial % kFamilies;
    const bool positive = (trial / kFamilies) % 2 == 0;
    const int weight = (trial / (2 * kFamilies)) % 2;
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(nmax));
    const int N = n == 1 ? std::max(max_degree, 2) : max_degree;
    co.seed = rng();
    const KernelEvaluator& ev = cache.get(weight, n);
    const Instance inst = make_instance(family, positive, weight, n, N, ev, co, rng);
    const Verdict& v = inst.verdict;
    ++rep.theorem_counts[v.theorem];
    if (v.conditions_pass()) ++rep.satisfied_counts[v.theorem];
    ++rep.summary.points_tested;

    std::ostringstream why;
    if (v.satisfied) {
      rep.summary.max_residual = std::max(rep.summary.max_residual, inst.defect);
      if (inst.defect > kSatisfiedDefect) why << "satisfied verdict but defect " << inst.defect;
    } else if (!v.necessary_only && v.failure_margin() >= kMargin) {
      rep.min_negative_defect = std::min(rep.min_negative_defect, inst.defect);
      if (inst.defect < kFailingDefect) why << "failed verdict (margin " << v.failure_margin()
                                            << ") but defect " << inst.defect;
    }
    if (v.necessary_only && v.satisfied) why << "necessity-only verdict reported as satisfied";
    if (!why.str().empty()) {
      ++rep.violations;
      rep.violation_details.push_back("trial " + std::to_string(trial) + " [" + v.theorem +
                                      ", n=" + std::to_string(n) + "]: " + why.str());
    }
  }
  rep.coverage_complete = std::all_of(rep.theorem_counts.begin(), rep.theorem_counts.end(),
                                      [](const auto& kv) { return kv.second > 0; });
  rep.summary.passed = rep.violations == 0;
  return rep;
}

std::vector<ResidualReport> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<ResidualReport> out;
  auto finish = [&](ResidualReport r, double threshold) {
    r.threshold = threshold;
    r.passed = r.max_residual <= threshold;
    out.push_back(std::move(r));
  };
  const bool all = suite == "default";
  if (!all && suite != "kernel" && suite != "operators")
    throw InputError("unknown verify suite '" + suite + "' (expected default, kernel or operators)");

  if (all || suite == "kernel") {
    for (int weight = 0; weight < 2; ++weight) {
      auto table = std::make_shared<MomentTable>(
          compute_moments(weight == 0 ? linear_weight() : linear_quadratic_weight(), 160));
      const std::string tag = weight == 0 ? "linear" : "linear-quadratic";
      for (int n = 1; n <= 2; ++n) {
        KernelOptions ko;
        ko.max_terms = 150;
        const KernelEvaluator ev(table, n, ko);
        auto sym = kernel_symmetry_residual(ev, 100, 2.0, seed);
        sym.name += "/" + tag + "/n=" + std::to_string(n);
        finish(sym, 1e-12);

        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
        ResidualReport rr;
        rr.name = "reproducing/" + tag + "/n=" + std::to_string(n);
        rr.seed = seed;
        for (const auto& p : sample_ball(n, 8, 1.0, seed)) {
          const Polynomial f = random_polynomial(n, 5, rng);
          rr.max_residual = std::max(rr.max_residual, reproducing_residual(ev, f, p));
          ++rr.points_tested;
        }
        finish(rr, 1e-10);

        const CMatrix c = random_contraction(n, rng);
        auto eq = kernel_equation_residual(KernelEquation::AdjointKernel, WeightSymbol::constant(1.0),
                                           AffineMap::linear(c), WeightSymbol::constant(1.0),
                                           AffineMap::linear(c.adjoint()), ev, 64, seed, 1.0);
        eq.name += "/" + tag + "/n=" + std::to_string(n);
        finish(eq, 1e-10);
      }
    }
  }
  if (all || suite == "operators") {
    auto table = std::make_shared<MomentTable>(compute_moments(linear_quadratic_weight(), 64));
    for (int n = 1; n <= 2; ++n) {
      const KernelEvaluator ev(table, n);
      auto r = operator_consistency_residual(ev, 12, 8, seed);
      r.name += "/n=" + std::to_string(n);
      finish(r, 1e-10);
    }
    CrossCheckReport cc = randomized_cross_check(all ? 220 : 110, 3, 8, seed);
    cc.summary.passed = cc.violations == 0 && cc.coverage_complete;
    out.push_back(cc.summary);
  }
  return out;
}

}  // namespace fockpsi
