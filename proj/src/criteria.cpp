#include "fockpsi/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fockpsi/errors.hpp"
#include "fockpsi/linalg.hpp"

namespace fockpsi {

bool Verdict::conditions_pass() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.informational || c.pass; });
}

double Verdict::failure_margin() const {
  double m = 0.0;
  for (const auto& c : conditions)
    if (!c.informational && !c.pass) m = std::max(m, c.residual);
  return m;
}

const Condition* Verdict::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> theorem::all() {
  return {kAdjointCompositionPair,      kSelfAdjointComposition,       kAdjointWeightedPair,
          kSelfAdjointWeightedLinear,   kSelfAdjointWeightedConstant,  kSelfAdjointWeightedAffine,
          kCoisometryComposition,       kCoisometryUnitaryComposition, kCoisometryWeightedLinear,
          kCoisometryWeightedConstant,  kCoisometryWeightedAffine};
}

std::vector<CVector> sample_ball(int n, int count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<CVector> pts;
  pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    CVector v(n);
    for (int j = 0; j < n; ++j) v(j) = Complex(gauss(rng), gauss(rng));
    const double r = radius * std::pow(unif(rng), 1.0 / (2.0 * n));
    const double len = v.norm();
    pts.push_back(len > 0.0 ? CVector(v * (r / len)) : CVector(CVector::Zero(n)));
  }
  return pts;
}

std::pair<Complex, Complex> adjoint_kernel_identity(const AffineMap& g1, const AffineMap& g2,
                                                    const KernelEvaluator& ev, const CVector& z,
                                                    const CVector& w) {
  const CVector zero = CVector::Zero(g1.n());
  const Complex lhs = ev.kernel_eval(z, g2(zero)) * ev.kernel_eval(g1(z), w);
  const Complex rhs = ev.kernel_eval(g1(zero), w) * ev.kernel_eval(z, g2(w));
  return {lhs, rhs};
}

std::pair<Complex, Complex> series_balance(const AffineMap& g, const KernelEvaluator& ev) {
  const CMatrix& c = g.linear_part();
  const CVector& d = g.shift();
  const CMatrix c_inv = checked_inverse(c);
  const CMatrix c_adj_inv = checked_inverse(c.adjoint());
  const int k = g.n() - 1;
  return {ev.g_eval(inner(c_adj_inv * d, d), k), ev.g_eval(inner(c_inv * d, d), k)};
}

namespace {

constexpr double kNormSlack = 1e-12;

double scale_of(std::initializer_list<double> mags) {
  double s = 1.0;
  for (double m : mags) s = std::max(s, m);
  return s;
}

Condition check(std::string name, double abs_residual, double scale, double tol) {
  const double r = abs_residual / std::max(1.0, scale);
  return {std::move(name), r <= tol, r, tol, false};
}

Condition info(std::string name, double value) { return {std::move(name), true, value, 0.0, true}; }

void add_norm_hypothesis(Verdict& v, const std::string& label, const AffineMap& g) {
  const double norm = g.operator_norm();
  v.conditions.push_back(check("hypothesis ||" + label + "|| <= 1", std::max(0.0, norm - 1.0), 1.0,
                               kNormSlack));
}

void finalize(Verdict& v) { v.satisfied = !v.necessary_only && v.conditions_pass(); }

// sup over the sample of |a(z) - b(z)| / max(1, |a(z)|, |b(z)|)
template <class A, class B>
double sampled_distance(const std::vector<CVector>& pts, A&& a, B&& b) {
  double worst = 0.0;
  for (const auto& z : pts) {
    const Complex va = a(z), vb = b(z);
    worst = std::max(worst, std::abs(va - vb) / scale_of({std::abs(va), std::abs(vb)}));
  }
  return worst;
}

double sampled_sup(const std::vector<CVector>& pts, const WeightSymbol& u, const KernelEvaluator& ev) {
  double worst = 0.0;
  for (const auto& z : pts) worst = std::max(worst, std::abs(u(z, &ev)));
  return worst;
}

void require_same_dimension(const AffineMap& g1, const AffineMap& g2) {
  if (g1.n() != g2.n()) throw DimensionMismatch("symbols act on spaces of different dimension");
}

}  // namespace

Verdict adjoint_composition_pair(const AffineMap& g1, const AffineMap& g2, const CheckOptions& opts) {
  require_same_dimension(g1, g2);
  Verdict v;
  v.theorem = theorem::kAdjointCompositionPair;
  v.seed = opts.seed;
  add_norm_hypothesis(v, "C1", g1);
  add_norm_hypothesis(v, "C2", g2);
  v.conditions.push_back(check("D1 = 0", g1.shift().norm(), 1.0, opts.tol));
  v.conditions.push_back(check("D2 = 0", g2.shift().norm(), 1.0, opts.tol));
  const CMatrix& c1 = g1.linear_part();
  const CMatrix& c2 = g2.linear_part();
  v.conditions.push_back(check("C1^* = C2", max_abs_entry(c1.adjoint() - c2),
                               scale_of({max_abs_entry(c1), max_abs_entry(c2)}), opts.tol));
  finalize(v);
  return v;
}

Verdict is_self_adjoint_composition(const AffineMap& g, const CheckOptions& opts) {
  Verdict v;
  v.theorem = theorem::kSelfAdjointComposition;
  v.seed = opts.seed;
  add_norm_hypothesis(v, "C", g);
  v.conditions.push_back(check("D = 0", g.shift().norm(), 1.0, opts.tol));
  const CMatrix& c = g.linear_part();
  v.conditions.push_back(
      check("C^* = C", max_abs_entry(c - c.adjoint()), max_abs_entry(c), opts.tol));
  v.conditions.push_back(info("operator norm ||C||", g.operator_norm()));
  finalize(v);
  return v;
}

Verdict adjoint_weighted_pair(const WeightSymbol& u1, const AffineMap& g1, const WeightSymbol& u2,
                              const AffineMap& g2, const KernelEvaluator& ev,
                              const CheckOptions& opts) {
  require_same_dimension(g1, g2);
  const int n = g1.n();
  if (ev.n() != n) throw DimensionMismatch("kernel evaluator dimension differs from the symbols");
  u1.check_dimension(n);
  u2.check_dimension(n);

  Verdict v;
  v.theorem = theorem::kAdjointWeightedPair;
  v.seed = opts.seed;
  add_norm_hypothesis(v, "C1", g1);
  add_norm_hypothesis(v, "C2", g2);

  const CVector zero = CVector::Zero(n);
  const double c = ev.c_n_minus_1();
  const Complex u10 = u1(zero, &ev);
  const CVector g1_0 = g1(zero), g2_0 = g2(zero);
  const auto pts = sample_ball(n, opts.samples, opts.radius, opts.seed);

  const double shape1 = sampled_distance(
      pts, [&](const CVector& z) { return u1(z, &ev); },
      [&](const CVector& z) { return c * u10 * ev.kernel_eval(g2_0, z); });
  v.conditions.push_back(check("U1 = c_{n-1} U1(0) K_{G2(0)}", shape1, 1.0, opts.series_tol));
  const double shape2 = sampled_distance(
      pts, [&](const CVector& z) { return u2(z, &ev); },
      [&](const CVector& z) { return c * std::conj(u10) * ev.kernel_eval(g1_0, z); });
  v.conditions.push_back(check("U2 = c_{n-1} conj(U1(0)) K_{G1(0)}", shape2, 1.0, opts.series_tol));

  if (std::abs(u10) <= opts.tol) {
    const double sup = std::max(sampled_sup(pts, u1, ev), sampled_sup(pts, u2, ev));
    v.conditions.push_back(check("U1 = 0 and U2 = 0", sup, 1.0, opts.series_tol));
  } else {
    const auto ws = sample_ball(n, opts.samples, opts.radius, opts.seed ^ 0x9e3779b97f4a7c15ULL);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto [lhs, rhs] = adjoint_kernel_identity(g1, g2, ev, pts[i], ws[i]);
      worst = std::max(worst, std::abs(lhs - rhs) / scale_of({std::abs(lhs), std::abs(rhs)}));
    }
    v.conditions.push_back(check("kernel identity", worst, 1.0, opts.series_tol));
  }
  finalize(v);
  return v;
}

Verdict self_adjoint_weighted(const WeightSymbol& u, const AffineMap& g, const KernelEvaluator& ev,
                              const CheckOptions& opts) {
  const int n = g.n();
  if (ev.n() != n) throw DimensionMismatch("kernel evaluator dimension differs from the symbol");
  u.check_dimension(n);

  Verdict v;
  v.seed = opts.seed;
  add_norm_hypothesis(v, "C", g);
  const CVector zero = CVector::Zero(n);
  const CMatrix& cm = g.linear_part();
  const CVector& d = g.shift();
  const double c = ev.c_n_minus_1();
  const Complex u0 = u(zero, &ev);
  const auto pts = sample_ball(n, opts.samples, opts.radius, opts.seed);
  const double herm = max_abs_entry(cm - cm.adjoint());

  if (g.is_linear(opts.tol)) {
    v.theorem = theorem::kSelfAdjointWeightedLinear;
    const double dev = sampled_distance(
        pts, [&](const CVector& z) { return u(z, &ev); }, [&](const CVector&) { return std::conj(u0); });
    v.conditions.push_back(check("U = conj(U(0))", dev, 1.0, opts.series_tol));
    if (std::abs(u0) <= opts.tol)
      v.conditions.push_back(info("U = 0, C unrestricted", std::abs(u0)));
    else
      v.conditions.push_back(check("C^* = C", herm, max_abs_entry(cm), opts.tol));
    finalize(v);
    return v;
  }

  const Complex alpha = c * std::conj(u0);
  if (g.is_constant(opts.tol)) {
    v.theorem = theorem::kSelfAdjointWeightedConstant;
    v.conditions.push_back(check("alpha real", std::abs(alpha.imag()), std::abs(alpha), opts.tol));
    if (u.kind() == WeightSymbol::Kind::KernelMultiple) {
      const auto& k = u.as_kernel();
      const double center = std::abs(k.alpha) * (k.q - d).cwiseAbs().maxCoeff();
      v.conditions.push_back(check("U = alpha K_D", center, d.cwiseAbs().maxCoeff(), opts.tol));
    } else {
      const double dev = sampled_distance(
          pts, [&](const CVector& z) { return u(z, &ev); },
          [&](const CVector& z) { return alpha * ev.kernel_eval(d, z); });
      v.conditions.push_back(check("U = alpha K_D", dev, 1.0, opts.series_tol));
    }
    finalize(v);
    return v;
  }

  v.theorem = theorem::kSelfAdjointWeightedAffine;
  v.necessary_only = true;
  checked_inverse(cm);  // SingularMatrix outside the invertible branch
  v.conditions.push_back(check("alpha real", std::abs(alpha.imag()), std::abs(alpha), opts.tol));
  const double dev = sampled_distance(
      pts, [&](const CVector& z) { return u(z, &ev); },
      [&](const CVector& z) { return alpha * ev.kernel_eval(d, z); });
  v.conditions.push_back(check("U = alpha K_{G(0)}", dev, 1.0, opts.series_tol));
  if (std::abs(u0) > opts.tol) {
    auto [lhs, rhs] = series_balance(g, ev);
    v.conditions.push_back(check("series balance", std::abs(lhs - rhs),
                                 scale_of({std::abs(lhs), std::abs(rhs)}), opts.series_tol));
    const CMatrix c_inv = checked_inverse(cm);
    v.conditions.push_back(info("|<(C^*)^{-1}D, D>|", std::abs(inner(checked_inverse(cm.adjoint()) * d, d))));
    v.conditions.push_back(info("|<C^{-1}D, D>|", std::abs(inner(c_inv * d, d))));
  }
  v.conditions.push_back(info("max|C - C^*|", herm));
  finalize(v);
  return v;
}

Verdict is_coisometry_composition(const AffineMap& g, const CheckOptions& opts) {
  Verdict v;
  v.theorem = theorem::kCoisometryComposition;
  v.seed = opts.seed;
  add_norm_hypothesis(v, "C", g);
  v.conditions.push_back(check("D = 0", g.shift().norm(), 1.0, opts.tol));
  const CMatrix& c = g.linear_part();
  const CMatrix gram = c.adjoint() * c - CMatrix::Identity(g.n(), g.n());
  v.conditions.push_back(check("C unitary", max_abs_entry(gram), 1.0, opts.tol));
  finalize(v);
  return v;
}

Verdict coisometry_equals_unitary_composition(const AffineMap& g, const KernelEvaluator& ev,
                                              int max_degree, const CheckOptions& opts) {
  Verdict v = is_coisometry_composition(g, opts);
  v.theorem = theorem::kCoisometryUnitaryComposition;
  const bool base = v.conditions_pass();
  const TruncatedOperator t = truncated_matrix(WeightSymbol::constant(1.0), g, ev, max_degree);
  const double co = defect_coisometry(t);
  const double iso = defect_isometry(t);
  if (base) {
    v.conditions.push_back(check("truncated co-isometry defect", co, 1.0, opts.defect_tol));
    v.conditions.push_back(check("truncated isometry defect", iso, 1.0, opts.defect_tol));
  } else {
    v.conditions.push_back(info("truncated co-isometry defect", co));
    v.conditions.push_back(info("truncated isometry defect", iso));
  }
  finalize(v);
  return v;
}

Verdict is_coisometry_weighted(const WeightSymbol& u, const AffineMap& g, const KernelEvaluator& ev,
                               const CheckOptions& opts) {
  const int n = g.n();
  if (ev.n() != n) throw DimensionMismatch("kernel evaluator dimension differs from the symbol");
  u.check_dimension(n);

  Verdict v;
  v.seed = opts.seed;
  add_norm_hypothesis(v, "C", g);
  const CVector zero = CVector::Zero(n);
  const CMatrix& cm = g.linear_part();
  const Complex u0 = u(zero, &ev);
  const auto pts = sample_ball(n, opts.samples, opts.radius, opts.seed);

  if (g.is_constant(opts.tol)) {
    // A constant symbol gives a rank-one operator, never onto.
    v.theorem = theorem::kCoisometryWeightedConstant;
    v.conditions.push_back(check("Gamma not constant", 1.0, 1.0, opts.tol));
    finalize(v);
    return v;
  }

  if (g.is_linear(opts.tol)) {
    v.theorem = theorem::kCoisometryWeightedLinear;
    const double dev = sampled_distance(
        pts, [&](const CVector& z) { return u(z, &ev); }, [&](const CVector&) { return u0; });
    v.conditions.push_back(check("U constant", dev, 1.0, opts.series_tol));
    v.conditions.push_back(check("|U| = 1", std::abs(std::abs(u0) - 1.0), 1.0, opts.tol));
    const CMatrix gram = cm.adjoint() * cm - CMatrix::Identity(n, n);
    v.conditions.push_back(check("C unitary", max_abs_entry(gram), 1.0, opts.tol));
    finalize(v);
    return v;
  }

  v.theorem = theorem::kCoisometryWeightedAffine;
  v.necessary_only = true;
  const CVector d = -g.shift();  // Gamma(z) = C z - D
  const CVector q = checked_inverse(cm) * d;
  const double kq_norm = std::sqrt(ev.kernel_norm_sq(q));
  const double c = ev.c_n_minus_1();
  const Complex beta = u0 * c * kq_norm;

  if (u.kind() == WeightSymbol::Kind::KernelMultiple) {
    const auto& k = u.as_kernel();
    v.conditions.push_back(check("U = beta K_{C^{-1}D} / ||K_{C^{-1}D}||",
                                 (k.q - q).cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff(),
                                 opts.tol));
  } else {
    const double dev = sampled_distance(
        pts, [&](const CVector& z) { return u(z, &ev); },
        [&](const CVector& z) { return beta * ev.kernel_eval(q, z) / kq_norm; });
    v.conditions.push_back(
        check("U = beta K_{C^{-1}D} / ||K_{C^{-1}D}||", dev, 1.0, opts.series_tol));
  }
  v.conditions.push_back(
      check("|beta| = sqrt(c_{n-1})", std::abs(std::abs(beta) - std::sqrt(c)), std::sqrt(c), opts.series_tol));
  v.conditions.push_back(check("|C^{-1}D| = |D|", std::abs(q.norm() - d.norm()), d.norm(), opts.tol));
  finalize(v);
  return v;
}

}  // namespace fockpsi
