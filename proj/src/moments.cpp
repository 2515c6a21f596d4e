#include "fockpsi/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fockpsi/errors.hpp"
#include "fockpsi/quadrature.hpp"

namespace fockpsi {

MomentTable::MomentTable(std::string weight_name, std::vector<double> c, std::vector<double> err)
    : weight_name_(std::move(weight_name)), c_(std::move(c)), err_(std::move(err)) {
  if (c_.empty()) throw InputError("moment table must hold at least c_0");
  if (err_.size() != c_.size()) throw InputError("moment table value/error length mismatch");
}

double MomentTable::c(int r) const {
  if (r < 0 || r > r_max())
    throw IndexOutOfRange("moment c_" + std::to_string(r) + " not in table (r_max=" +
                          std::to_string(r_max()) + ")");
  return c_[static_cast<std::size_t>(r)];
}

double MomentTable::err(int r) const {
  if (r < 0 || r > r_max()) throw IndexOutOfRange("moment error index out of range");
  return err_[static_cast<std::size_t>(r)];
}

void MomentTable::validate(double rel_slack) const {
  for (int r = 0; r <= r_max(); ++r) {
    const double v = c_[static_cast<std::size_t>(r)];
    if (!(v > 0.0) || !std::isfinite(v))
      throw InputError("moment c_" + std::to_string(r) + " is not a positive finite number");
  }
  for (int r = 1; r < r_max(); ++r) {
    const double lhs = c(r) * c(r);
    const double rhs = c(r - 1) * c(r + 1);
    if (lhs > rhs * (1.0 + rel_slack))
      throw InputError("moment table violates log-convexity at r=" + std::to_string(r));
  }
}

namespace {

// -log(eps) plus margin: past s* the integrand is below eps relative to its peak.
constexpr double kTailDrop = 50.0;
constexpr double kSearchLimit = 1e12;

struct LogIntegrand {
  const WeightFunction& w;
  int r;

  double value(double s) const {
    if (s <= 0.0) return r == 0 ? -w.psi(0.0) : -std::numeric_limits<double>::infinity();
    return r * std::log(s) - w.psi(s);
  }
  double slope(double s) const {
    if (s <= 0.0) return r == 0 ? -w.d1(0.0) : std::numeric_limits<double>::infinity();
    return r / s - w.d1(s);
  }
};

double find_mode(const LogIntegrand& g) {
  if (!(g.slope(0.0) > 0.0)) return 0.0;
  double hi = 1.0;
  while (g.slope(hi) > 0.0) {
    hi *= 2.0;
    if (hi > kSearchLimit)
      throw TailNotConvergent("integrand s^" + std::to_string(g.r) + " exp(-psi) of weight '" +
                              g.w.name() + "' has no maximum below 1e12");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g.slope(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double find_cutoff(const LogIntegrand& g, double mode, double peak) {
  const double level = peak - kTailDrop;
  double hi = std::max(2.0 * mode, 1.0);
  while (g.value(hi) > level) {
    hi *= 2.0;
    if (hi > kSearchLimit || !std::isfinite(g.value(hi)))
      throw TailNotConvergent("tail of s^" + std::to_string(g.r) + " exp(-psi) for weight '" +
                              g.w.name() + "' does not decay below machine precision");
  }
  double lo = std::max(mode, 0.5 * hi);
  if (g.value(lo) <= level) return lo;
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g.value(mid) > level ? lo : hi) = mid;
  }
  return hi;
}

std::pair<double, double> compute_one(const WeightFunction& w, int r, const MomentOptions& opts) {
  const LogIntegrand g{w, r};
  const double mode = find_mode(g);
  const double peak = g.value(mode);
  if (!std::isfinite(peak))
    throw NonFiniteValue("log-integrand peak is not finite for r=" + std::to_string(r));
  const double cutoff = find_cutoff(g, mode, peak);
  const double rate = -g.slope(cutoff);
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw TailNotConvergent("no exponential decay past s*=" + std::to_string(cutoff) +
                            " for r=" + std::to_string(r));

  // Work in units of exp(peak) so large r neither overflows nor underflows.
  quad::Options qo;
  qo.rel_tol = 0.5 * opts.tol;
  qo.abs_tol = 0.5 * opts.tol * std::exp(-peak);
  qo.max_evaluations = opts.max_evaluations;
  if (mode > 0.0) qo.breakpoints = {mode};

  auto body_fn = [&](double s) { return std::exp(g.value(s) - peak); };
  const quad::Result body = quad::integrate(body_fn, 0.0, cutoff, qo);

  // u = exp(-rate (s - s*)) maps [s*, inf) onto (0, 1]; concavity of the log
  // integrand keeps the transformed integrand bounded by its value at s*.
  auto tail_fn = [&](double u) {
    const double s = cutoff - std::log(u) / rate;
    return std::exp(g.value(s) - peak + rate * (s - cutoff)) / rate;
  };
  quad::Options to = qo;
  to.breakpoints.clear();
  to.max_evaluations = opts.max_evaluations - std::min(opts.max_evaluations, body.evaluations);
  const quad::Result tail = quad::integrate(tail_fn, 0.0, 1.0, to);

  const double scale = std::exp(peak);
  const double c = scale * (body.value + tail.value);
  const double err = scale * (body.abs_error + tail.abs_error);
  if (!std::isfinite(c) || !std::isfinite(err))
    throw NonFiniteValue("moment c_" + std::to_string(r) + " overflows double precision");
  if (err > opts.tol * std::max(1.0, c)) {
    std::ostringstream os;
    os << "moment c_" << r << " error estimate " << err << " exceeds tolerance";
    throw QuadratureBudgetExceeded(os.str());
  }
  return {c, err};
}

}  // namespace

MomentTable compute_moments(const WeightFunction& w, int r_max, const MomentOptions& opts) {
  if (r_max < 0) throw InputError("r_max must be non-negative");
  if (!(opts.tol > 0.0)) throw InputError("moment tolerance must be positive");
  std::vector<double> c(static_cast<std::size_t>(r_max) + 1), err(c.size());
  for (int r = 0; r <= r_max; ++r) {
    auto [value, e] = compute_one(w, r, opts);
    c[static_cast<std::size_t>(r)] = value;
    err[static_cast<std::size_t>(r)] = e;
  }
  return MomentTable(w.name(), std::move(c), std::move(err));
}

double monomial_norm_sq(const MomentTable& m, const MultiIndex& alpha, int n) {
  if (alpha.size() != n) throw DimensionMismatch("multi-index length differs from n");
  const int k = alpha.degree();
  const int idx = k + n - 1;
  const double c = m.c(idx);  // throws IndexOutOfRange
  if (idx <= 150) return factorial(n - 1) * alpha.factorial() * c / factorial(idx);
  double log_ratio = std::lgamma(static_cast<double>(n)) - std::lgamma(idx + 1.0);
  for (int a : alpha.exponents()) log_ratio += std::lgamma(a + 1.0);
  return std::exp(log_ratio) * c;
}

}  // namespace fockpsi
