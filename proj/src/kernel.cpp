#include "fockpsi/kernel.hpp"

#include <cmath>
#include <sstream>

#include "fockpsi/errors.hpp"

namespace fockpsi {

KernelEvaluator::KernelEvaluator(std::shared_ptr<const MomentTable> moments, int n,
                                 KernelOptions opts)
    : moments_(std::move(moments)), n_(n), opts_(opts) {
  if (!moments_) throw InputError("kernel evaluator needs a moment table");
  if (n_ < 1) throw InputError("dimension n must be at least 1");
  if (opts_.max_terms < 1) throw InputError("max_terms must be positive");
  if (!(opts_.tail_tol > 0.0)) throw InputError("tail_tol must be positive");
  if (opts_.max_terms + n_ - 1 > moments_->r_max()) {
    std::ostringstream os;
    os << "kernel needs moments up to r=" << opts_.max_terms + n_ - 1 << " but table stops at "
       << moments_->r_max();
    throw IndexOutOfRange(os.str());
  }
}

SeriesValue KernelEvaluator::g_series(Complex t, int k) const {
  if (k < 0) throw InputError("derivative order must be non-negative");
  const double at = std::abs(t);
  if (!std::isfinite(at)) throw NonFiniteValue("series argument is not finite");
  const int budget = moments_->r_max() - k;  // last usable term index j = r - k
  if (budget < 0) throw IndexOutOfRange("moment table too short for derivative order");
  const int max_terms = std::min(opts_.max_terms, budget);

  // term_j = r(r-1)...(r-k+1) t^j / c_r with r = j + k.
  double falling = factorial(k);  // k!/0! for j = 0
  Complex power = 1.0;
  Complex sum = 0.0;
  for (int j = 0; j < max_terms; ++j) {
    const int r = j + k;
    sum += falling * power / moments_->c(r);
    if (at == 0.0) return {sum, 0.0, j + 1};

    // Ratio term_{j+1}/term_j; the sequence of ratios is nonincreasing, so
    // the tail after j is at most term_{j+1} / (1 - ratio_j).
    const double ratio = at * (r + 1.0) / (j + 1.0) * moments_->c(r) / moments_->c(r + 1);
    const double next = falling * (r + 1.0) / (j + 1.0) * std::abs(power) * at / moments_->c(r + 1);
    if (ratio < 1.0) {
      const double bound = next / (1.0 - ratio);
      if (bound <= opts_.tail_tol * (1.0 + std::abs(sum))) return {sum, bound, j + 1};
    }
    falling *= (r + 1.0) / (j + 1.0);
    power *= t;
  }
  std::ostringstream os;
  os << "series at |t|=" << at << " (order " << k << ") not converged within " << max_terms
     << " terms";
  throw TruncationBudgetExceeded(os.str());
}

SeriesValue KernelEvaluator::kernel_series(const CVector& p, const CVector& z) const {
  if (p.size() != n_ || z.size() != n_) throw DimensionMismatch("kernel arguments must have length n");
  SeriesValue s = g_series(inner(z, p), n_ - 1);
  const double f = factorial(n_ - 1);
  s.value /= f;
  s.tail_bound /= f;
  return s;
}

double KernelEvaluator::kernel_norm_sq(const CVector& p) const {
  const Complex v = kernel_eval(p, p);
  if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v)))
    throw NonFiniteValue("kernel diagonal has non-real value");
  return v.real();
}

Polynomial KernelEvaluator::kernel_polynomial(const CVector& q, int max_degree) const {
  if (q.size() != n_) throw DimensionMismatch("kernel center must have length n");
  Polynomial out(n_);
  for (const auto& beta : graded_indices(n_, max_degree)) {
    Complex coeff = 1.0 / monomial_norm_sq(*moments_, beta, n_);
    for (int j = 0; j < n_; ++j)
      if (beta[j] > 0) coeff *= std::pow(std::conj(q(j)), beta[j]);
    out.add_term(beta, coeff);
  }
  return out;
}

}  // namespace fockpsi
