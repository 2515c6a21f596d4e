#pragma once

#include <memory>

#include "fockpsi/moments.hpp"
#include "fockpsi/polynomial.hpp"
#include "fockpsi/types.hpp"

namespace fockpsi {

/// Truncated value of a kernel-type power series with its certified tail bound.
struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;
  int terms = 0;
};

struct KernelOptions {
  double tail_tol = 1e-12;
  int max_terms = 48;
};

/// Evaluates G(t) = sum_r t^r / c_r, its derivatives, and the reproducing
/// kernel K_p(z) = G^{(n-1)}(<z, p>) / (n-1)! of F^2 over C^n.
///
/// Series are cut at the first index whose geometric tail bound, built from
/// the nonincreasing term ratios that log-convexity of the moments
/// guarantees, falls below tail_tol * (1 + |partial sum|).
class KernelEvaluator {
 public:
  KernelEvaluator(std::shared_ptr<const MomentTable> moments, int n, KernelOptions opts = {});

  const MomentTable& moments() const { return *moments_; }
  std::shared_ptr<const MomentTable> moments_ptr() const { return moments_; }
  int n() const { return n_; }
  const KernelOptions& options() const { return opts_; }
  // c_{n-1}, the reciprocal of K_0.
  double c_n_minus_1() const { return moments_->c(n_ - 1); }

  SeriesValue g_series(Complex t, int k) const;
  Complex g_eval(Complex t, int k) const { return g_series(t, k).value; }

  SeriesValue kernel_series(const CVector& p, const CVector& z) const;
  Complex kernel_eval(const CVector& p, const CVector& z) const {
    return kernel_series(p, z).value;
  }

  // ||K_p||^2 = K_p(p).
  double kernel_norm_sq(const CVector& p) const;

  /// Polynomial sum_{|beta| <= max_degree} conj(q)^beta z^beta / ||z^beta||^2,
  /// i.e. K_q cut at total degree max_degree.
  Polynomial kernel_polynomial(const CVector& q, int max_degree) const;

 private:
  std::shared_ptr<const MomentTable> moments_;
  int n_;
  KernelOptions opts_;
};

}  // namespace fockpsi
