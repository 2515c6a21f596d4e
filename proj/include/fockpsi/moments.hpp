#pragma once

#include <string>
#include <vector>

#include "fockpsi/multi_index.hpp"
#include "fockpsi/weights.hpp"

namespace fockpsi {

/// Stieltjes moments c_r = int_0^inf s^r exp(-psi(s)) ds for r = 0..r_max,
/// with absolute quadrature error estimates.
class MomentTable {
 public:
  MomentTable(std::string weight_name, std::vector<double> c, std::vector<double> err);

  const std::string& weight_name() const { return weight_name_; }
  int r_max() const { return static_cast<int>(c_.size()) - 1; }
  double c(int r) const;
  double err(int r) const;
  const std::vector<double>& values() const { return c_; }
  const std::vector<double>& errors() const { return err_; }

  // Positivity and log-convexity (c_r^2 <= c_{r-1} c_{r+1}) up to a relative
  // slack; throws InputError naming the first offending index.
  void validate(double rel_slack = 1e-10) const;

 private:
  std::string weight_name_;
  std::vector<double> c_;
  std::vector<double> err_;
};

struct MomentOptions {
  double tol = 1e-12;
  std::size_t max_evaluations = 1'000'000;  // per moment
};

/// Each c_r is integrated as an adaptive body on [0, s*] plus an
/// exponentially substituted tail on [s*, inf), where s* is past the mode of
/// s^r exp(-psi(s)) and the integrand there is below machine epsilon relative
/// to its peak. The estimated absolute error satisfies err_r <= tol * max(1, c_r).
MomentTable compute_moments(const WeightFunction& w, int r_max, const MomentOptions& opts = {});

/// ||z^alpha||^2 = (n-1)! alpha! c_{|alpha|+n-1} / (|alpha|+n-1)! in F^2 over C^n.
double monomial_norm_sq(const MomentTable& m, const MultiIndex& alpha, int n);

}  // namespace fockpsi
