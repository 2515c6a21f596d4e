#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fockpsi {

using RealFunction = std::function<double(double)>;

/// The weight psi of the space, with up to three derivatives.
///
/// Derivatives that are not supplied in closed form are estimated by central
/// finite differences of psi with step h = max(1e-5, 1e-5 * y). Instances are
/// immutable once built and may be shared across threads.
class WeightFunction {
 public:
  WeightFunction(std::string name, RealFunction psi,
                 std::optional<RealFunction> d1 = std::nullopt,
                 std::optional<RealFunction> d2 = std::nullopt,
                 std::optional<RealFunction> d3 = std::nullopt,
                 double y_max = 1e3);

  const std::string& name() const { return name_; }
  double y_max() const { return y_max_; }

  double psi(double y) const { return psi_(y); }
  double d1(double y) const;
  double d2(double y) const;
  double d3(double y) const;

  // Derivative of the given order (0..3).
  double derivative(int order, double y) const;
  bool has_closed_form(int order) const;

  static double fd_step(double y);

 private:
  std::string name_;
  RealFunction psi_;
  std::optional<RealFunction> d1_, d2_, d3_;
  double y_max_;
};

// psi(y) = a * y, the classical Fock weight when a = 1.
WeightFunction linear_weight(double a = 1.0);
// psi(y) = y + y^2.
WeightFunction linear_quadratic_weight();
// psi(y) = sum_k coeffs[k] * y^k with closed-form derivatives.
WeightFunction polynomial_weight(std::vector<double> coeffs, std::string name = "polynomial");

struct AdmissibilityWitness {
  double worst_y = 0.0;      // grid point attaining the smallest psi' margin
  double min_d1 = 0.0;
  double min_d2 = 0.0;
  double min_d3 = 0.0;
  double max_tail_ratio = 0.0;
  double tail_ratio_y = 0.0;
};

/// Result of the admissibility checks. smoothness_ok is a sampled proxy for
/// an asymptotic condition: it can falsify but never prove it.
struct AdmissibilityReport {
  bool growth_ok = false;
  bool smoothness_ok = false;
  double l_used = 0.0;
  double tail_ratio_bound = 0.0;
  AdmissibilityWitness witness;
};

struct AdmissibilityOptions {
  double tol = 1e-12;
  double tail_ratio_bound = 1e3;
};

// 64 log-spaced points in [1e-2, 1e3].
std::vector<double> default_weight_grid();

/// Checks psi' > 0, psi'' >= -tol, psi''' >= -tol at every grid point, and
/// that phi''(y) / (y^{-1/2} phi'(y)^{1+l}) stays below the configured bound
/// over the upper half of the grid, where phi(y) = y psi'(y).
AdmissibilityReport check_admissible(const WeightFunction& w, const std::vector<double>& grid,
                                     double l, const AdmissibilityOptions& opts = {});

/// Largest relative discrepancy (floored at 1) between each closed-form
/// derivative and the central difference of the next lower order. Orders
/// without a closed form are skipped.
double finite_difference_discrepancy(const WeightFunction& w, const std::vector<double>& grid);

}  // namespace fockpsi
