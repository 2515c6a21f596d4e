#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fockpsi::quad {

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;  // integral of |f| under the same rule
};

// 15-point Kronrod rule with the embedded 7-point Gauss rule for the error
// estimate (QUADPACK error scaling).
PanelEstimate gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  std::size_t max_evaluations = 1'000'000;
  std::vector<double> breakpoints;  // interior points used for the initial split
  int initial_panels = 8;           // uniform panels per breakpoint segment
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod integration on [a, b]: the panel with the
/// largest error estimate is bisected until the summed estimate drops below
/// max(abs_tol, rel_tol * |value|). Throws QuadratureBudgetExceeded when the
/// evaluation budget runs out first.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace fockpsi::quad
