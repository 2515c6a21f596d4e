#include "fockpsi/weights.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <limits>
#include <stdexcept>
#include <utility>

#include "fockpsi/errors.hpp"

namespace fockpsi {

WeightFunction::WeightFunction(std::string name, RealFunction psi, std::optional<RealFunction> d1,
                               std::optional<RealFunction> d2, std::optional<RealFunction> d3,
                               double y_max)
    : name_(std::move(name)),
      psi_(std::move(psi)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      d3_(std::move(d3)),
      y_max_(y_max) {
  if (!psi_) throw InputError("weight '" + name_ + "' has no psi");
  if (!(y_max_ > 0.0)) throw InputError("weight y_max must be positive");
}

double WeightFunction::fd_step(double y) { return std::max(1e-5, 1e-5 * std::abs(y)); }

double WeightFunction::d1(double y) const {
  if (d1_) return (*d1_)(y);
  const double h = fd_step(y);
  return (psi_(y + h) - psi_(y - h)) / (2.0 * h);
}

double WeightFunction::d2(double y) const {
  if (d2_) return (*d2_)(y);
  const double h = 1e-4 * std::max(1.0, std::abs(y));
  return (psi_(y + h) - 2.0 * psi_(y) + psi_(y - h)) / (h * h);
}

double WeightFunction::d3(double y) const {
  if (d3_) return (*d3_)(y);
  const double h = 1e-3 * std::max(1.0, std::abs(y));
  return (psi_(y + 2 * h) - 2.0 * psi_(y + h) + 2.0 * psi_(y - h) - psi_(y - 2 * h)) /
         (2.0 * h * h * h);
}

double WeightFunction::derivative(int order, double y) const {
  switch (order) {
    case 0: return psi_(y);
    case 1: return d1(y);
    case 2: return d2(y);
    case 3: return d3(y);
    default: throw std::out_of_range("weight derivative order must be 0..3");
  }
}

bool WeightFunction::has_closed_form(int order) const {
  switch (order) {
    case 0: return true;
    case 1: return d1_.has_value();
    case 2: return d2_.has_value();
    case 3: return d3_.has_value();
    default: return false;
  }
}

WeightFunction linear_weight(double a) {
  if (!(a > 0.0)) throw InputError("linear weight slope must be positive");
  std::string name = "linear";
  if (a != 1.0) {
    std::ostringstream os;
    os << std::setprecision(17) << a;
    name += ":" + os.str();
  }
  return WeightFunction(
      std::move(name), [a](double y) { return a * y; }, [a](double) { return a; },
      [](double) { return 0.0; }, [](double) { return 0.0; });
}

WeightFunction linear_quadratic_weight() {
  return WeightFunction(
      "linear-quadratic", [](double y) { return y + y * y; },
      [](double y) { return 1.0 + 2.0 * y; }, [](double) { return 2.0; },
      [](double) { return 0.0; });
}

namespace {

// Horner evaluation of the k-th derivative of sum_j coeffs[j] y^j.
double poly_derivative(const std::vector<double>& coeffs, int k, double y) {
  double acc = 0.0;
  for (int j = static_cast<int>(coeffs.size()) - 1; j >= k; --j) {
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= static_cast<double>(j - i);
    acc = acc * y + falling * coeffs[static_cast<std::size_t>(j)];
  }
  return acc;
}

}  // namespace

WeightFunction polynomial_weight(std::vector<double> coeffs, std::string name) {
  if (coeffs.empty()) throw InputError("polynomial weight needs at least one coefficient");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw InputError("polynomial weight coefficient is not finite");
  auto make = [coeffs](int k) -> RealFunction {
    return [coeffs, k](double y) { return poly_derivative(coeffs, k, y); };
  };
  return WeightFunction(std::move(name), make(0), make(1), make(2), make(3));
}

std::vector<double> default_weight_grid() {
  constexpr int kPoints = 64;
  std::vector<double> grid(kPoints);
  const double lo = std::log10(1e-2), hi = std::log10(1e3);
  for (int i = 0; i < kPoints; ++i)
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (kPoints - 1));
  grid.back() = 1e3;
  return grid;
}

namespace {

void validate_grid(const WeightFunction& w, const std::vector<double>& grid) {
  if (grid.empty()) throw InputError("admissibility grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || grid[i] > w.y_max())
      throw InputError("admissibility grid point outside (0, y_max]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InputError("admissibility grid must be strictly increasing");
  }
}

double finite_or_throw(double v, const WeightFunction& w, int order, double y) {
  if (!std::isfinite(v))
    throw NonFiniteValue("weight '" + w.name() + "' derivative " + std::to_string(order) +
                         " is not finite at y=" + std::to_string(y));
  return v;
}

}  // namespace

AdmissibilityReport check_admissible(const WeightFunction& w, const std::vector<double>& grid,
                                     double l, const AdmissibilityOptions& opts) {
  if (!(l < 0.5)) throw InputError("smoothness exponent l must be below 1/2");
  validate_grid(w, grid);

  AdmissibilityReport rep;
  rep.l_used = l;
  rep.tail_ratio_bound = opts.tail_ratio_bound;
  auto& wit = rep.witness;
  wit.min_d1 = wit.min_d2 = wit.min_d3 = std::numeric_limits<double>::infinity();

  const std::size_t tail_start = grid.size() / 2;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    finite_or_throw(w.psi(y), w, 0, y);
    const double p1 = finite_or_throw(w.d1(y), w, 1, y);
    const double p2 = finite_or_throw(w.d2(y), w, 2, y);
    const double p3 = finite_or_throw(w.d3(y), w, 3, y);
    if (p1 < wit.min_d1) {
      wit.min_d1 = p1;
      wit.worst_y = y;
    }
    wit.min_d2 = std::min(wit.min_d2, p2);
    wit.min_d3 = std::min(wit.min_d3, p3);

    if (i >= tail_start) {
      // phi = y psi'; phi' = psi' + y psi''; phi'' = 2 psi'' + y psi'''.
      const double phi1 = p1 + y * p2;
      const double phi2 = 2.0 * p2 + y * p3;
      const double denom = std::pow(y, -0.5) * std::pow(std::abs(phi1), 1.0 + l);
      double ratio = std::abs(phi2) / denom;
      if (phi2 == 0.0) ratio = 0.0;
      if (!std::isfinite(ratio)) ratio = std::numeric_limits<double>::infinity();
      if (ratio >= wit.max_tail_ratio) {
        wit.max_tail_ratio = ratio;
        wit.tail_ratio_y = y;
      }
    }
  }

  rep.growth_ok = wit.min_d1 > 0.0 && wit.min_d2 >= -opts.tol && wit.min_d3 >= -opts.tol;
  rep.smoothness_ok = wit.max_tail_ratio <= opts.tail_ratio_bound;
  return rep;
}

double finite_difference_discrepancy(const WeightFunction& w, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double y : grid) {
    const double h = WeightFunction::fd_step(y);
    for (int order = 1; order <= 3; ++order) {
      if (!w.has_closed_form(order) || !w.has_closed_form(order - 1)) continue;
      const double fd =
          (w.derivative(order - 1, y + h) - w.derivative(order - 1, y - h)) / (2.0 * h);
      const double exact = w.derivative(order, y);
      worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  return worst;
}

}  // namespace fockpsi
