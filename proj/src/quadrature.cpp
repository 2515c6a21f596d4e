#include "fockpsi/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "fockpsi/errors.hpp"

namespace fockpsi::quad {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b;
  PanelEstimate est;
  bool operator<(const Panel& o) const { return est.error < o.est.error; }
};

}  // namespace

PanelEstimate gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 15> fv{};
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    fv[static_cast<std::size_t>(j)] = f(center - dx);
    fv[static_cast<std::size_t>(14 - j)] = f(center + dx);
  }

  double kronrod = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  double abs_sum = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[static_cast<std::size_t>(j)] + fv[static_cast<std::size_t>(14 - j)];
    kronrod += kWgk[static_cast<std::size_t>(j)] * pair;
    abs_sum += kWgk[static_cast<std::size_t>(j)] *
               (std::abs(fv[static_cast<std::size_t>(j)]) +
                std::abs(fv[static_cast<std::size_t>(14 - j)]));
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    asc += kWgk[static_cast<std::size_t>(j)] *
           (std::abs(fv[static_cast<std::size_t>(j)] - mean) +
            std::abs(fv[static_cast<std::size_t>(14 - j)] - mean));

  const double habs = std::abs(half);
  PanelEstimate out;
  out.value = kronrod * half;
  out.abs_value = abs_sum * habs;
  asc *= habs;
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (out.abs_value > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * out.abs_value, err);
  out.error = err;
  return out;
}

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts) {
  Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  std::vector<double> cuts{a};
  for (double bp : opts.breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> heap;
  double total = 0.0, total_err = 0.0;
  const int per_segment = std::max(1, opts.initial_panels);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double h = (cuts[s + 1] - cuts[s]) / per_segment;
    for (int k = 0; k < per_segment; ++k) {
      const double lo = cuts[s] + k * h;
      const double hi = (k + 1 == per_segment) ? cuts[s + 1] : lo + h;
      Panel p{lo, hi, gauss_kronrod15(f, lo, hi)};
      res.evaluations += 15;
      total += p.est.value;
      total_err += p.est.error;
      heap.push(p);
    }
  }

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  std::vector<Panel> frozen;  // panels too narrow to bisect further
  while (total_err > target() && !heap.empty()) {
    if (res.evaluations + 30 > opts.max_evaluations)
      throw QuadratureBudgetExceeded("adaptive quadrature exceeded " +
                                     std::to_string(opts.max_evaluations) + " evaluations");
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    Panel left{worst.a, mid, gauss_kronrod15(f, worst.a, mid)};
    Panel right{mid, worst.b, gauss_kronrod15(f, mid, worst.b)};
    res.evaluations += 30;
    total += left.est.value + right.est.value - worst.est.value;
    total_err += left.est.error + right.est.error - worst.est.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from scratch to drop the drift of incremental updates.
  total = 0.0;
  total_err = 0.0;
  res.panels = heap.size() + frozen.size();
  for (const auto& p : frozen) {
    total += p.est.value;
    total_err += p.est.error;
  }
  while (!heap.empty()) {
    total += heap.top().est.value;
    total_err += heap.top().est.error;
    heap.pop();
  }
  res.value = total;
  res.abs_error = total_err;
  res.converged = total_err <= target();
  return res;
}

}  // namespace fockpsi::quad
