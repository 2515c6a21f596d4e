#include "fockpsi/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fockpsi/errors.hpp"

namespace fockpsi {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int v : e_)
    if (v < 0) throw InputError("multi-index exponents must be non-negative");
}

MultiIndex MultiIndex::zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }

MultiIndex MultiIndex::unit(int n, int i) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int v : e_) f *= fockpsi::factorial(v);
  return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.size() != size()) throw DimensionMismatch("multi-index length mismatch");
  std::vector<int> e(e_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e_[i];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
  os << ')';
  return os.str();
}

bool GradedOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return b < a;
}

namespace {

void enumerate_degree(int n, int d, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(d);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = d; k >= 0; --k) {
    prefix.push_back(k);
    enumerate_degree(n, d - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> graded_indices(int n, int max_degree) {
  if (n < 1) throw InputError("dimension n must be at least 1");
  if (max_degree < 0) throw InputError("max degree must be non-negative");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  for (int d = 0; d <= max_degree; ++d) enumerate_degree(n, d, prefix, out);
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int top, int bottom) {
  if (bottom < 0 || bottom > top) return 0.0;
  bottom = std::min(bottom, top - bottom);
  double b = 1.0;
  for (int i = 1; i <= bottom; ++i) b = b * (top - bottom + i) / i;
  return std::round(b);
}

MonomialBasis::MonomialBasis(int n, int max_degree)
    : n_(n), max_degree_(max_degree), index_(graded_indices(n, max_degree)) {
  degree_.reserve(index_.size());
  for (std::size_t i = 0; i < index_.size(); ++i) {
    degree_.push_back(index_[i].degree());
    lookup_.emplace(index_[i], static_cast<long>(i));
  }
  constexpr std::size_t kMaxTabulated = 4096;
  if (index_.size() <= kMaxTabulated) {
    const std::size_t dim = index_.size();
    sum_table_.assign(dim * dim, -1);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (degree_[i] + degree_[j] <= max_degree_)
          sum_table_[i * dim + j] = lookup_.at(index_[i] + index_[j]);
  }
}

long MonomialBasis::position(const MultiIndex& alpha) const {
  if (alpha.size() != n_) throw DimensionMismatch("multi-index length does not match basis");
  auto it = lookup_.find(alpha);
  return it == lookup_.end() ? -1 : it->second;
}

long MonomialBasis::sum_position(std::size_t i, std::size_t j) const {
  if (!sum_table_.empty()) return sum_table_[i * index_.size() + j];
  if (degree_[i] + degree_[j] > max_degree_) return -1;
  return lookup_.at(index_[i] + index_[j]);
}

std::size_t MonomialBasis::count_up_to(int d) const {
  if (d < 0) return 0;
  if (d >= max_degree_) return index_.size();
  return static_cast<std::size_t>(binomial(d + n_, n_));
}

}  // namespace fockpsi
