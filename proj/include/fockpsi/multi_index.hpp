#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace fockpsi {

/// Exponent vector alpha = (alpha_1, ..., alpha_n) of the monomial z^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(int n);
  static MultiIndex unit(int n, int i);

  int size() const { return static_cast<int>(e_.size()); }
  int degree() const;
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return e_; }

  double factorial() const;  // alpha_1! * ... * alpha_n!
  MultiIndex operator+(const MultiIndex& o) const;
  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> e_;
};

/// Graded order: total degree first, then lexicographically descending, so
/// for n = 2 the sequence is 1, z1, z2, z1^2, z1 z2, z2^2, ...
struct GradedOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of total degree <= max_degree in graded order.
std::vector<MultiIndex> graded_indices(int n, int max_degree);

/// binomial(k + m, m) as a double; exact for the small sizes used here.
double binomial(int top, int bottom);
double factorial(int k);

/// Dense index set { alpha : |alpha| <= max_degree } with position lookup
/// and a precomputed addition table for truncated polynomial products.
class MonomialBasis {
 public:
  MonomialBasis(int n, int max_degree);

  int n() const { return n_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return index_.size(); }
  const std::vector<MultiIndex>& indices() const { return index_; }
  const MultiIndex& at(std::size_t i) const { return index_[i]; }
  int degree(std::size_t i) const { return degree_[i]; }

  // Position of alpha, or -1 when |alpha| exceeds max_degree.
  long position(const MultiIndex& alpha) const;
  // Position of index[i] + index[j], or -1 when the sum exceeds max_degree.
  long sum_position(std::size_t i, std::size_t j) const;
  // Number of basis elements of degree <= d.
  std::size_t count_up_to(int d) const;

 private:
  int n_;
  int max_degree_;
  std::vector<MultiIndex> index_;
  std::vector<int> degree_;
  std::map<MultiIndex, long> lookup_;
  std::vector<long> sum_table_;  // empty when the basis is too large to tabulate
};

}  // namespace fockpsi
