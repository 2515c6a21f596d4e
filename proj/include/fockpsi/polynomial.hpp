#pragma once

#include <map>
#include <vector>

#include "fockpsi/multi_index.hpp"
#include "fockpsi/types.hpp"

namespace fockpsi {

/// Sparse polynomial sum_alpha a_alpha z^alpha in n complex variables.
/// Terms are kept in graded order; exact zeros are never stored.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Complex, GradedOrder>;

  explicit Polynomial(int n = 1);
  Polynomial(int n, Terms terms);

  static Polynomial constant(int n, Complex value);
  static Polynomial monomial(const MultiIndex& alpha, Complex coeff = 1.0);
  // a_0 + sum_j a_j z_j
  static Polynomial linear(Complex constant_term, const CVector& coeffs);

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  Complex coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, Complex coeff);

  Complex operator()(const CVector& z) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

  // Product with all terms of total degree > max_degree dropped.
  Polynomial multiply_truncated(const Polynomial& o, int max_degree) const;
  Polynomial truncated(int max_degree) const;

  // Largest |coefficient| difference against o.
  double max_coefficient_distance(const Polynomial& o) const;

 private:
  int n_;
  Terms terms_;
};

}  // namespace fockpsi
