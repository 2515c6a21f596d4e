#include "fockpsi/polynomial.hpp"

#include <algorithm>

#include "fockpsi/errors.hpp"

namespace fockpsi {

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw InputError("polynomial needs at least one variable");
}

Polynomial::Polynomial(int n, Terms terms) : Polynomial(n) {
  for (auto& [alpha, c] : terms) add_term(alpha, c);
}

Polynomial Polynomial::constant(int n, Complex value) {
  Polynomial p(n);
  p.add_term(MultiIndex::zero(n), value);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, Complex coeff) {
  Polynomial p(alpha.size());
  p.add_term(alpha, coeff);
  return p;
}

Polynomial Polynomial::linear(Complex constant_term, const CVector& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Polynomial p = constant(n, constant_term);
  for (int j = 0; j < n; ++j) p.add_term(MultiIndex::unit(n, j), coeffs(j));
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
  return d;
}

Complex Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, Complex coeff) {
  if (alpha.size() != n_) throw DimensionMismatch("monomial has wrong number of variables");
  if (coeff == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Complex Polynomial::operator()(const CVector& z) const {
  if (z.size() != n_) throw DimensionMismatch("evaluation point has wrong dimension");
  Complex acc{};
  for (const auto& [alpha, c] : terms_) {
    Complex m = c;
    for (int j = 0; j < n_; ++j)
      if (alpha[j] > 0) m *= std::pow(z(j), alpha[j]);
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.n_ != n_) throw DimensionMismatch("polynomial variable counts differ");
  Polynomial out(*this);
  for (const auto& [alpha, c] : o.terms_) out.add_term(alpha, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(Complex s) const {
  Polynomial out(n_);
  if (s == Complex{}) return out;
  for (const auto& [alpha, c] : terms_) out.add_term(alpha, c * s);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  return multiply_truncated(o, std::numeric_limits<int>::max());
}

Polynomial Polynomial::multiply_truncated(const Polynomial& o, int max_degree) const {
  if (o.n_ != n_) throw DimensionMismatch("polynomial variable counts differ");
  Polynomial out(n_);
  for (const auto& [a, ca] : terms_) {
    const int da = a.degree();
    for (const auto& [b, cb] : o.terms_) {
      if (da + b.degree() > max_degree) continue;
      out.add_term(a + b, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::truncated(int max_degree) const {
  Polynomial out(n_);
  for (const auto& [alpha, c] : terms_)
    if (alpha.degree() <= max_degree) out.add_term(alpha, c);
  return out;
}

double Polynomial::max_coefficient_distance(const Polynomial& o) const {
  double worst = 0.0;
  for (const auto& [alpha, c] : (*this - o).terms_) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace fockpsi
