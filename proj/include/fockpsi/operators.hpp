#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "fockpsi/kernel.hpp"
#include "fockpsi/multi_index.hpp"
#include "fockpsi/polynomial.hpp"
#include "fockpsi/types.hpp"

namespace fockpsi {

/// Symbol Gamma(z) = C z + D of a composition operator. The shift is stored
/// literally; callers using the Gamma(z) = C z - D convention negate it.
class AffineMap {
 public:
  AffineMap(CMatrix linear, CVector shift);

  static AffineMap identity(int n);
  static AffineMap linear(CMatrix c);
  static AffineMap constant(CVector d);

  int n() const { return static_cast<int>(c_.rows()); }
  const CMatrix& linear_part() const { return c_; }
  const CVector& shift() const { return d_; }

  CVector operator()(const CVector& z) const;
  double operator_norm() const;  // ||C||, largest singular value
  bool is_linear(double tol) const { return d_.norm() <= tol; }
  bool is_constant(double tol) const;

  // Gamma_i as a degree-one polynomial.
  Polynomial component(int i) const;

 private:
  CMatrix c_;
  CVector d_;
};

struct ZeroSymbol {};
struct ConstantSymbol {
  Complex value;
};
// U(z) = alpha * K_q(z)
struct KernelSymbol {
  Complex alpha;
  CVector q;
};
struct PolynomialSymbol {
  Polynomial poly;
};

/// Multiplier U of a weighted composition operator, restricted to the forms
/// the characterization results produce.
class WeightSymbol {
 public:
  enum class Kind { Zero, Constant, KernelMultiple, Polynomial };
  static constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

  static WeightSymbol zero() { return WeightSymbol(ZeroSymbol{}); }
  static WeightSymbol constant(Complex u) { return WeightSymbol(ConstantSymbol{u}); }
  static WeightSymbol kernel_multiple(Complex alpha, CVector q) {
    return WeightSymbol(KernelSymbol{alpha, std::move(q)});
  }
  static WeightSymbol polynomial(Polynomial p) { return WeightSymbol(PolynomialSymbol{std::move(p)}); }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  const ZeroSymbol& as_zero() const { return std::get<ZeroSymbol>(v_); }
  const ConstantSymbol& as_constant() const { return std::get<ConstantSymbol>(v_); }
  const KernelSymbol& as_kernel() const { return std::get<KernelSymbol>(v_); }
  const PolynomialSymbol& as_polynomial() const { return std::get<PolynomialSymbol>(v_); }

  // -1 for Zero, kInfiniteDegree for KernelMultiple.
  int degree() const;
  // Throws DimensionMismatch when the symbol is tied to another dimension.
  void check_dimension(int n) const;

  // The evaluator is only consulted for KernelMultiple symbols.
  Complex operator()(const CVector& z, const KernelEvaluator* ev = nullptr) const;

  // Exact for finite-degree symbols; KernelMultiple is cut at max_degree.
  Polynomial to_polynomial(int n, const KernelEvaluator* ev, int max_degree) const;

  std::string describe() const;

 private:
  using Variant = std::variant<ZeroSymbol, ConstantSymbol, KernelSymbol, PolynomialSymbol>;
  explicit WeightSymbol(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// f o Gamma with the multiplier kept separate. Finite-degree multipliers are
/// folded into `composed` (factor becomes Constant(1)); a KernelMultiple
/// factor is kept symbolic.
struct AppliedImage {
  Polynomial composed;
  WeightSymbol factor;

  Complex operator()(const CVector& z, const KernelEvaluator* ev = nullptr) const;
  Polynomial expand(const KernelEvaluator* ev, int max_degree) const;
};

Polynomial compose(const Polynomial& f, const AffineMap& gamma);

/// C_{U,Gamma} f = U * (f o Gamma). Throws DegreeOverflow when the folded
/// result exceeds max_degree.
AppliedImage apply(const WeightSymbol& u, const AffineMap& gamma, const Polynomial& f,
                   int max_degree = 64);

/// C_{U,Gamma}^* K_z = scalar * K_point.
struct KernelImage {
  Complex scalar;
  CVector point;
};
KernelImage adjoint_on_kernel(const WeightSymbol& u, const AffineMap& gamma, const CVector& z,
                              const KernelEvaluator* ev = nullptr);

/// Finite section of C_{U,Gamma} on the orthonormal monomials
/// e_alpha = z^alpha / ||z^alpha|| with |alpha| <= N, in graded order.
/// M(beta, alpha) = <C_{U,Gamma} e_alpha, e_beta>.
///
/// `guard` is the number of top degrees excluded when measuring defects:
/// deg U when D = 0 and U has finite degree, N/2 otherwise.
struct TruncatedOperator {
  int n = 0;
  int max_degree = 0;
  int guard = 0;
  std::vector<MultiIndex> index;
  CMatrix matrix;

  std::size_t guard_size() const;
};

TruncatedOperator truncated_matrix(const WeightSymbol& u, const AffineMap& gamma,
                                   const KernelEvaluator& ev, int max_degree);

// Spectral norm of M - M^dagger on the guard block.
double defect_self_adjoint(const TruncatedOperator& t);
// Spectral norm of M M^dagger - I on the guard block.
double defect_coisometry(const TruncatedOperator& t);
// Spectral norm of M^dagger M - I on the guard block.
double defect_isometry(const TruncatedOperator& t);
// Spectral norm of T1^dagger - T2 on the common guard block.
double defect_adjoint_pair(const TruncatedOperator& t1, const TruncatedOperator& t2);

/// Coordinates <K_z, e_beta> = conj(e_beta(z)) of the reproducing kernel in
/// the basis of t.
CVector kernel_coordinates(const TruncatedOperator& t, const KernelEvaluator& ev, const CVector& z);

}  // namespace fockpsi
