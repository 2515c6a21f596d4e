#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fockpsi/kernel.hpp"
#include "fockpsi/operators.hpp"

namespace fockpsi {

/// One checked condition. `residual` is normalized by max(1, magnitudes
/// involved) and compared against `threshold`. Informational entries carry a
/// measured value in `residual` and never affect the verdict.
struct Condition {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double threshold = 0.0;
  bool informational = false;
};

/// Outcome of a characterization check. For results that only give necessary
/// conditions `necessary_only` is set and `satisfied` is always false;
/// conditions_pass() then reports whether the necessary conditions hold.
struct Verdict {
  std::string theorem;
  bool satisfied = false;
  bool necessary_only = false;
  std::vector<Condition> conditions;
  std::uint64_t seed = 0;

  bool conditions_pass() const;
  // Largest normalized residual among failing conditions (0 if none fail).
  double failure_margin() const;
  const Condition* find(const std::string& name) const;
};

namespace theorem {
inline constexpr const char* kAdjointCompositionPair = "adjoint-composition-pair";
inline constexpr const char* kSelfAdjointComposition = "self-adjoint-composition";
inline constexpr const char* kAdjointWeightedPair = "adjoint-weighted-pair";
inline constexpr const char* kSelfAdjointWeightedLinear = "self-adjoint-weighted/linear";
inline constexpr const char* kSelfAdjointWeightedConstant = "self-adjoint-weighted/constant";
inline constexpr const char* kSelfAdjointWeightedAffine = "self-adjoint-weighted/affine";
inline constexpr const char* kCoisometryComposition = "coisometry-composition";
inline constexpr const char* kCoisometryUnitaryComposition = "coisometry-unitary-composition";
inline constexpr const char* kCoisometryWeightedLinear = "coisometry-weighted/linear";
inline constexpr const char* kCoisometryWeightedConstant = "coisometry-weighted/constant";
inline constexpr const char* kCoisometryWeightedAffine = "coisometry-weighted/affine";

std::vector<std::string> all();
}  // namespace theorem

struct CheckOptions {
  double tol = 1e-9;         // algebraic matrix conditions
  double series_tol = 1e-7;  // conditions evaluated through kernel series
  double defect_tol = 1e-8;  // truncated-matrix defects
  int samples = 64;
  double radius = 2.0;
  std::uint64_t seed = 20240917;
};

/// `count` seeded points in the ball |z| <= radius of C^n.
std::vector<CVector> sample_ball(int n, int count, double radius, std::uint64_t seed);

/// Both sides of K_z(G2(0)) K_{G1(z)}(w) = K_{G1(0)}(w) K_z(G2(w)).
std::pair<Complex, Complex> adjoint_kernel_identity(const AffineMap& g1, const AffineMap& g2,
                                                    const KernelEvaluator& ev, const CVector& z,
                                                    const CVector& w);

/// Both sides of sum_r r(r-1)..(r-n+2)/c_r <(C*)^{-1}D, D>^{r-n+1}
///            = sum_r r(r-1)..(r-n+2)/c_r <C^{-1}D, D>^{r-n+1}.
/// Throws SingularMatrix when C is not invertible.
std::pair<Complex, Complex> series_balance(const AffineMap& g, const KernelEvaluator& ev);

// C_{G1}^* = C_{G2}  iff  D1 = 0, D2 = 0, C1^* = C2.
Verdict adjoint_composition_pair(const AffineMap& g1, const AffineMap& g2,
                                 const CheckOptions& opts = {});

// C_G self-adjoint  iff  D = 0 and C Hermitian.
Verdict is_self_adjoint_composition(const AffineMap& g, const CheckOptions& opts = {});

// C_{U1,G1}^* = C_{U2,G2}: multiplier shape plus the zero case or the kernel identity.
Verdict adjoint_weighted_pair(const WeightSymbol& u1, const AffineMap& g1, const WeightSymbol& u2,
                              const AffineMap& g2, const KernelEvaluator& ev,
                              const CheckOptions& opts = {});

// Dispatches on D = 0, constant Gamma, or invertible C with D != 0.
Verdict self_adjoint_weighted(const WeightSymbol& u, const AffineMap& g, const KernelEvaluator& ev,
                              const CheckOptions& opts = {});

// C_G co-isometry iff D = 0 and C unitary.
Verdict is_coisometry_composition(const AffineMap& g, const CheckOptions& opts = {});

// Co-isometry check plus truncated-matrix confirmation that C_G is unitary.
Verdict coisometry_equals_unitary_composition(const AffineMap& g, const KernelEvaluator& ev,
                                              int max_degree, const CheckOptions& opts = {});

/// Weighted co-isometry. The affine branch reads the map as Gamma(z) = C z - D,
/// so D is the negated stored shift.
Verdict is_coisometry_weighted(const WeightSymbol& u, const AffineMap& g, const KernelEvaluator& ev,
                               const CheckOptions& opts = {});

}  // namespace fockpsi
