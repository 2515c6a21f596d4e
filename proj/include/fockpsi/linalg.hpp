#pragma once

#include "fockpsi/types.hpp"

namespace fockpsi {

// Largest singular value.
double operator_norm(const CMatrix& a);
// Same as operator_norm, via the Hermitian eigen-solver when a is Hermitian.
double hermitian_spectral_norm(const CMatrix& a);
double max_abs_entry(const CMatrix& a);

// Throws SingularMatrix when a is numerically singular.
CMatrix checked_inverse(const CMatrix& a, double rcond_floor = 1e-12);

}  // namespace fockpsi
