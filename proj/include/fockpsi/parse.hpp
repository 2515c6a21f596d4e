#pragma once

#include <string>

#include "fockpsi/operators.hpp"
#include "fockpsi/types.hpp"
#include "fockpsi/weights.hpp"

namespace fockpsi {

// Text literals used on the command line and in config files. All parsers
// throw InputError on malformed input.

/// "1.5", "-2", "i", "-0.5i", "1+2i", "3-4e-2i" ('j' accepted for 'i').
Complex parse_complex(const std::string& text);

/// Comma-separated complex entries, e.g. "1,0.5i".
CVector parse_vector(const std::string& text);

/// Row-major "a,b;c,d" or a named n x n matrix: "I" / "id", "0" / "zero",
/// "projKK" (1 at (K,K), 1-based single digits, e.g. "proj11").
CMatrix parse_matrix(const std::string& text, int n);

/// Affine map "MATRIX|SHIFT" with SHIFT a vector or "0". Without '|', a named
/// matrix may be followed by ";SHIFT" (e.g. "proj11;0"); otherwise the text
/// is a matrix and the shift is zero.
AffineMap parse_gamma(const std::string& text, int n);

/// Multiplier: "0" / "zero", a complex constant (optionally "const:c"),
/// "kernel:ALPHA@q1,q2" for ALPHA * K_q, or "poly:COEF@e1,e2;COEF@e1,e2".
WeightSymbol parse_symbol(const std::string& text, int n);

/// "linear", "linear:a", "linear-quadratic", "poly:c0,c1,...".
WeightFunction parse_weight(const std::string& text);

}  // namespace fockpsi
