#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fockpsi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// <w, z> = sum_j w_j * conj(z_j). Linear in the first slot.
inline Complex inner(const CVector& w, const CVector& z) {
  return z.dot(w);  // Eigen's dot conjugates its left operand.
}

}  // namespace fockpsi
