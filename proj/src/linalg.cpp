#include "fockpsi/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fockpsi/errors.hpp"

namespace fockpsi {

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 16 && a.cols() <= 16) return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
  return Eigen::BDCSVD<CMatrix>(a).singularValues()(0);
}

double hermitian_spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double max_abs_entry(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

CMatrix checked_inverse(const CMatrix& a, double rcond_floor) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= rcond_floor * std::max(1.0, sv(0)))
    throw SingularMatrix("matrix is singular to working precision");
  return a.fullPivLu().inverse();
}

}  // namespace fockpsi
