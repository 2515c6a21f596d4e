#include "fockpsi/operators.hpp"

#include <cmath>
#include <sstream>

#include "fockpsi/errors.hpp"
#include "fockpsi/linalg.hpp"

namespace fockpsi {

// ---------------------------------------------------------------- AffineMap

AffineMap::AffineMap(CMatrix linear, CVector shift) : c_(std::move(linear)), d_(std::move(shift)) {
  if (c_.rows() < 1 || c_.rows() != c_.cols())
    throw DimensionMismatch("affine map needs a square, non-empty linear part");
  if (d_.size() != c_.rows()) throw DimensionMismatch("affine shift length differs from matrix size");
}

AffineMap AffineMap::identity(int n) { return {CMatrix::Identity(n, n), CVector::Zero(n)}; }

AffineMap AffineMap::linear(CMatrix c) {
  const auto n = c.rows();
  return {std::move(c), CVector::Zero(n)};
}

AffineMap AffineMap::constant(CVector d) {
  const auto n = d.size();
  return {CMatrix::Zero(n, n), std::move(d)};
}

CVector AffineMap::operator()(const CVector& z) const {
  if (z.size() != n()) throw DimensionMismatch("point dimension differs from affine map");
  return c_ * z + d_;
}

double AffineMap::operator_norm() const { return fockpsi::operator_norm(c_); }

bool AffineMap::is_constant(double tol) const { return max_abs_entry(c_) <= tol; }

Polynomial AffineMap::component(int i) const { return Polynomial::linear(d_(i), c_.row(i).transpose()); }

// ------------------------------------------------------------- WeightSymbol

int WeightSymbol::degree() const {
  switch (kind()) {
    case Kind::Zero: return -1;
    case Kind::Constant: return as_constant().value == Complex{} ? -1 : 0;
    case Kind::KernelMultiple: return as_kernel().alpha == Complex{} ? -1 : kInfiniteDegree;
    case Kind::Polynomial: return as_polynomial().poly.degree();
  }
  return -1;
}

void WeightSymbol::check_dimension(int n) const {
  if (kind() == Kind::KernelMultiple && as_kernel().q.size() != n)
    throw DimensionMismatch("kernel multiplier center has wrong dimension");
  if (kind() == Kind::Polynomial && as_polynomial().poly.n() != n)
    throw DimensionMismatch("polynomial multiplier has wrong number of variables");
}

Complex WeightSymbol::operator()(const CVector& z, const KernelEvaluator* ev) const {
  switch (kind()) {
    case Kind::Zero: return {};
    case Kind::Constant: return as_constant().value;
    case Kind::KernelMultiple: {
      if (ev == nullptr) throw InputError("kernel multiplier needs a kernel evaluator");
      const auto& k = as_kernel();
      return k.alpha * ev->kernel_eval(k.q, z);
    }
    case Kind::Polynomial: return as_polynomial().poly(z);
  }
  return {};
}

Polynomial WeightSymbol::to_polynomial(int n, const KernelEvaluator* ev, int max_degree) const {
  check_dimension(n);
  switch (kind()) {
    case Kind::Zero: return Polynomial(n);
    case Kind::Constant: return Polynomial::constant(n, as_constant().value);
    case Kind::KernelMultiple: {
      if (ev == nullptr) throw InputError("kernel multiplier needs a kernel evaluator");
      const auto& k = as_kernel();
      return ev->kernel_polynomial(k.q, max_degree) * k.alpha;
    }
    case Kind::Polynomial: return as_polynomial().poly;
  }
  return Polynomial(n);
}

std::string WeightSymbol::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Zero: os << "zero"; break;
    case Kind::Constant: os << "constant " << as_constant().value; break;
    case Kind::KernelMultiple: {
      const auto& k = as_kernel();
      os << k.alpha << " * K_(";
      for (int j = 0; j < k.q.size(); ++j) os << (j ? "," : "") << k.q(j);
      os << ")";
      break;
    }
    case Kind::Polynomial:
      os << "polynomial with " << as_polynomial().poly.terms().size() << " terms";
      break;
  }
  return os.str();
}

// ------------------------------------------------------------------- apply

Complex AppliedImage::operator()(const CVector& z, const KernelEvaluator* ev) const {
  return factor(z, ev) * composed(z);
}

Polynomial AppliedImage::expand(const KernelEvaluator* ev, int max_degree) const {
  const Polynomial u = factor.to_polynomial(composed.n(), ev, max_degree);
  return u.multiply_truncated(composed, max_degree);
}

Polynomial compose(const Polynomial& f, const AffineMap& gamma) {
  const int n = gamma.n();
  if (f.n() != n) throw DimensionMismatch("polynomial and affine map dimensions differ");
  const int deg = std::max(f.degree(), 0);

  // powers[i][k] = Gamma_i^k
  std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = powers[static_cast<std::size_t>(i)];
    row.push_back(Polynomial::constant(n, 1.0));
    const Polynomial gi = gamma.component(i);
    for (int k = 1; k <= deg; ++k) row.push_back(row.back() * gi);
  }

  Polynomial out(n);
  for (const auto& [alpha, coeff] : f.terms()) {
    Polynomial term = Polynomial::constant(n, coeff);
    for (int i = 0; i < n; ++i)
      if (alpha[i] > 0) term = term * powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(alpha[i])];
    out = out + term;
  }
  return out;
}

AppliedImage apply(const WeightSymbol& u, const AffineMap& gamma, const Polynomial& f,
                   int max_degree) {
  u.check_dimension(gamma.n());
  Polynomial composed = compose(f, gamma);
  if (u.kind() == WeightSymbol::Kind::KernelMultiple) {
    if (composed.degree() > max_degree)
      throw DegreeOverflow("composed polynomial exceeds the configured degree");
    return {std::move(composed), u};
  }
  Polynomial folded = u.to_polynomial(gamma.n(), nullptr, max_degree) * composed;
  if (folded.degree() > max_degree) {
    std::ostringstream os;
    os << "image degree " << folded.degree() << " exceeds the configured maximum " << max_degree;
    throw DegreeOverflow(os.str());
  }
  return {std::move(folded), WeightSymbol::constant(1.0)};
}

KernelImage adjoint_on_kernel(const WeightSymbol& u, const AffineMap& gamma, const CVector& z,
                              const KernelEvaluator* ev) {
  u.check_dimension(gamma.n());
  return {std::conj(u(z, ev)), gamma(z)};
}

// -------------------------------------------------------- truncated matrix

namespace {

using Dense = std::vector<Complex>;

Dense to_dense(const Polynomial& p, const MonomialBasis& basis) {
  Dense out(basis.size());
  for (const auto& [alpha, c] : p.terms()) {
    const long pos = basis.position(alpha);
    if (pos >= 0) out[static_cast<std::size_t>(pos)] += c;
  }
  return out;
}

std::vector<std::size_t> support(const Dense& a) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != Complex{}) s.push_back(i);
  return s;
}

// Product of dense coefficient vectors with degrees above the basis dropped.
Dense multiply(const Dense& a, const Dense& b, const MonomialBasis& basis) {
  Dense out(basis.size());
  const auto sa = support(a), sb = support(b);
  for (std::size_t i : sa)
    for (std::size_t j : sb) {
      const long k = basis.sum_position(i, j);
      if (k >= 0) out[static_cast<std::size_t>(k)] += a[i] * b[j];
    }
  return out;
}

}  // namespace

std::size_t TruncatedOperator::guard_size() const {
  std::size_t count = 0;
  for (const auto& alpha : index)
    if (alpha.degree() <= max_degree - guard) ++count;
  return count;
}

TruncatedOperator truncated_matrix(const WeightSymbol& u, const AffineMap& gamma,
                                   const KernelEvaluator& ev, int max_degree) {
  const int n = gamma.n();
  if (ev.n() != n) throw DimensionMismatch("kernel evaluator dimension differs from the symbol");
  if (max_degree < 0) throw InputError("truncation degree must be non-negative");
  u.check_dimension(n);

  const MonomialBasis basis(n, max_degree);
  const std::size_t dim = basis.size();

  std::vector<double> norms(dim);
  for (std::size_t i = 0; i < dim; ++i)
    norms[i] = std::sqrt(monomial_norm_sq(ev.moments(), basis.at(i), n));

  TruncatedOperator t;
  t.n = n;
  t.max_degree = max_degree;
  t.index = basis.indices();
  t.matrix = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const int udeg = u.degree();
  const bool exact_guard = gamma.shift().isZero(0.0) && udeg != WeightSymbol::kInfiniteDegree;
  t.guard = exact_guard ? std::min(std::max(udeg, 0), max_degree) : max_degree / 2;
  if (udeg < 0) return t;

  const Dense udense = to_dense(u.to_polynomial(n, &ev, max_degree), basis);
  std::vector<Dense> gamma_dense;
  for (int i = 0; i < n; ++i) gamma_dense.push_back(to_dense(gamma.component(i), basis));

  // images[a] = z^alpha o Gamma, truncated; built from the parent alpha - e_i.
  std::vector<Dense> images(dim);
  images[0] = Dense(dim);
  images[0][0] = 1.0;
  for (std::size_t a = 1; a < dim; ++a) {
    const MultiIndex& alpha = basis.at(a);
    int i = 0;
    while (alpha[i] == 0) ++i;
    std::vector<int> parent = alpha.exponents();
    --parent[static_cast<std::size_t>(i)];
    const long p = basis.position(MultiIndex(std::move(parent)));
    images[a] = multiply(images[static_cast<std::size_t>(p)], gamma_dense[static_cast<std::size_t>(i)], basis);
  }

  for (std::size_t a = 0; a < dim; ++a) {
    const Dense col = multiply(udense, images[a], basis);
    for (std::size_t b = 0; b < dim; ++b)
      if (col[b] != Complex{})
        t.matrix(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
            col[b] * norms[b] / norms[a];
  }
  return t;
}

double defect_self_adjoint(const TruncatedOperator& t) {
  const auto g = static_cast<Eigen::Index>(t.guard_size());
  const CMatrix block = t.matrix.topLeftCorner(g, g);
  const CMatrix skew = block - block.adjoint();
  return hermitian_spectral_norm(Complex(0.0, 1.0) * skew);
}

double defect_coisometry(const TruncatedOperator& t) {
  const auto g = static_cast<Eigen::Index>(t.guard_size());
  const CMatrix rows = t.matrix.topRows(g);
  const CMatrix gram = rows * rows.adjoint() - CMatrix::Identity(g, g);
  return hermitian_spectral_norm(gram);
}

double defect_isometry(const TruncatedOperator& t) {
  const auto g = static_cast<Eigen::Index>(t.guard_size());
  const CMatrix cols = t.matrix.leftCols(g);
  const CMatrix gram = cols.adjoint() * cols - CMatrix::Identity(g, g);
  return hermitian_spectral_norm(gram);
}

double defect_adjoint_pair(const TruncatedOperator& t1, const TruncatedOperator& t2) {
  if (t1.n != t2.n || t1.max_degree != t2.max_degree)
    throw DimensionMismatch("truncated operators live on different bases");
  const auto g = static_cast<Eigen::Index>(std::min(t1.guard_size(), t2.guard_size()));
  const CMatrix diff = t1.matrix.topLeftCorner(g, g).adjoint() - t2.matrix.topLeftCorner(g, g);
  return operator_norm(diff);
}

CVector kernel_coordinates(const TruncatedOperator& t, const KernelEvaluator& ev, const CVector& z) {
  if (z.size() != t.n) throw DimensionMismatch("kernel point has wrong dimension");
  CVector out(static_cast<Eigen::Index>(t.index.size()));
  for (std::size_t i = 0; i < t.index.size(); ++i) {
    const MultiIndex& beta = t.index[i];
    Complex m = 1.0;
    for (int j = 0; j < t.n; ++j)
      if (beta[j] > 0) m *= std::pow(z(j), beta[j]);
    const double norm = std::sqrt(monomial_norm_sq(ev.moments(), beta, t.n));
    out(static_cast<Eigen::Index>(i)) = std::conj(m / norm);
  }
  return out;
}

}  // namespace fockpsi
