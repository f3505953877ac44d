#include "qzec/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace qzec {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, int dim_a, int dim_b, Subsystem keep) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (dim_a < 1 || dim_b < 1 || m.rows() != n || m.cols() != n)
    throw std::invalid_argument("partial_trace: matrix side does not match dim_a * dim_b");
  if (keep == Subsystem::A) {
    CMatrix out = zeros(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  CMatrix out = zeros(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

double frobenius_norm(const CMatrix& m) { return m.norm(); }

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace();
}

EigDecomposition hermitian_eig(const CMatrix& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_eig: matrix is not square");
  const double defect = hermiticity_defect(h);
  const double scale = std::max(1.0, h.norm());
  if (defect > 1e-10 * scale)
    throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");
  CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  // Eigen returns ascending order; flip to non-increasing.
  const Eigen::Index n = sym.rows();
  EigDecomposition out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  (void)n;
  return out;
}

int rank_with_tol(const CMatrix& h, double rel_tol) {
  EigDecomposition eig = hermitian_eig(h);
  const double lead = eig.eigenvalues.size() ? eig.eigenvalues(0) : 0.0;
  const double cutoff = rel_tol * std::max(lead, 1e-300);
  int count = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > cutoff) ++count;
  return count;
}

CVector vectorize(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("vectorize: matrix is not square");
  const Eigen::Index d = a.rows();
  CVector v(d * d);
  for (Eigen::Index s = 0; s < d; ++s)
    for (Eigen::Index t = 0; t < d; ++t)
      v(s * d + t) = a(s, t);
  return v;
}

CMatrix identity(int d) { return CMatrix::Identity(d, d); }
CMatrix zeros(int rows, int cols) { return CMatrix::Zero(rows, cols); }

std::vector<CMatrix> traceless_hermitian_basis(int d) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<size_t>(d) * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix sym = zeros(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.push_back(sym);
      CMatrix asym = zeros(d, d);
      asym(j, k) = Complex(0, -inv_sqrt2);
      asym(k, j) = Complex(0, inv_sqrt2);
      basis.push_back(asym);
    }
  }
  // diagonal Gell-Mann elements
  for (int l = 1; l < d; ++l) {
    CMatrix diag = zeros(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(diag);
  }
  return basis;
}

std::vector<CMatrix> hermitian_basis(int d) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<size_t>(d) * d);
  basis.push_back(identity(d) / std::sqrt(static_cast<double>(d)));
  auto traceless = traceless_hermitian_basis(d);
  basis.insert(basis.end(), traceless.begin(), traceless.end());
  return basis;
}

}  // namespace qzec
