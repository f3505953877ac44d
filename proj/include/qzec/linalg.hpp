#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace qzec {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Complex = std::complex<double>;

enum class Subsystem { A, B };

struct EigDecomposition {
  RVector eigenvalues;   // sorted non-increasing
  CMatrix eigenvectors;  // columns, orthonormal
};

// Kronecker product with block ordering (a(i,j) * b) at block (i,j).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Partial trace of a matrix on a (dim_a x dim_b) bipartite space.
// keep == A returns Tr_B m (side dim_a); keep == B returns Tr_A m (side dim_b).
CMatrix partial_trace(const CMatrix& m, int dim_a, int dim_b, Subsystem keep);

// Eigendecomposition of a Hermitian matrix. Inputs within 1e-10 of Hermitian
// are symmetrized as (H + H^dag)/2, anything farther is rejected.
EigDecomposition hermitian_eig(const CMatrix& h);

// Number of eigenvalues above rel_tol * max(lambda_max, 1e-300).
int rank_with_tol(const CMatrix& h, double rel_tol = 1e-9);

// Row-major vectorization: entry a(s,t) lands at index s*d + t.
CVector vectorize(const CMatrix& a);

CMatrix identity(int d);
CMatrix zeros(int rows, int cols);

double frobenius_norm(const CMatrix& m);
double hermiticity_defect(const CMatrix& m);
bool all_finite(const CMatrix& m);

// Hilbert-Schmidt inner product Tr(a^dag b).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

// Orthonormal Hermitian basis of the d x d matrices under the HS inner
// product: I/sqrt(d) first, then the traceless generalized Gell-Mann set.
std::vector<CMatrix> hermitian_basis(int d);

// Same basis without the identity direction (d^2 - 1 traceless elements).
std::vector<CMatrix> traceless_hermitian_basis(int d);

}  // namespace qzec
