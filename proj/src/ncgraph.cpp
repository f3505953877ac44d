#include "qzec/ncgraph.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace qzec {

namespace {

CVector flatten(const CMatrix& m) {
  CVector v(m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(idx++) = m(r, c);
  return v;
}

int svd_rank(const CMatrix& stacked, double rel_tol, CMatrix* column_basis = nullptr) {
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * std::max(sv.size() ? sv(0) : 0.0, 1e-300);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (column_basis) *column_basis = svd.matrixU().leftCols(rank);
  return rank;
}

}  // namespace

OperatorSpaceBasis operator_space_basis(const std::vector<CMatrix>& ops, double rel_tol) {
  if (ops.empty())
    throw std::invalid_argument("operator_space_basis: empty generating set");
  const Eigen::Index rows = ops.front().rows(), cols = ops.front().cols();
  CMatrix stacked(rows * cols, static_cast<Eigen::Index>(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != rows || ops[i].cols() != cols)
      throw std::invalid_argument("operator_space_basis: mixed operator shapes");
    stacked.col(static_cast<Eigen::Index>(i)) = flatten(ops[i]);
  }
  if (stacked.norm() < 1e-300)
    throw std::invalid_argument("operator_space_basis: all-zero generating set");
  CMatrix u;
  const int rank = svd_rank(stacked, rel_tol, &u);
  OperatorSpaceBasis out;
  out.dim_operators = static_cast<int>(rows);
  for (int i = 0; i < rank; ++i) {
    CMatrix g(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = u(idx++, i);
    out.basis.push_back(g);
  }
  return out;
}

int noncommutative_graph_dim(const Channel& ch, double rel_tol) {
  if (ch.dim_in != ch.dim_out)
    throw std::invalid_argument("noncommutative_graph_dim: channel is not square");
  OperatorSpaceBasis k = operator_space_basis(ch.kraus, rel_tol);
  const Eigen::Index d = ch.dim_in;
  const Eigen::Index m = static_cast<Eigen::Index>(k.basis.size());
  CMatrix stacked(d * d, m * m);
  Eigen::Index col = 0;
  for (const CMatrix& gi : k.basis)
    for (const CMatrix& gj : k.basis)
      stacked.col(col++) = vectorize(gi.adjoint() * gj);
  return svd_rank(stacked, rel_tol);
}

int mse_qubit(int dim_s) {
  switch (dim_s) {
    case 1: return 4;
    case 2: return 2;
    case 3: return 2;
    case 4: return 1;
    default:
      throw std::invalid_argument("mse_qubit: graph dimension must be in 1..4");
  }
}

double cse_qubit(int dim_s) { return std::log2(static_cast<double>(mse_qubit(dim_s))); }

}  // namespace qzec
