#pragma once

#include <vector>

#include "qzec/channel.hpp"
#include "qzec/linalg.hpp"

namespace qzec {

/// Orthonormal basis (under the Hilbert-Schmidt inner product) of the span
/// of a generating set of equally shaped operators.
struct OperatorSpaceBasis {
  int dim_operators = 0;
  std::vector<CMatrix> basis;
};

OperatorSpaceBasis operator_space_basis(const std::vector<CMatrix>& ops,
                                        double rel_tol = 1e-9);

// dim span{E_i^dag E_j} over the channel's Kraus operators; invariant under
// the choice of Kraus representation.
int noncommutative_graph_dim(const Channel& ch, double rel_tol = 1e-9);

// One-shot entanglement-assisted zero-error message count for qubit-input
// operator spaces, by graph dimension.
int mse_qubit(int dim_s);

// log2 of mse_qubit.
double cse_qubit(int dim_s);

}  // namespace qzec
