#pragma once

#include <vector>

#include "qzec/linalg.hpp"

namespace qzec {

/// Standard-form conic program over Hermitian PSD blocks:
///   minimize    sum_l <C_l, X_l>
///   subject to  sum_l <A_{m,l}, X_l> = b_m,   X_l >= 0,
/// with <A, X> = Re Tr(A X) for Hermitian A, X.
struct SdpProblem {
  struct Constraint {
    std::vector<CMatrix> coeff;  // one Hermitian matrix per block
    double rhs = 0.0;
  };
  std::vector<int> block_sides;
  std::vector<CMatrix> objective;  // C_l per block
  std::vector<Constraint> constraints;
};

enum class SdpStatus { Optimal, PrimalInfeasible, DualInfeasible, SlowProgress };

struct SdpSolution {
  SdpStatus status = SdpStatus::SlowProgress;
  std::vector<CMatrix> primal_blocks;  // X_l
  std::vector<CMatrix> dual_blocks;    // Z_l
  RVector dual_vector;                 // y, indexed by original constraint order
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;  // |primal - dual| / (1 + |primal|)
  int iterations = 0;
};

struct SolverConfig {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
  bool trace = false;  // per-iteration log on stderr
};

SdpSolution solve(const SdpProblem& p, const SolverConfig& cfg = {});

/// Residuals recomputed from scratch, independent of solver internals.
struct VerifyReport {
  double max_equality_residual = 0.0;           // max_m |<A_m, X> - b_m|
  std::vector<double> min_primal_eigenvalues;   // per block
  std::vector<double> min_dual_eigenvalues;     // per block (if Z present)
  double dual_residual = 0.0;                   // ||C - A*(y) - Z||_F
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;

  bool within(const SolverConfig& cfg) const;
};

VerifyReport verify_solution(const SdpProblem& p, const SdpSolution& s,
                             const SolverConfig& cfg = {});

}  // namespace qzec
