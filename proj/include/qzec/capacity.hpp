#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qzec/channel.hpp"
#include "qzec/sdp.hpp"

namespace qzec {

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Rational make_rational(long long num, long long den);

/// Standard-form encoding of the one-shot capacity program for a support
/// projection P on a (d_a x d_b) bipartite space, after facial reduction of
/// the orthogonality constraint: the slack S (x) I - U is parameterized as
/// Q W Q^dag with Q an isometry onto the complement of supp(P).
struct SdpReduction {
  SdpProblem problem;
  CMatrix q;  // (d_a d_b) x (d_a d_b - r) isometry; empty when r = d_a d_b
  int projection_rank = 0;
  int dim_a = 0;
  int dim_b = 0;
  bool has_slack_block() const { return q.cols() > 0; }
};

struct UpsilonResult {
  double value = 0.0;
  CMatrix s_matrix;  // optimal S_A
  CMatrix u_matrix;  // optimal U_AB
  int projection_rank = 0;
  bool certified = false;
  SdpStatus status = SdpStatus::SlowProgress;
  double gap = 0.0;
  double max_constraint_residual = 0.0;  // re-verified on the reconstruction
  int iterations = 0;
};

struct CapacityReport {
  double upsilon = 0.0;
  int m0_qns = 0;
  std::optional<int> dim_s;
  std::optional<Rational> m0_qns_via_graph;  // qubit channels only
  std::optional<int> m0_se;                  // qubit channels only
  std::optional<double> c0_se_bits;          // qubit channels only
  std::vector<std::pair<int, double>> c0_qns_finite_n;  // bits
  std::optional<bool> unital;
  int choi_rank = 0;
  bool certified = false;
  double gap = 0.0;
  std::vector<std::string> discrepancies;
};

SdpReduction build_sdp(const ChoiMatrix& j, double rel_tol = 1e-9);
SdpReduction build_sdp_from_projection(const CMatrix& p, int dim_a, int dim_b);

UpsilonResult upsilon(const Channel& ch, const SolverConfig& cfg = {});
UpsilonResult upsilon_of_projection(const CMatrix& p, int dim_a, int dim_b,
                                    const SolverConfig& cfg = {});

// floor(upsilon) with integrality snapping at 1e-6.
int m0_qns(const Channel& ch, const SolverConfig& cfg = {});
int snap_floor(double upsilon_value, double tol = 1e-6);

Rational pauli_upsilon_analytic(int k, int d = 2);  // d^2 / k
double c0_qns_pauli(int k, int d = 2);              // log2(d^2 / k), bits

Rational m0_qns_via_graph(const Channel& ch);  // 4 / dim(S), qubit only

double c0_qns_finite_n(const Channel& ch, int n, const SolverConfig& cfg = {});

CapacityReport full_report(const Channel& ch, const SolverConfig& cfg = {},
                           const std::vector<int>& n_list = {});

}  // namespace qzec
