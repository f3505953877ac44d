#include "qzec/capacity.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "qzec/ncgraph.hpp"

namespace qzec {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return Rational{g ? num / g : num, g ? den / g : den};
}

SdpReduction build_sdp_from_projection(const CMatrix& p, int dim_a, int dim_b) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (p.rows() != n || p.cols() != n)
    throw std::invalid_argument("build_sdp: projection side does not match dims");
  if ((p - p.adjoint()).norm() > 1e-9 * std::max(1.0, p.norm()) ||
      (p * p - p).norm() > 1e-9 * std::max(1.0, p.norm()))
    throw std::invalid_argument("build_sdp: input is not a Hermitian projector");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()));
  int r = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 0.5) ++r;
  // Isometry onto the orthogonal complement of supp(P).
  CMatrix q(n, n - r);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) <= 0.5) q.col(col++) = es.eigenvectors().col(i);

  SdpReduction red;
  red.q = q;
  red.projection_rank = r;
  red.dim_a = dim_a;
  red.dim_b = dim_b;

  const bool slack = q.cols() > 0;
  SdpProblem& prob = red.problem;
  prob.block_sides = {static_cast<int>(n)};
  if (slack) prob.block_sides.push_back(static_cast<int>(n - r));

  // maximize Tr S = (1/d_B) (Tr U + Tr W), posed as minimization
  prob.objective.push_back(-identity(static_cast<int>(n)) / dim_b);
  if (slack) prob.objective.push_back(-identity(static_cast<int>(n - r)) / dim_b);

  auto add_constraint = [&](const CMatrix& on_u, bool project_to_slack, double rhs) {
    SdpProblem::Constraint c;
    c.coeff.push_back(on_u);
    if (slack) {
      if (project_to_slack)
        c.coeff.push_back((q.adjoint() * on_u * q).eval());
      else
        c.coeff.push_back(zeros(static_cast<int>(n - r), static_cast<int>(n - r)));
    }
    c.rhs = rhs;
    prob.constraints.push_back(std::move(c));
  };

  // U + Q W Q^dag must lie in {H (x) I_B}: orthogonality to h_a (x) g_b for
  // every traceless Hermitian g_b on B.
  for (const CMatrix& h : hermitian_basis(dim_a))
    for (const CMatrix& g : traceless_hermitian_basis(dim_b))
      add_constraint(kron(h, g), true, 0.0);

  // Tr_A U = I_B.
  const CMatrix ia = identity(dim_a);
  for (const CMatrix& k : hermitian_basis(dim_b))
    add_constraint(kron(ia, k), false, k.trace().real());

  return red;
}

SdpReduction build_sdp(const ChoiMatrix& j, double rel_tol) {
  return build_sdp_from_projection(support_projection(j, rel_tol), j.dim_in, j.dim_out);
}

namespace {

UpsilonResult run_reduction(const SdpReduction& red, const SolverConfig& cfg) {
  SdpSolution sol = solve(red.problem, cfg);
  const int da = red.dim_a, db = red.dim_b;
  const Eigen::Index n = static_cast<Eigen::Index>(da) * db;

  UpsilonResult res;
  res.projection_rank = red.projection_rank;
  res.status = sol.status;
  res.gap = sol.gap;
  res.iterations = sol.iterations;
  res.certified = (sol.status == SdpStatus::Optimal);
  res.value = -sol.primal_objective;

  res.u_matrix = 0.5 * (sol.primal_blocks[0] + sol.primal_blocks[0].adjoint());
  CMatrix total = res.u_matrix;
  if (red.has_slack_block())
    total += red.q * sol.primal_blocks[1] * red.q.adjoint();
  total = 0.5 * (total + total.adjoint()).eval();
  res.s_matrix = partial_trace(total, da, db, Subsystem::A) / db;

  // Re-verify the original constraints on the reconstruction.
  double resid = 0.0;
  const CMatrix s_lift = kron(res.s_matrix, identity(db));
  resid = std::max(resid, (total - s_lift).norm());
  resid = std::max(resid,
                   (partial_trace(res.u_matrix, da, db, Subsystem::B) - identity(db)).norm());
  CMatrix slack = s_lift - res.u_matrix;
  Eigen::SelfAdjointEigenSolver<CMatrix> eu(res.u_matrix, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMatrix> ev(0.5 * (slack + slack.adjoint()),
                                            Eigen::EigenvaluesOnly);
  resid = std::max(resid, std::max(0.0, -eu.eigenvalues().minCoeff()));
  resid = std::max(resid, std::max(0.0, -ev.eigenvalues().minCoeff()));
  // Tr P (S (x) I - U) with P reconstructed from Q: P = I - Q Q^dag.
  CMatrix proj = identity(static_cast<int>(n));
  if (red.has_slack_block()) proj -= red.q * red.q.adjoint();
  resid = std::max(resid, std::abs((proj * slack).trace().real()));
  res.max_constraint_residual = resid;
  if (res.certified && resid > 1e-7) res.certified = false;
  return res;
}

}  // namespace

UpsilonResult upsilon(const Channel& ch, const SolverConfig& cfg) {
  return run_reduction(build_sdp(choi(ch)), cfg);
}

UpsilonResult upsilon_of_projection(const CMatrix& p, int dim_a, int dim_b,
                                    const SolverConfig& cfg) {
  return run_reduction(build_sdp_from_projection(p, dim_a, dim_b), cfg);
}

int snap_floor(double upsilon_value, double tol) {
  const double rounded = std::round(upsilon_value);
  if (std::abs(upsilon_value - rounded) <= tol)
    return static_cast<int>(rounded);
  return static_cast<int>(std::floor(upsilon_value));
}

int m0_qns(const Channel& ch, const SolverConfig& cfg) {
  return snap_floor(upsilon(ch, cfg).value);
}

Rational pauli_upsilon_analytic(int k, int d) {
  if (d < 2 || k < 1 || k > d * d)
    throw std::invalid_argument("pauli_upsilon_analytic: need 1 <= k <= d^2");
  return make_rational(static_cast<long long>(d) * d, k);
}

double c0_qns_pauli(int k, int d) {
  const Rational r = pauli_upsilon_analytic(k, d);
  return std::log2(r.value());
}

Rational m0_qns_via_graph(const Channel& ch) {
  if (ch.dim_in != 2 || ch.dim_out != 2)
    throw std::invalid_argument("m0_qns_via_graph: qubit channels only");
  return make_rational(4, noncommutative_graph_dim(ch));
}

double c0_qns_finite_n(const Channel& ch, int n, const SolverConfig& cfg) {
  if (n < 1) throw std::invalid_argument("c0_qns_finite_n: n must be >= 1");
  double side = 1.0;
  for (int i = 0; i < n; ++i) side *= static_cast<double>(ch.dim_in) * ch.dim_out;
  if (side > 256.0)
    throw std::invalid_argument("c0_qns_finite_n: tensor power exceeds the solver size cap");
  Channel power = ch;
  for (int i = 1; i < n; ++i) power = tensor(power, ch);
  UpsilonResult res = upsilon(power, cfg);
  if (!res.certified)
    throw std::runtime_error("c0_qns_finite_n: solver did not certify the tensor-power value");
  return std::log2(res.value) / n;
}

CapacityReport full_report(const Channel& ch, const SolverConfig& cfg,
                           const std::vector<int>& n_list) {
  CapacityReport rep;
  UpsilonResult u = upsilon(ch, cfg);
  rep.upsilon = u.value;
  rep.m0_qns = snap_floor(u.value);
  rep.certified = u.certified;
  rep.gap = u.gap;
  rep.choi_rank = u.projection_rank;

  const bool square = (ch.dim_in == ch.dim_out);
  const bool qubit = (ch.dim_in == 2 && ch.dim_out == 2);
  if (square) {
    rep.unital = is_unital(ch);
    rep.dim_s = noncommutative_graph_dim(ch);
  }
  if (qubit) {
    rep.m0_qns_via_graph = make_rational(4, *rep.dim_s);
    rep.m0_se = mse_qubit(*rep.dim_s);
    rep.c0_se_bits = cse_qubit(*rep.dim_s);
    if (rep.m0_qns_via_graph->den != 1 ||
        rep.m0_qns_via_graph->num != rep.m0_qns)
      rep.discrepancies.push_back("m0_qns disagrees with 4/dim(S)");
    if (*rep.m0_se != rep.m0_qns)
      rep.discrepancies.push_back("m0_se disagrees with m0_qns");
  }
  for (int n : n_list)
    rep.c0_qns_finite_n.emplace_back(n, c0_qns_finite_n(ch, n, cfg));
  return rep;
}

}  // namespace qzec
