#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "qzec/sampling.hpp"
#include "qzec/sdp.hpp"

using namespace qzec;

namespace {

SdpProblem max_trace_on_simplex(int n) {
  // min <-I, X> s.t. Tr X = 1, X >= 0  ->  optimum -1.
  SdpProblem p;
  p.block_sides = {n};
  p.objective = {-identity(n)};
  p.constraints.push_back({{identity(n)}, 1.0});
  return p;
}

// Realification H -> [[Re H, -Im H], [Im H, Re H]]; doubles every inner
// product, so the realified program has twice the complex optimum when the
// rhs is doubled too.
CMatrix realify(const CMatrix& h) {
  const int n = static_cast<int>(h.rows());
  CMatrix out = zeros(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real().cast<Complex>();
  out.bottomRightCorner(n, n) = h.real().cast<Complex>();
  out.topRightCorner(n, n) = (-h.imag()).cast<Complex>();
  out.bottomLeftCorner(n, n) = h.imag().cast<Complex>();
  return out;
}

CMatrix random_hermitian(int n, Rng& rng) {
  CMatrix g = random_gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

SdpProblem random_feasible_problem(int n, int m, Rng& rng) {
  // Both sides are strictly feasible by construction (b_m = <A_m, X0> for an
  // interior X0, and C = A*(y0) + Z0 with Z0 > 0), so an optimum exists.
  CMatrix g = random_gaussian_matrix(n, n, rng);
  CMatrix x0 = g * g.adjoint() + identity(n);
  CMatrix h = random_gaussian_matrix(n, n, rng);
  CMatrix z0 = h * h.adjoint() + identity(n);
  SdpProblem p;
  p.block_sides = {n};
  CMatrix c = z0;
  for (int i = 0; i < m; ++i) {
    CMatrix a = random_hermitian(n, rng);
    p.constraints.push_back({{a}, hs_inner(a, x0).real()});
    c += (2.0 * rng.uniform() - 1.0) * a;
  }
  p.objective = {c};
  return p;
}

}  // namespace

TEST_CASE("max trace eigenvalue problem") {
  for (int n : {2, 3, 6}) {
    SdpSolution s = solve(max_trace_on_simplex(n));
    CHECK(s.status == SdpStatus::Optimal);
    CHECK(s.primal_objective == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(s.dual_objective == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(std::abs(s.primal_blocks[0].trace().real() - 1.0) < 1e-7);
  }
}

TEST_CASE("multi-block and general objectives") {
  // min <Z, X> with Tr X = 1: optimum is the smallest eigenvalue, -1.
  SdpProblem p;
  p.block_sides = {2, 2};
  p.objective = {pauli_z(2), zeros(2, 2)};
  p.constraints.push_back({{identity(2), zeros(2, 2)}, 1.0});
  p.constraints.push_back({{zeros(2, 2), identity(2)}, 1.0});
  SdpSolution s = solve(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.primal_objective == doctest::Approx(-1.0).epsilon(1e-7));
  // the second block is free apart from its trace
  CHECK(std::abs(s.primal_blocks[1].trace().real() - 1.0) < 1e-7);
}

TEST_CASE("determinism") {
  Rng rng(7);
  SdpProblem p = random_feasible_problem(4, 5, rng);
  SdpSolution a = solve(p);
  SdpSolution b = solve(p);
  CHECK(a.status == SdpStatus::Optimal);
  CHECK(a.iterations == b.iterations);
  CHECK(std::abs(a.primal_objective - b.primal_objective) <= 1e-10);
  CHECK((a.primal_blocks[0] - b.primal_blocks[0]).norm() <= 1e-10);
}

TEST_CASE("complex data agrees with its realification") {
  Rng rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    SdpProblem p = random_feasible_problem(3, 4, rng);
    SdpProblem pr;
    pr.block_sides = {6};
    pr.objective = {realify(p.objective[0])};
    for (const auto& c : p.constraints)
      pr.constraints.push_back({{realify(c.coeff[0])}, 2.0 * c.rhs});
    SdpSolution s = solve(p);
    SdpSolution sr = solve(pr);
    REQUIRE(s.status == SdpStatus::Optimal);
    REQUIRE(sr.status == SdpStatus::Optimal);
    CHECK(sr.primal_objective ==
          doctest::Approx(2.0 * s.primal_objective).epsilon(1e-7));
  }
}

TEST_CASE("verify_solution") {
  SdpProblem p = max_trace_on_simplex(3);
  SdpSolution s = solve(p);
  SolverConfig cfg;
  VerifyReport rep = verify_solution(p, s, cfg);
  CHECK(rep.within(cfg));
  CHECK(rep.max_equality_residual <= cfg.feas_tol);
  CHECK(rep.gap <= cfg.gap_tol);
  for (double ev : rep.min_primal_eigenvalues) CHECK(ev >= -cfg.feas_tol);
  for (double ev : rep.min_dual_eigenvalues) CHECK(ev >= -cfg.feas_tol);

  // a perturbed iterate must fail re-verification
  SdpSolution bad = s;
  bad.primal_blocks[0] += 1e-3 * identity(3);
  VerifyReport brep = verify_solution(p, bad, cfg);
  CHECK_FALSE(brep.within(cfg));
  CHECK(brep.max_equality_residual > 1e-4);
}

TEST_CASE("weak duality at the solution") {
  Rng rng(15);
  for (int trial = 0; trial < 6; ++trial) {
    SdpProblem p = random_feasible_problem(3 + trial % 3, 4, rng);
    SdpSolution s = solve(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    CHECK(s.dual_objective <= s.primal_objective + 1e-6 * (1.0 + std::abs(s.primal_objective)));
  }
}

TEST_CASE("redundant constraints are tolerated") {
  SdpProblem p = max_trace_on_simplex(3);
  p.constraints.push_back(p.constraints[0]);
  p.constraints.push_back({{2.0 * identity(3)}, 2.0});
  SdpSolution s = solve(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.primal_objective == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(s.dual_vector.size() == 3);
}

TEST_CASE("inconsistent constraints throw") {
  SdpProblem p = max_trace_on_simplex(2);
  p.constraints.push_back({{identity(2)}, 2.0});  // Tr X = 1 and Tr X = 2
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
}

TEST_CASE("malformed problems are rejected") {
  SdpProblem p;
  p.block_sides = {2};
  p.objective = {identity(3)};  // wrong shape
  CHECK_THROWS_AS(solve(p), std::invalid_argument);

  SdpProblem q = max_trace_on_simplex(2);
  CMatrix skew = zeros(2, 2);
  skew(0, 1) = 1.0;  // not Hermitian
  q.constraints.push_back({{skew}, 0.0});
  CHECK_THROWS_AS(solve(q), std::invalid_argument);
}

TEST_CASE("unbounded problems report dual infeasibility") {
  // min <-I, X> with only an off-diagonal pinning constraint: Tr X can grow
  // without bound.
  SdpProblem p;
  p.block_sides = {2};
  p.objective = {-identity(2)};
  CMatrix a = zeros(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  p.constraints.push_back({{a}, 0.0});
  SdpSolution s = solve(p);
  CHECK(s.status == SdpStatus::DualInfeasible);
}
