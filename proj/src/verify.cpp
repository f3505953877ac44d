#include "qzec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qzec/capacity.hpp"
#include "qzec/ncgraph.hpp"
#include "qzec/sampling.hpp"

namespace qzec {

namespace {

struct CertificationStats {
  int solves = 0;
  int failures = 0;
  double worst_gap = 0.0;
  double worst_residual = 0.0;
};

// Solves a reduction and folds the certification evidence (criterion
// bookkeeping) into the shared stats. Returns the optimal value.
double certified_upsilon(const SdpReduction& red, const SolverConfig& cfg,
                         CertificationStats& stats) {
  SdpSolution sol = solve(red.problem, cfg);
  VerifyReport rep = verify_solution(red.problem, sol, cfg);
  ++stats.solves;
  bool ok = (sol.status == SdpStatus::Optimal);
  ok = ok && rep.gap <= 1e-8 && rep.max_equality_residual <= 1e-8;
  for (double e : rep.min_primal_eigenvalues) ok = ok && e >= -1e-8;
  if (!ok) ++stats.failures;
  stats.worst_gap = std::max(stats.worst_gap, rep.gap);
  stats.worst_residual = std::max(stats.worst_residual, rep.max_equality_residual);
  return -rep.primal_objective;
}

double channel_upsilon(const Channel& ch, const SolverConfig& cfg,
                       CertificationStats& stats) {
  return certified_upsilon(build_sdp(choi(ch)), cfg, stats);
}

std::string deviation_detail(double measured, double tol) {
  std::ostringstream out;
  out << "max deviation " << measured << " (tol " << tol << ")";
  return out.str();
}

Channel amplitude_damping(double gamma) {
  CMatrix e1 = zeros(2, 2), e2 = zeros(2, 2);
  e1(0, 0) = 1.0;
  e1(1, 1) = std::sqrt(1.0 - gamma);
  e2(0, 1) = std::sqrt(gamma);
  return from_kraus({e1, e2});
}

std::vector<std::vector<int>> support_patterns(int total) {
  std::vector<std::vector<int>> patterns;
  for (int mask = 1; mask < (1 << total); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < total; ++i)
      if (mask & (1 << i)) s.push_back(i);
    patterns.push_back(std::move(s));
  }
  return patterns;
}

// Sum of the first k normalized Bell projectors (I (x) X^i Z^j)|Phi>/sqrt(2).
CMatrix bell_sum_projection(int k) {
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  const CMatrix i2 = identity(2);
  CMatrix p = zeros(4, 4);
  int count = 0;
  for (int i = 0; i < 2 && count < k; ++i)
    for (int j = 0; j < 2 && count < k; ++j) {
      CMatrix xi = pauli_x(2), zj = pauli_z(2);
      CMatrix op = identity(2);
      for (int t = 0; t < i; ++t) op = xi * op;
      for (int t = 0; t < j; ++t) op = op * zj;
      CVector v = kron(i2, op) * phi / std::sqrt(2.0);
      p += v * v.adjoint();
      ++count;
    }
  return p;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed,
                                                  const SolverConfig& cfg) {
  std::vector<CriterionResult> rows;
  CertificationStats stats;
  Rng rng(seed);

  // 1. Pauli closed form: Upsilon = 4/k over every nonzero support pattern.
  {
    double worst = 0.0;
    for (const auto& pattern : support_patterns(4)) {
      const double expected = 4.0 / static_cast<double>(pattern.size());
      for (int draw = 0; draw < 10; ++draw) {
        auto probs = random_probs_on_support(4, pattern, rng);
        PauliSpec spec;
        std::copy(probs.begin(), probs.end(), spec.probs.begin());
        const double got = channel_upsilon(pauli_channel(spec), cfg, stats);
        worst = std::max(worst, std::abs(got - expected));
      }
    }
    rows.push_back({"Pauli closed form 4/k (15 patterns x 10 draws)", worst <= 1e-6,
                    deviation_detail(worst, 1e-6)});
  }

  // 2. Maximally entangled projections: Upsilon(P) = 4/k plus the exact
  //    analytic certificate ((2/k) I, (2/k) P).
  {
    double worst = 0.0, cert_resid = 0.0, cert_obj = 0.0;
    for (int k = 1; k <= 4; ++k) {
      CMatrix p = bell_sum_projection(k);
      SdpReduction red = build_sdp_from_projection(p, 2, 2);
      const double got = certified_upsilon(red, cfg, stats);
      worst = std::max(worst, std::abs(got - 4.0 / k));

      SdpSolution analytic;
      analytic.primal_blocks.push_back((2.0 / k) * p);
      if (red.has_slack_block())
        analytic.primal_blocks.push_back((2.0 / k) *
                                         identity(static_cast<int>(red.q.cols())));
      VerifyReport rep = verify_solution(red.problem, analytic, cfg);
      cert_resid = std::max(cert_resid, rep.max_equality_residual);
      cert_obj = std::max(cert_obj, std::abs(-rep.primal_objective - 4.0 / k));
    }
    const bool pass = worst <= 1e-6 && cert_resid <= 1e-12 && cert_obj <= 1e-12;
    std::ostringstream detail;
    detail << "max |upsilon - 4/k| " << worst << " (tol 1e-06); certificate residual "
           << cert_resid << ", objective error " << cert_obj << " (tol 1e-12)";
    rows.push_back({"Bell projector sums, k = 1..4", pass, detail.str()});
  }

  // 3. Nonunital collapse: Upsilon = 1.
  {
    double worst = 0.0;
    for (int g = 1; g <= 9; ++g)
      worst = std::max(worst,
                       std::abs(channel_upsilon(amplitude_damping(0.1 * g), cfg, stats) - 1.0));
    int extremal_done = 0;
    while (extremal_done < 20) {
      const double theta = rng.uniform() * std::numbers::pi;
      const double phi = rng.uniform() * std::numbers::pi;
      const double c2t = std::cos(theta) * std::cos(theta);
      const double c2p = std::cos(phi) * std::cos(phi);
      if (std::abs(c2t - c2p) < 1e-2) continue;
      worst = std::max(worst,
                       std::abs(channel_upsilon(extremal_channel(theta, phi), cfg, stats) - 1.0));
      ++extremal_done;
    }
    for (int i = 0; i < 100; ++i)
      worst = std::max(worst,
                       std::abs(channel_upsilon(random_nonunital_qubit(rng), cfg, stats) - 1.0));
    rows.push_back({"Nonunital collapse (9 damping + 20 extremal + 100 random)",
                    worst <= 1e-6, deviation_detail(worst, 1e-6)});
  }

  // 4 & 5. Graph formula and entanglement-assistance equality on 100 random
  //        qubit channels per Choi rank.
  {
    int graph_mismatches = 0, dim_violations = 0, se_mismatches = 0;
    for (int rank = 1; rank <= 4; ++rank) {
      for (int i = 0; i < 100; ++i) {
        Channel ch = random_channel(2, 2, rank, rng);
        const int dim_s = noncommutative_graph_dim(ch);
        if (dim_s != 1 && dim_s != 2 && dim_s != 4) ++dim_violations;
        const int m0 = snap_floor(channel_upsilon(ch, cfg, stats));
        if (dim_s < 1 || dim_s > 4 || 4 % dim_s != 0 || m0 != 4 / dim_s)
          ++graph_mismatches;
        if (dim_s >= 1 && dim_s <= 4 && mse_qubit(dim_s) != m0) ++se_mismatches;
      }
    }
    {
      std::ostringstream detail;
      detail << graph_mismatches << " mismatches of m0_qns vs 4/dim(S), "
             << dim_violations << " channels with dim(S) outside {1,2,4} (expected 0)";
      rows.push_back({"Graph formula M0 = 4/dim(S), 400 random channels",
                      graph_mismatches == 0 && dim_violations == 0, detail.str()});
    }
    {
      std::ostringstream detail;
      detail << se_mismatches << " mismatches of m0_se vs m0_qns (expected 0)";
      rows.push_back({"Entanglement-assistance equality M0^SE = M0^QNS",
                      se_mismatches == 0, detail.str()});
    }
  }

  // 6. Pauli additivity on two copies.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      auto patterns = support_patterns(4);
      const auto& p1 = patterns[static_cast<size_t>(rng.uniform() * patterns.size())];
      const auto& p2 = patterns[static_cast<size_t>(rng.uniform() * patterns.size())];
      PauliSpec s1, s2;
      auto v1 = random_probs_on_support(4, p1, rng);
      auto v2 = random_probs_on_support(4, p2, rng);
      std::copy(v1.begin(), v1.end(), s1.probs.begin());
      std::copy(v2.begin(), v2.end(), s2.probs.begin());
      Channel a = pauli_channel(s1), b = pauli_channel(s2);
      const double ua = channel_upsilon(a, cfg, stats);
      const double ub = channel_upsilon(b, cfg, stats);
      const double uab = channel_upsilon(tensor(a, b), cfg, stats);
      worst = std::max(worst, std::abs(uab - ua * ub));
    }
    rows.push_back({"Pauli additivity on 5 random pairs (16x16 blocks)", worst <= 1e-5,
                    deviation_detail(worst, 1e-5)});
  }

  // 7. Separation example: Pauli with three nonzero probabilities.
  {
    Channel ch = pauli_channel(PauliSpec{{0.5, 0.25, 0.25, 0.0}});
    CapacityReport rep = full_report(ch, cfg, {1});
    const double c0 = rep.c0_qns_finite_n.at(0).second;
    const double expected = std::log2(4.0 / 3.0);
    const bool pass = rep.m0_qns == 1 && rep.c0_se_bits && *rep.c0_se_bits == 0.0 &&
                      std::abs(c0 - expected) <= 1e-6 && rep.certified;
    std::ostringstream detail;
    detail << "m0_qns " << rep.m0_qns << " (expected 1), c0_se "
           << (rep.c0_se_bits ? *rep.c0_se_bits : -1.0) << " (expected 0), c0_qns(n=1) "
           << c0 << " vs log2(4/3) = " << expected << " (tol 1e-06)";
    rows.push_back({"Separation example, Pauli k = 3", pass, detail.str()});
  }

  // 8. Generalized qutrit Pauli channels, 9x9 blocks.
  {
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> support;
      while (static_cast<int>(support.size()) < k) {
        const int idx = static_cast<int>(rng.uniform() * 9.0);
        if (std::find(support.begin(), support.end(), idx) == support.end())
          support.push_back(idx);
      }
      auto probs = random_probs_on_support(9, support, rng);
      Channel ch = generalized_pauli_channel(3, probs);
      const double got = channel_upsilon(ch, cfg, stats);
      worst = std::max(worst, std::abs(got - 9.0 / k));
    }
    rows.push_back({"Generalized Pauli (qutrit), k = 1..3", worst <= 1e-5,
                    deviation_detail(worst, 1e-5)});
  }

  // 9. Certification across every solve above.
  {
    std::ostringstream detail;
    detail << stats.failures << " of " << stats.solves
           << " solves uncertified; worst gap " << stats.worst_gap
           << ", worst equality residual " << stats.worst_residual << " (tol 1e-08)";
    rows.push_back({"Solver certification across criteria 1-8", stats.failures == 0,
                    detail.str()});
  }

  // 10. Property suite (separate certification pool).
  {
    CertificationStats props;
    double floor_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int rank = 1 + (i % 4);
      Channel ch = random_channel(2, 2, rank, rng);
      floor_worst = std::min(floor_worst,
                             channel_upsilon(ch, cfg, props) - (1.0 - 1e-6));
    }
    rows.push_back({"Feasibility floor upsilon >= 1 on 100 random channels",
                    floor_worst >= 0.0,
                    deviation_detail(std::min(0.0, floor_worst), 0.0)});

    double lu_worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Channel ch = random_channel(2, 2, 1 + (i % 4), rng);
      CMatrix u = random_unitary(2, rng), v = random_unitary(2, rng);
      std::vector<CMatrix> rotated;
      for (const CMatrix& e : ch.kraus) rotated.push_back(u * e * v);
      const double u1 = channel_upsilon(ch, cfg, props);
      const double u2 = channel_upsilon(from_kraus(rotated), cfg, props);
      lu_worst = std::max(lu_worst, std::abs(u1 - u2));
    }
    rows.push_back({"Local-unitary invariance on 20 random triples", lu_worst <= 1e-6,
                    deviation_detail(lu_worst, 1e-6)});

    double rt_worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int d = (i % 2) ? 3 : 2;
      Channel ch = random_channel(d, d, 1 + (i % (d * d)), rng);
      ChoiMatrix j = choi(ch);
      ChoiMatrix j2 = choi(kraus_from_choi(j));
      rt_worst = std::max(rt_worst, (j.matrix - j2.matrix).norm());
    }
    rows.push_back({"Choi-Kraus round trip on 50 random channels", rt_worst <= 1e-8,
                    deviation_detail(rt_worst, 1e-8)});
  }

  return rows;
}

}  // namespace qzec
