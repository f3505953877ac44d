#include "qzec/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qzec {

namespace {

using Blocks = std::vector<CMatrix>;
using RMatrix = Eigen::MatrixXd;

// Re Tr(A B) for Hermitian A, B in O(n^2).
double re_trace_prod(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.conjugate()).sum().real();
}

double block_inner(const Blocks& p, const Blocks& q) {
  double s = 0.0;
  for (size_t l = 0; l < p.size(); ++l) s += re_trace_prod(p[l], q[l]);
  return s;
}

void symmetrize(CMatrix& m) { m = 0.5 * (m + m.adjoint()).eval(); }

struct BlockEig {
  CMatrix sqrt;      // H^{1/2}
  CMatrix inv;       // H^{-1}
  CMatrix inv_sqrt;  // H^{-1/2}
};

BlockEig psd_factor(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector d = es.eigenvalues().cwiseMax(1e-300);
  const CMatrix& u = es.eigenvectors();
  BlockEig out;
  out.sqrt = u * d.cwiseSqrt().asDiagonal() * u.adjoint();
  out.inv = u * d.cwiseInverse().asDiagonal() * u.adjoint();
  out.inv_sqrt = u * d.cwiseSqrt().cwiseInverse().asDiagonal() * u.adjoint();
  return out;
}

// Largest alpha in (0, 1] with H + alpha * dH >= 0, given H^{-1/2}.
double max_step(const CMatrix& inv_sqrt, const CMatrix& dh) {
  CMatrix y = inv_sqrt * dh * inv_sqrt;
  symmetrize(y);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(y, Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  if (lam_min >= -1e-13) return 1.0;
  return std::min(1.0, -1.0 / lam_min);
}

// Real isometric vectorization of a Hermitian matrix (preserves HS inner
// products): diagonal, then sqrt(2)*Re / sqrt(2)*Im of the upper triangle.
Eigen::VectorXd realify(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  Eigen::VectorXd v(n * n);
  Eigen::Index idx = 0;
  const double sqrt2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) v(idx++) = h(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(idx++) = sqrt2 * h(i, j).real();
      v(idx++) = sqrt2 * h(i, j).imag();
    }
  return v;
}

void validate_problem(const SdpProblem& p) {
  if (p.block_sides.empty()) throw std::invalid_argument("sdp: no blocks");
  if (p.objective.size() != p.block_sides.size())
    throw std::invalid_argument("sdp: objective/block count mismatch");
  auto check = [&](const CMatrix& m, size_t l, const char* what) {
    const int n = p.block_sides[l];
    if (n < 1) throw std::invalid_argument("sdp: nonpositive block side");
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument(std::string("sdp: ") + what + " has wrong block side");
    if (!m.allFinite())
      throw std::invalid_argument(std::string("sdp: ") + what + " has non-finite entries");
    if ((m - m.adjoint()).norm() > 1e-10 * std::max(1.0, m.norm()))
      throw std::invalid_argument(std::string("sdp: ") + what + " is not Hermitian");
  };
  for (size_t l = 0; l < p.objective.size(); ++l) check(p.objective[l], l, "objective");
  for (const auto& c : p.constraints) {
    if (c.coeff.size() != p.block_sides.size())
      throw std::invalid_argument("sdp: constraint block count mismatch");
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("sdp: non-finite rhs");
    for (size_t l = 0; l < c.coeff.size(); ++l) check(c.coeff[l], l, "constraint");
  }
}

// Rank-revealing selection of an independent constraint subset; eliminated
// rows must be consistent linear combinations of the kept ones.
std::vector<int> eliminate_redundant(const SdpProblem& p) {
  const int m = static_cast<int>(p.constraints.size());
  Eigen::Index total = 0;
  for (int n : p.block_sides) total += static_cast<Eigen::Index>(n) * n;
  RMatrix mat(total, m);
  for (int c = 0; c < m; ++c) {
    Eigen::Index off = 0;
    for (size_t l = 0; l < p.block_sides.size(); ++l) {
      const Eigen::Index len =
          static_cast<Eigen::Index>(p.block_sides[l]) * p.block_sides[l];
      mat.col(c).segment(off, len) = realify(p.constraints[c].coeff[l]);
      off += len;
    }
  }
  Eigen::ColPivHouseholderQR<RMatrix> qr(mat);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  if (rank == 0) throw std::invalid_argument("sdp: all constraints are zero");
  std::vector<int> kept(qr.colsPermutation().indices().data(),
                        qr.colsPermutation().indices().data() + rank);
  std::sort(kept.begin(), kept.end());

  if (rank < m) {
    RMatrix sub(total, rank);
    Eigen::VectorXd b_kept(rank);
    for (int i = 0; i < rank; ++i) {
      sub.col(i) = mat.col(kept[i]);
      b_kept(i) = p.constraints[kept[i]].rhs;
    }
    Eigen::HouseholderQR<RMatrix> subqr(sub);
    std::vector<bool> is_kept(m, false);
    for (int k : kept) is_kept[k] = true;
    for (int c = 0; c < m; ++c) {
      if (is_kept[c]) continue;
      Eigen::VectorXd coeffs = subqr.solve(mat.col(c));
      const double fit = (sub * coeffs - mat.col(c)).norm();
      const double rhs_gap = std::abs(coeffs.dot(b_kept) - p.constraints[c].rhs);
      if (fit > 1e-7 * (1.0 + mat.col(c).norm()) ||
          rhs_gap > 1e-7 * (1.0 + std::abs(p.constraints[c].rhs)))
        throw std::invalid_argument(
            "sdp: rank-deficient constraints are inconsistent after elimination");
    }
  }
  return kept;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolverConfig& cfg) {
  validate_problem(p);
  const size_t nblocks = p.block_sides.size();

  // Symmetrized copies of the data.
  Blocks objective(nblocks);
  for (size_t l = 0; l < nblocks; ++l) {
    objective[l] = p.objective[l];
    symmetrize(objective[l]);
  }
  const std::vector<int> kept = eliminate_redundant(p);
  const int m = static_cast<int>(kept.size());
  std::vector<Blocks> con(m);
  Eigen::VectorXd b(m);
  for (int c = 0; c < m; ++c) {
    con[c].resize(nblocks);
    for (size_t l = 0; l < nblocks; ++l) {
      con[c][l] = p.constraints[kept[c]].coeff[l];
      symmetrize(con[c][l]);
    }
    b(c) = p.constraints[kept[c]].rhs;
  }

  double total_dim = 0.0;
  for (int n : p.block_sides) total_dim += n;

  // Infeasible start from scaled identities.
  double xi = 1.0, eta = 1.0;
  for (int c = 0; c < m; ++c) {
    double anorm = 0.0;
    for (size_t l = 0; l < nblocks; ++l) anorm += con[c][l].norm();
    xi = std::max(xi, std::abs(b(c)) / (1.0 + anorm));
    eta = std::max(eta, anorm);
  }
  for (size_t l = 0; l < nblocks; ++l) eta = std::max(eta, objective[l].norm());

  Blocks x(nblocks), z(nblocks);
  for (size_t l = 0; l < nblocks; ++l) {
    x[l] = xi * identity(p.block_sides[l]);
    z[l] = eta * identity(p.block_sides[l]);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  SdpSolution best;
  best.status = SdpStatus::SlowProgress;
  double best_merit = std::numeric_limits<double>::infinity();

  auto record = [&](double pobj, double dobj, double gap, double pinf, double dinf,
                    int iter) {
    const double merit = std::max({gap, pinf, dinf});
    if (merit < best_merit) {
      best_merit = merit;
      best.primal_blocks = x;
      best.dual_blocks = z;
      best.dual_vector = RVector::Zero(static_cast<Eigen::Index>(p.constraints.size()));
      for (int c = 0; c < m; ++c) best.dual_vector(kept[c]) = y(c);
      best.primal_objective = pobj;
      best.dual_objective = dobj;
      best.gap = gap;
      best.iterations = iter;
    }
  };

  int iter = 0;
  for (; iter <= cfg.max_iterations; ++iter) {
    // Residuals.
    Eigen::VectorXd rp(m);
    for (int c = 0; c < m; ++c) rp(c) = b(c) - block_inner(con[c], x);
    Blocks rd(nblocks);
    for (size_t l = 0; l < nblocks; ++l) {
      rd[l] = objective[l] - z[l];
      for (int c = 0; c < m; ++c) rd[l] -= y(c) * con[c][l];
    }
    const double pobj = block_inner(objective, x);
    const double dobj = b.dot(y);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    const double pinf = m ? rp.cwiseAbs().maxCoeff() : 0.0;
    double dinf = 0.0;
    for (const auto& r : rd) dinf = std::max(dinf, r.norm());
    const double mu = block_inner(x, z) / total_dim;

    record(pobj, dobj, gap, pinf, dinf, iter);

    if (cfg.trace)
      std::fprintf(stderr, "sdp iter %3d  pobj % .10e  dobj % .10e  gap %.2e  pinf %.2e  dinf %.2e  mu %.2e\n",
                   iter, pobj, dobj, gap, pinf, dinf, mu);

    if (pinf <= cfg.feas_tol && dinf <= cfg.feas_tol && gap <= cfg.gap_tol) {
      best.status = SdpStatus::Optimal;
      return best;
    }
    if (iter == cfg.max_iterations) break;

    // Divergence heuristics.
    if (y.size() && y.cwiseAbs().maxCoeff() > 1e13 && pinf > 1e-6) {
      best.status = SdpStatus::PrimalInfeasible;
      return best;
    }
    if (pobj < -1e13) {
      best.status = SdpStatus::DualInfeasible;
      return best;
    }

    // Nesterov-Todd scaling point W with W Z W = X, plus the scaled variable
    // Lambda = W^{-1/2} X W^{-1/2} = W^{1/2} Z W^{1/2} used by the corrector.
    Blocks w(nblocks), w_sqrt(nblocks), w_invsqrt(nblocks);
    Blocks x_invsqrt(nblocks), z_invsqrt(nblocks);
    std::vector<EigDecomposition> lambda(nblocks);
    for (size_t l = 0; l < nblocks; ++l) {
      BlockEig ex = psd_factor(x[l]);
      BlockEig ez = psd_factor(z[l]);
      x_invsqrt[l] = ex.inv_sqrt;
      z_invsqrt[l] = ez.inv_sqrt;
      CMatrix s = ex.sqrt * z[l] * ex.sqrt;
      symmetrize(s);
      BlockEig es = psd_factor(s);
      w[l] = ex.sqrt * es.inv_sqrt * ex.sqrt;
      symmetrize(w[l]);
      BlockEig ew = psd_factor(w[l]);
      w_sqrt[l] = ew.sqrt;
      w_invsqrt[l] = ew.inv_sqrt;
      CMatrix lam = ew.inv_sqrt * x[l] * ew.inv_sqrt;
      symmetrize(lam);
      lambda[l] = hermitian_eig(lam);
    }

    // Schur complement M_{cd} = sum_l <A_c, W A_d W>.
    std::vector<Blocks> waw(m);
    for (int c = 0; c < m; ++c) {
      waw[c].resize(nblocks);
      for (size_t l = 0; l < nblocks; ++l) {
        waw[c][l] = w[l] * con[c][l] * w[l];
        symmetrize(waw[c][l]);
      }
    }
    RMatrix schur(m, m);
    for (int c = 0; c < m; ++c)
      for (int d = c; d < m; ++d) {
        const double v = block_inner(con[c], waw[d]);
        schur(c, d) = v;
        schur(d, c) = v;
      }
    Eigen::LDLT<RMatrix> ldlt(schur);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      schur.diagonal().array() += 1e-12 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
      ldlt.compute(schur);
      if (ldlt.info() != Eigen::Success) break;
    }

    auto newton = [&](const Blocks& rc, Eigen::VectorXd& dy, Blocks& dz, Blocks& dx) {
      Eigen::VectorXd rhs(m);
      for (int c = 0; c < m; ++c) {
        double acc = rp(c);
        for (size_t l = 0; l < nblocks; ++l) {
          CMatrix g = rc[l] - w[l] * rd[l] * w[l];
          acc -= re_trace_prod(con[c][l], 0.5 * (g + g.adjoint()));
        }
        rhs(c) = acc;
      }
      dy = ldlt.solve(rhs);
      dz.resize(nblocks);
      dx.resize(nblocks);
      for (size_t l = 0; l < nblocks; ++l) {
        dz[l] = rd[l];
        for (int c = 0; c < m; ++c) dz[l] -= dy(c) * con[c][l];
        symmetrize(dz[l]);
        dx[l] = rc[l] - w[l] * dz[l] * w[l];
        symmetrize(dx[l]);
      }
    };

    // Predictor (affine scaling).
    Blocks rc_aff(nblocks);
    for (size_t l = 0; l < nblocks; ++l) rc_aff[l] = -x[l];
    Eigen::VectorXd dy_aff;
    Blocks dz_aff, dx_aff;
    newton(rc_aff, dy_aff, dz_aff, dx_aff);

    double ap_aff = 1.0, ad_aff = 1.0;
    for (size_t l = 0; l < nblocks; ++l) {
      ap_aff = std::min(ap_aff, max_step(x_invsqrt[l], dx_aff[l]));
      ad_aff = std::min(ad_aff, max_step(z_invsqrt[l], dz_aff[l]));
    }
    double mu_aff = 0.0;
    for (size_t l = 0; l < nblocks; ++l)
      mu_aff += re_trace_prod(x[l] + ap_aff * dx_aff[l], z[l] + ad_aff * dz_aff[l]);
    mu_aff = std::max(mu_aff / total_dim, 0.0);
    const double sigma = std::min(1.0, std::pow(mu_aff / std::max(mu, 1e-300), 3.0));

    // Corrector, formed in the scaled space where X and Z both equal Lambda:
    // solve H(U Lambda + Lambda U) = sigma mu I - Lambda^2 - H(dX~ dZ~) for
    // U = dX~ + dZ~ (a Lyapunov equation, diagonal in Lambda's eigenbasis),
    // then map back so that dX + W dZ W = rc.
    Blocks rc(nblocks);
    for (size_t l = 0; l < nblocks; ++l) {
      CMatrix dxs = w_invsqrt[l] * dx_aff[l] * w_invsqrt[l];
      CMatrix dzs = w_sqrt[l] * dz_aff[l] * w_sqrt[l];
      CMatrix cross = dxs * dzs;
      CMatrix rhs = -0.5 * (cross + cross.adjoint());
      const CMatrix& q = lambda[l].eigenvectors;
      const RVector& d = lambda[l].eigenvalues;
      rhs = (q.adjoint() * rhs * q).eval();
      for (Eigen::Index i = 0; i < d.size(); ++i)
        rhs(i, i) += sigma * mu - d(i) * d(i);
      for (Eigen::Index i = 0; i < d.size(); ++i)
        for (Eigen::Index j = 0; j < d.size(); ++j)
          rhs(i, j) *= 2.0 / std::max(d(i) + d(j), 1e-300);
      rc[l] = w_sqrt[l] * q * rhs * q.adjoint() * w_sqrt[l];
      symmetrize(rc[l]);
    }
    Eigen::VectorXd dy;
    Blocks dz, dx;
    newton(rc, dy, dz, dx);

    double ap = 1.0, ad = 1.0;
    for (size_t l = 0; l < nblocks; ++l) {
      ap = std::min(ap, max_step(x_invsqrt[l], dx[l]));
      ad = std::min(ad, max_step(z_invsqrt[l], dz[l]));
    }
    ap = std::min(1.0, cfg.step_fraction * ap);
    ad = std::min(1.0, cfg.step_fraction * ad);
    if (std::max(ap, ad) < 1e-12) break;

    for (size_t l = 0; l < nblocks; ++l) {
      x[l] += ap * dx[l];
      z[l] += ad * dz[l];
      symmetrize(x[l]);
      symmetrize(z[l]);
    }
    y += ad * dy;
  }

  best.status = SdpStatus::SlowProgress;
  return best;
}

bool VerifyReport::within(const SolverConfig& cfg) const {
  if (max_equality_residual > cfg.feas_tol) return false;
  if (gap > cfg.gap_tol) return false;
  for (double e : min_primal_eigenvalues)
    if (e < -1e-8) return false;
  return true;
}

VerifyReport verify_solution(const SdpProblem& p, const SdpSolution& s,
                             const SolverConfig& cfg) {
  (void)cfg;
  VerifyReport rep;
  const size_t nblocks = p.block_sides.size();
  for (const auto& c : p.constraints) {
    double v = 0.0;
    for (size_t l = 0; l < nblocks; ++l)
      v += re_trace_prod(c.coeff[l], s.primal_blocks[l]);
    rep.max_equality_residual =
        std::max(rep.max_equality_residual, std::abs(v - c.rhs));
  }
  for (size_t l = 0; l < nblocks; ++l) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(
        0.5 * (s.primal_blocks[l] + s.primal_blocks[l].adjoint()),
        Eigen::EigenvaluesOnly);
    rep.min_primal_eigenvalues.push_back(es.eigenvalues().minCoeff());
    rep.primal_objective += re_trace_prod(p.objective[l], s.primal_blocks[l]);
  }
  if (s.dual_vector.size() == static_cast<Eigen::Index>(p.constraints.size())) {
    for (size_t c = 0; c < p.constraints.size(); ++c)
      rep.dual_objective += s.dual_vector(static_cast<Eigen::Index>(c)) *
                            p.constraints[c].rhs;
    if (s.dual_blocks.size() == nblocks) {
      double acc = 0.0;
      for (size_t l = 0; l < nblocks; ++l) {
        CMatrix r = p.objective[l] - s.dual_blocks[l];
        for (size_t c = 0; c < p.constraints.size(); ++c)
          r -= s.dual_vector(static_cast<Eigen::Index>(c)) * p.constraints[c].coeff[l];
        acc += r.squaredNorm();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(
            0.5 * (s.dual_blocks[l] + s.dual_blocks[l].adjoint()),
            Eigen::EigenvaluesOnly);
        rep.min_dual_eigenvalues.push_back(es.eigenvalues().minCoeff());
      }
      rep.dual_residual = std::sqrt(acc);
    }
  }
  rep.gap = std::abs(rep.primal_objective - rep.dual_objective) /
            (1.0 + std::abs(rep.primal_objective));
  return rep;
}

}  // namespace qzec
