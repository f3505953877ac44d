#pragma once

#include <Eigen/QR>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qzec/channel.hpp"

namespace qzec {

/// Deterministic random source. Gaussians come from an explicit Box-Muller
/// transform so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cgaussian() { return Complex(gaussian(), gaussian()); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline CMatrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
  return g;
}

inline CMatrix random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_gaussian_matrix(d, d, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  // Fix the phase convention so the distribution is Haar.
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

/// Haar-like random channel: orthonormalized Gaussian isometry from the input
/// space into output (x) environment, environment traced out. The environment
/// dimension sets the generic Choi rank.
inline Channel random_channel(int dim_in, int dim_out, int env_dim, Rng& rng) {
  if (env_dim < 1 || dim_out * env_dim < dim_in)
    throw std::invalid_argument("random_channel: environment too small for an isometry");
  CMatrix g = random_gaussian_matrix(dim_out * env_dim, dim_in, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix v = qr.householderQ() * CMatrix::Identity(dim_out * env_dim, dim_in);
  std::vector<CMatrix> kraus;
  for (int e = 0; e < env_dim; ++e) {
    CMatrix k(dim_out, dim_in);
    for (int b = 0; b < dim_out; ++b)
      for (int a = 0; a < dim_in; ++a) k(b, a) = v(b * env_dim + e, a);
    kraus.push_back(k);
  }
  return from_kraus(kraus);
}

inline Channel random_nonunital_qubit(Rng& rng, double defect_floor = 1e-3) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int env = 2 + static_cast<int>(rng.uniform() * 3.0);  // 2..4
    Channel ch = random_channel(2, 2, env, rng);
    CMatrix accum = zeros(2, 2);
    for (const CMatrix& e : ch.kraus) accum += e * e.adjoint();
    if ((accum - identity(2)).norm() > defect_floor) return ch;
  }
  throw std::runtime_error("random_nonunital_qubit: rejection sampling failed");
}

/// Random probability vector supported exactly on the given index pattern,
/// entries bounded away from zero.
inline std::vector<double> random_probs_on_support(int total, const std::vector<int>& support,
                                                   Rng& rng) {
  std::vector<double> p(total, 0.0);
  double sum = 0.0;
  for (int idx : support) {
    p[idx] = 0.1 + rng.uniform();
    sum += p[idx];
  }
  for (int idx : support) p[idx] /= sum;
  return p;
}

}  // namespace qzec
