#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qzec/ncgraph.hpp"
#include "qzec/sampling.hpp"

using namespace qzec;

namespace {

Channel amplitude_damping(double gamma) {
  CMatrix e1 = zeros(2, 2), e2 = zeros(2, 2);
  e1(0, 0) = 1.0;
  e1(1, 1) = std::sqrt(1.0 - gamma);
  e2(0, 1) = std::sqrt(gamma);
  return from_kraus({e1, e2});
}

Channel pauli_k(const std::array<double, 4>& p) { return pauli_channel(PauliSpec{p}); }

}  // namespace

TEST_CASE("operator_space_basis") {
  OperatorSpaceBasis dep = operator_space_basis({identity(2), pauli_z(2),
                                                 identity(2) + pauli_z(2)});
  CHECK(dep.basis.size() == 2);
  for (size_t i = 0; i < dep.basis.size(); ++i)
    for (size_t j = 0; j < dep.basis.size(); ++j)
      CHECK(std::abs(hs_inner(dep.basis[i], dep.basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-9);

  // generators reconstruct from the basis
  for (const CMatrix& gen : {identity(2) + pauli_z(2)}) {
    CMatrix rebuilt = zeros(2, 2);
    for (const CMatrix& b : dep.basis) rebuilt += hs_inner(b, gen) * b;
    CHECK((rebuilt - gen).norm() < 1e-9);
  }

  Channel k3 = pauli_k({0.5, 0.25, 0.25, 0.0});
  CHECK(operator_space_basis(k3.kraus).basis.size() == 3);

  // extremal Kraus operators are HS-orthogonal
  Channel ext = extremal_channel(0.7, 0.3);
  CHECK(std::abs(hs_inner(ext.kraus[0], ext.kraus[1])) < 1e-12);
  CHECK(operator_space_basis(ext.kraus).basis.size() == 2);

  CHECK_THROWS_AS(operator_space_basis({zeros(2, 2)}), std::invalid_argument);
}

TEST_CASE("noncommutative graph dimension") {
  CHECK(noncommutative_graph_dim(pauli_k({1, 0, 0, 0})) == 1);
  CHECK(noncommutative_graph_dim(pauli_k({0.5, 0.5, 0, 0})) == 2);
  CHECK(noncommutative_graph_dim(pauli_k({0.5, 0.25, 0.25, 0})) == 4);
  CHECK(noncommutative_graph_dim(pauli_k({0.25, 0.25, 0.25, 0.25})) == 4);

  CHECK(noncommutative_graph_dim(amplitude_damping(0.4)) == 4);
  CHECK(noncommutative_graph_dim(extremal_channel(0.7, 0.3)) == 4);

  Rng rng(19);
  Channel unitary = random_channel(2, 2, 1, rng);
  CHECK(noncommutative_graph_dim(unitary) == 1);

  CHECK_THROWS_AS(noncommutative_graph_dim(random_channel(2, 3, 1, rng)),
                  std::invalid_argument);
}

TEST_CASE("graph dimension is a channel invariant") {
  Rng rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    Channel ch = random_channel(2, 2, 1 + trial % 4, rng);
    Channel other = kraus_from_choi(choi(ch));
    CHECK(noncommutative_graph_dim(ch) == noncommutative_graph_dim(other));
  }
}

TEST_CASE("qubit graphs avoid dimension 3 and contain the identity") {
  Rng rng(29);
  for (int rank = 1; rank <= 4; ++rank) {
    for (int i = 0; i < 50; ++i) {
      Channel ch = random_channel(2, 2, rank, rng);
      const int dim_s = noncommutative_graph_dim(ch);
      CHECK((dim_s == 1 || dim_s == 2 || dim_s == 4));

      OperatorSpaceBasis k = operator_space_basis(ch.kraus);
      CHECK(dim_s <= static_cast<int>(k.basis.size() * k.basis.size()));

      // sum E^dag E = I lies in S: project I onto span{G_i^dag G_j}
      std::vector<CMatrix> products;
      for (const CMatrix& gi : k.basis)
        for (const CMatrix& gj : k.basis) products.push_back(gi.adjoint() * gj);
      OperatorSpaceBasis s = operator_space_basis(products);
      CMatrix projected = zeros(2, 2);
      for (const CMatrix& b : s.basis) projected += hs_inner(b, identity(2)) * b;
      CHECK((projected - identity(2)).norm() < 1e-9);
    }
  }
}

TEST_CASE("qubit entanglement-assisted lookup") {
  CHECK(mse_qubit(1) == 4);
  CHECK(mse_qubit(2) == 2);
  CHECK(mse_qubit(3) == 2);
  CHECK(mse_qubit(4) == 1);
  CHECK(cse_qubit(1) == doctest::Approx(2.0));
  CHECK(cse_qubit(2) == doctest::Approx(1.0));
  CHECK(cse_qubit(4) == doctest::Approx(0.0));
  CHECK_THROWS_AS(mse_qubit(0), std::invalid_argument);
  CHECK_THROWS_AS(mse_qubit(5), std::invalid_argument);
  CHECK_THROWS_AS(cse_qubit(-1), std::invalid_argument);
}
