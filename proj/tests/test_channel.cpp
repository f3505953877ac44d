#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qzec/channel.hpp"
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

CMatrix random_density(int d, Rng& rng) {
  CMatrix g = random_gaussian_matrix(d, d, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// Reorders kron(choi(a), choi(b)) from (A1 B1)(A2 B2) to (A1 A2)(B1 B2).
CMatrix interleave(const ChoiMatrix& ja, const ChoiMatrix& jb) {
  const int da1 = ja.dim_in, db1 = ja.dim_out, da2 = jb.dim_in, db2 = jb.dim_out;
  const int n = da1 * db1 * da2 * db2;
  CMatrix raw = kron(ja.matrix, jb.matrix);
  std::vector<int> perm(n);
  for (int a1 = 0; a1 < da1; ++a1)
    for (int b1 = 0; b1 < db1; ++b1)
      for (int a2 = 0; a2 < da2; ++a2)
        for (int b2 = 0; b2 < db2; ++b2) {
          const int src = ((a1 * db1 + b1) * da2 + a2) * db2 + b2;
          const int dst = (a1 * da2 + a2) * db1 * db2 + (b1 * db2 + b2);
          perm[src] = dst;
        }
  CMatrix out = zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(perm[i], perm[j]) = raw(i, j);
  return out;
}

}  // namespace

TEST_CASE("from_kraus validation") {
  Channel id = from_kraus({identity(2)});
  CHECK(id.dim_in == 2);
  CHECK(id.dim_out == 2);

  const double s = std::sqrt(0.5);
  Channel deph = from_kraus({s * identity(2), s * pauli_z(2)});
  CHECK(deph.kraus.size() == 2);

  CHECK_THROWS_AS(from_kraus({identity(2), pauli_x(2)}), std::invalid_argument);
  CHECK_THROWS_AS(from_kraus({identity(2), identity(3)}), std::invalid_argument);
  CHECK_THROWS_AS(from_kraus({}), std::invalid_argument);
}

TEST_CASE("choi construction") {
  ChoiMatrix j = choi(from_kraus({identity(2)}));
  CHECK(j.matrix(0, 0) == Complex(1, 0));
  CHECK(j.matrix(0, 3) == Complex(1, 0));
  CHECK(j.matrix(3, 0) == Complex(1, 0));
  CHECK(j.matrix(3, 3) == Complex(1, 0));
  CHECK(std::abs(j.matrix.trace() - 2.0) < 1e-12);
  validate_choi(j);

  // Pauli channel Choi equals the Bell-diagonal mixture.
  PauliSpec spec{{0.4, 0.3, 0.2, 0.1}};
  ChoiMatrix jp = choi(pauli_channel(spec));
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  CMatrix expected = zeros(4, 4);
  int idx = 0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      CMatrix op = identity(2);
      if (i) op = pauli_x(2) * op;
      if (k) op = op * pauli_z(2);
      CVector v = kron(identity(2), op) * phi;
      expected += spec.probs[idx++] * v * v.adjoint();
    }
  CHECK((jp.matrix - expected).norm() < 1e-12);

  // amplitude damping is nonunital: Tr_A J != I_B
  ChoiMatrix jad = choi(amplitude_damping(0.5));
  CHECK((partial_trace(jad.matrix, 2, 2, Subsystem::B) - identity(2)).norm() > 0.1);
}

TEST_CASE("kraus_from_choi round trip") {
  Channel id2 = kraus_from_choi(choi(from_kraus({identity(2)})));
  CHECK(id2.kraus.size() == 1);
  // single Kraus operator proportional to a unitary
  CMatrix e = id2.kraus[0];
  CHECK((e.adjoint() * e - identity(2)).norm() < 1e-10);

  const double s = std::sqrt(0.5);
  Channel deph = from_kraus({s * identity(2), s * pauli_z(2)});
  Channel deph2 = kraus_from_choi(choi(deph));
  CHECK(deph2.kraus.size() == 2);

  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Channel ch = random_channel(2, 2, 1 + trial % 4, rng);
    Channel rt = kraus_from_choi(choi(ch));
    for (int i = 0; i < 20; ++i) {
      CMatrix rho = random_density(2, rng);
      CHECK((ch.apply(rho) - rt.apply(rho)).norm() < 1e-8);
    }
    CHECK((choi(ch).matrix - choi(rt).matrix).norm() < 1e-8);
  }
}

TEST_CASE("is_unital") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> support;
    for (int i = 0; i < 4; ++i)
      if (rng.uniform() < 0.5) support.push_back(i);
    if (support.empty()) support.push_back(0);
    auto probs = random_probs_on_support(4, support, rng);
    PauliSpec spec;
    std::copy(probs.begin(), probs.end(), spec.probs.begin());
    CHECK(is_unital(pauli_channel(spec)));
  }
  CHECK_FALSE(is_unital(amplitude_damping(0.3)));
  CHECK_FALSE(is_unital(extremal_channel(0.7, 0.3)));
  CHECK_THROWS_AS(is_unital(random_channel(2, 3, 1, rng)), std::invalid_argument);
}

TEST_CASE("pauli channel structure") {
  CHECK(pauli_channel(PauliSpec{{1, 0, 0, 0}}).kraus.size() == 1);
  CHECK(pauli_channel(PauliSpec{{0.25, 0.25, 0.25, 0.25}}).kraus.size() == 4);
  CHECK(pauli_channel(PauliSpec{{0.5, 0.25, 0.25, 0}}).kraus.size() == 3);
  CHECK_THROWS_AS(pauli_channel(PauliSpec{{0.5, 0.6, 0, 0}}), SpecError);
  CHECK_THROWS_AS(pauli_channel(PauliSpec{{-0.1, 1.1, 0, 0}}), SpecError);
}

TEST_CASE("generalized pauli channels") {
  std::vector<double> p0(9, 0.0);
  p0[0] = 1.0;
  Channel id3 = generalized_pauli_channel(3, p0);
  CHECK(id3.kraus.size() == 1);
  CHECK((id3.kraus[0] - identity(3)).norm() < 1e-12);

  Channel uniform = generalized_pauli_channel(3, std::vector<double>(9, 1.0 / 9));
  CHECK(uniform.kraus.size() == 9);
  CHECK(is_unital(uniform));

  // d = 2 reduces exactly to pauli_channel
  PauliSpec spec{{0.4, 0.3, 0.2, 0.1}};
  Channel a = pauli_channel(spec);
  Channel b = generalized_pauli_channel(2, {0.4, 0.3, 0.2, 0.1});
  CHECK((choi(a).matrix - choi(b).matrix).norm() < 1e-12);
}

TEST_CASE("extremal channels") {
  Channel id = extremal_channel(0.0, 0.0);
  CHECK(id.kraus.size() == 1);  // zero Kraus operator dropped
  CHECK((id.kraus[0] - identity(2)).norm() < 1e-12);

  CHECK_FALSE(is_unital(extremal_channel(0.7, 0.3)));

  // trace preserving for all angles, including the damping-like extreme
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const double theta = rng.uniform() * 7.0 - 3.5;
    const double phi = rng.uniform() * 7.0 - 3.5;
    CHECK_NOTHROW(extremal_channel(theta, phi));
  }
  CHECK_NOTHROW(extremal_channel(std::numbers::pi / 2, 0.0));
}

TEST_CASE("tensor products") {
  Channel id4 = tensor(from_kraus({identity(2)}), from_kraus({identity(2)}));
  CHECK(id4.dim_in == 4);
  CHECK(id4.kraus.size() == 1);

  const double s = std::sqrt(0.5);
  Channel deph = from_kraus({s * identity(2), s * pauli_z(2)});
  CHECK(tensor(deph, deph).kraus.size() == 4);

  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    Channel a = random_channel(2, 2, 1 + trial % 3, rng);
    Channel b = random_channel(2, 2, 1 + (trial + 1) % 3, rng);
    ChoiMatrix jab = choi(tensor(a, b));
    CHECK((jab.matrix - interleave(choi(a), choi(b))).norm() < 1e-10);
  }
}

TEST_CASE("support projection") {
  CMatrix p1 = support_projection(choi(from_kraus({identity(2)})));
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  CHECK((p1 - 0.5 * phi * phi.adjoint()).norm() < 1e-10);

  Rng rng(41);
  Channel full = random_channel(2, 2, 4, rng);
  CHECK((support_projection(choi(full)) - identity(4)).norm() < 1e-9);

  // Pauli k=2: sum of two orthogonal Bell projectors
  const double s = std::sqrt(0.5);
  CMatrix p2 = support_projection(choi(from_kraus({s * identity(2), s * pauli_z(2)})));
  CHECK(rank_with_tol(p2) == 2);
  CHECK((p2 * p2 - p2).norm() < 1e-9);
  CHECK((p2 - p2.adjoint()).norm() < 1e-9);

  // rank stable across rel_tol when the spectrum has a clean gap
  for (double tol : {1e-12, 1e-9, 1e-6})
    CHECK(rank_with_tol(support_projection(choi(full), tol)) == 4);
}

TEST_CASE("channel spec parsing") {
  auto spec = parse_channel_spec(R"({"type":"pauli","probs":[0.5,0.5,0,0]})");
  Channel deph = realize(spec);
  CHECK(deph.kraus.size() == 2);
  CHECK(is_unital(deph));

  Channel ext = realize(parse_channel_spec(R"({"type":"extremal","theta":0.7,"phi":0.3})"));
  CHECK_FALSE(is_unital(ext));

  Channel kr = realize(parse_channel_spec(
      R"({"type":"kraus","ops":[[[0,[0,-1]],[[0,1],0]]]})"));  // Pauli Y
  CHECK(kr.kraus.size() == 1);

  auto kinds = [](const std::string& text) {
    try {
      parse_channel_spec(text);
    } catch (const SpecError& e) {
      return e.kind();
    }
    return SpecErrorKind::BadField;
  };
  CHECK(kinds("{not json") == SpecErrorKind::MalformedJson);
  CHECK(kinds(R"({"type":"frobnicate"})") == SpecErrorKind::UnknownType);
  CHECK(kinds(R"({"type":"pauli","probs":[0.5,0.6,0,0]})") == SpecErrorKind::SimplexViolation);
  CHECK(kinds(R"({"type":"kraus","ops":[[[1,0],[0]]]})") == SpecErrorKind::BadMatrix);

  // Choi specs round-trip through realize.
  Channel viaChoi = realize(parse_channel_spec(
      R"({"type":"choi","matrix":[[1,0,0,1],[0,0,0,0],[0,0,0,0],[1,0,0,1]]})"));
  CHECK(viaChoi.kraus.size() == 1);
}
