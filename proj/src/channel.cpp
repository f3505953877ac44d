#include "qzec/channel.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

namespace qzec {

using nlohmann::json;

namespace {

// (I x E)|Phi> with |Phi> = sum_k |kk> unnormalized; component (a, b) = E(b, a).
CVector lift_kraus(const CMatrix& e) {
  const Eigen::Index din = e.cols(), dout = e.rows();
  CVector v(din * dout);
  for (Eigen::Index a = 0; a < din; ++a)
    for (Eigen::Index b = 0; b < dout; ++b)
      v(a * dout + b) = e(b, a);
  return v;
}

void check_simplex(const std::vector<double>& probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw SpecError(SpecErrorKind::SimplexViolation,
                      "probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "probabilities must sum to 1, got " << sum;
    throw SpecError(SpecErrorKind::SimplexViolation, msg.str());
  }
}

}  // namespace

CMatrix Channel::apply(const CMatrix& rho) const {
  CMatrix out = zeros(dim_out, dim_out);
  for (const CMatrix& e : kraus) out += e * rho * e.adjoint();
  return out;
}

Channel from_kraus(const std::vector<CMatrix>& ops) {
  if (ops.empty()) throw std::invalid_argument("from_kraus: empty Kraus list");
  const Eigen::Index dout = ops.front().rows(), din = ops.front().cols();
  if (din < 1 || dout < 1)
    throw std::invalid_argument("from_kraus: degenerate operator shape");
  CMatrix accum = zeros(din, din);
  for (const CMatrix& e : ops) {
    if (e.rows() != dout || e.cols() != din)
      throw std::invalid_argument("from_kraus: Kraus operators have mixed shapes");
    accum += e.adjoint() * e;
  }
  if ((accum - identity(static_cast<int>(din))).norm() > 1e-9)
    throw std::invalid_argument(
        "from_kraus: sum E^dag E != I, map is not trace preserving");
  return Channel{static_cast<int>(din), static_cast<int>(dout), ops};
}

ChoiMatrix choi(const Channel& ch) {
  const Eigen::Index n = static_cast<Eigen::Index>(ch.dim_in) * ch.dim_out;
  CMatrix j = zeros(static_cast<int>(n), static_cast<int>(n));
  for (const CMatrix& e : ch.kraus) {
    CVector v = lift_kraus(e);
    j += v * v.adjoint();
  }
  return ChoiMatrix{j, ch.dim_in, ch.dim_out};
}

void validate_choi(const ChoiMatrix& j, double tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(j.dim_in) * j.dim_out;
  if (j.matrix.rows() != n || j.matrix.cols() != n)
    throw std::invalid_argument("choi: matrix side does not match dim_in * dim_out");
  EigDecomposition eig = hermitian_eig(j.matrix);
  const double scale = std::max(1.0, j.matrix.norm());
  if (eig.eigenvalues.minCoeff() < -1e-9 * scale)
    throw std::invalid_argument("choi: matrix is not positive semidefinite");
  CMatrix marginal = partial_trace(j.matrix, j.dim_in, j.dim_out, Subsystem::A);
  if ((marginal - identity(j.dim_in)).norm() > tol)
    throw std::invalid_argument("choi: Tr_B J != I_A, not a channel Choi matrix");
}

Channel kraus_from_choi(const ChoiMatrix& j, double rel_tol) {
  validate_choi(j);
  EigDecomposition eig = hermitian_eig(j.matrix);
  const double cutoff = rel_tol * std::max(eig.eigenvalues(0), 1e-300);
  std::vector<CMatrix> ops;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues(i);
    if (lam <= cutoff) continue;
    CMatrix e(j.dim_out, j.dim_in);
    for (int a = 0; a < j.dim_in; ++a)
      for (int b = 0; b < j.dim_out; ++b)
        e(b, a) = std::sqrt(lam) * eig.eigenvectors(a * j.dim_out + b, i);
    ops.push_back(e);
  }
  return from_kraus(ops);
}

bool is_unital(const Channel& ch, double tol) {
  if (ch.dim_in != ch.dim_out)
    throw std::invalid_argument("is_unital: channel is not square");
  CMatrix accum = zeros(ch.dim_out, ch.dim_out);
  for (const CMatrix& e : ch.kraus) accum += e * e.adjoint();
  return (accum - identity(ch.dim_out)).norm() <= tol;
}

CMatrix pauli_x(int d) {
  CMatrix x = zeros(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

CMatrix pauli_z(int d) {
  CMatrix z = zeros(d, d);
  const double step = 2.0 * std::numbers::pi / d;
  for (int j = 0; j < d; ++j) z(j, j) = std::polar(1.0, step * j);
  return z;
}

Channel generalized_pauli_channel(int d, const std::vector<double>& probs) {
  if (d < 2) throw SpecError(SpecErrorKind::BadField, "generalized_pauli: d must be >= 2");
  if (probs.size() != static_cast<size_t>(d) * d)
    throw SpecError(SpecErrorKind::SimplexViolation,
                    "generalized_pauli: expected d*d probabilities");
  check_simplex(probs);
  const CMatrix x = pauli_x(d), z = pauli_z(d);
  std::vector<CMatrix> ops;
  CMatrix xi = identity(d);
  for (int i = 0; i < d; ++i) {
    CMatrix xizj = xi;
    for (int j = 0; j < d; ++j) {
      const double p = probs[static_cast<size_t>(i) * d + j];
      if (p >= 1e-12) ops.push_back(std::sqrt(p) * xizj);
      xizj = xizj * z;
    }
    xi = x * xi;
  }
  return from_kraus(ops);
}

Channel pauli_channel(const PauliSpec& p) {
  return generalized_pauli_channel(
      2, std::vector<double>(p.probs.begin(), p.probs.end()));
}

Channel extremal_channel(double theta, double phi) {
  CMatrix e1 = zeros(2, 2), e2 = zeros(2, 2);
  e1(0, 0) = std::cos(theta);
  e1(1, 1) = std::cos(phi);
  e2(0, 1) = std::sin(phi);
  e2(1, 0) = std::sin(theta);
  std::vector<CMatrix> ops;
  if (e1.norm() > 1e-14) ops.push_back(e1);
  if (e2.norm() > 1e-14) ops.push_back(e2);
  return from_kraus(ops);
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<CMatrix> ops;
  ops.reserve(a.kraus.size() * b.kraus.size());
  for (const CMatrix& ea : a.kraus)
    for (const CMatrix& eb : b.kraus) ops.push_back(kron(ea, eb));
  return from_kraus(ops);
}

CMatrix support_projection(const ChoiMatrix& j, double rel_tol) {
  validate_choi(j);
  EigDecomposition eig = hermitian_eig(j.matrix);
  const double cutoff = rel_tol * std::max(eig.eigenvalues(0), 1e-300);
  const Eigen::Index n = j.matrix.rows();
  CMatrix p = zeros(static_cast<int>(n), static_cast<int>(n));
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > cutoff)
      p += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
  return p;
}

namespace {

Complex parse_entry(const json& e) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return Complex(e[0].get<double>(), e[1].get<double>());
  throw SpecError(SpecErrorKind::BadMatrix,
                  "matrix entries must be numbers or [re, im] pairs");
}

CMatrix parse_matrix(const json& m) {
  if (!m.is_array() || m.empty() || !m[0].is_array())
    throw SpecError(SpecErrorKind::BadMatrix, "matrix must be an array of rows");
  const size_t rows = m.size(), cols = m[0].size();
  if (cols == 0) throw SpecError(SpecErrorKind::BadMatrix, "matrix has empty rows");
  CMatrix out(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!m[i].is_array() || m[i].size() != cols)
      throw SpecError(SpecErrorKind::BadMatrix, "matrix rows have mixed lengths");
    for (size_t j = 0; j < cols; ++j) out(i, j) = parse_entry(m[i][j]);
  }
  return out;
}

double require_number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number())
    throw SpecError(SpecErrorKind::BadField,
                    std::string("missing or non-numeric field \"") + key + "\"");
  return doc[key].get<double>();
}

}  // namespace

ChannelSpec parse_channel_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(SpecErrorKind::MalformedJson, e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw SpecError(SpecErrorKind::UnknownType,
                    "channel spec must be an object with a string \"type\"");
  const std::string type = doc["type"].get<std::string>();

  if (type == "pauli") {
    if (!doc.contains("probs") || !doc["probs"].is_array() || doc["probs"].size() != 4)
      throw SpecError(SpecErrorKind::BadField, "pauli spec needs \"probs\": [p00,p01,p10,p11]");
    PauliSpec spec;
    for (int i = 0; i < 4; ++i) {
      if (!doc["probs"][i].is_number())
        throw SpecError(SpecErrorKind::BadField, "pauli probabilities must be numbers");
      spec.probs[i] = doc["probs"][i].get<double>();
    }
    check_simplex({spec.probs.begin(), spec.probs.end()});
    return spec;
  }
  if (type == "generalized_pauli") {
    GeneralizedPauliSpec spec;
    spec.d = static_cast<int>(require_number(doc, "d"));
    if (spec.d < 2) throw SpecError(SpecErrorKind::BadField, "d must be >= 2");
    if (!doc.contains("probs") || !doc["probs"].is_array() ||
        doc["probs"].size() != static_cast<size_t>(spec.d) * spec.d)
      throw SpecError(SpecErrorKind::BadField,
                      "generalized_pauli spec needs \"probs\" with d*d entries");
    for (const auto& p : doc["probs"]) {
      if (!p.is_number())
        throw SpecError(SpecErrorKind::BadField, "probabilities must be numbers");
      spec.probs.push_back(p.get<double>());
    }
    check_simplex(spec.probs);
    return spec;
  }
  if (type == "extremal") {
    return ExtremalSpec{require_number(doc, "theta"), require_number(doc, "phi")};
  }
  if (type == "kraus") {
    if (!doc.contains("ops") || !doc["ops"].is_array() || doc["ops"].empty())
      throw SpecError(SpecErrorKind::BadField, "kraus spec needs a nonempty \"ops\" array");
    KrausSpec spec;
    for (const auto& m : doc["ops"]) spec.ops.push_back(parse_matrix(m));
    return spec;
  }
  if (type == "choi") {
    if (!doc.contains("matrix"))
      throw SpecError(SpecErrorKind::BadField, "choi spec needs a \"matrix\" field");
    ChoiSpec spec;
    spec.matrix = parse_matrix(doc["matrix"]);
    if (spec.matrix.rows() != spec.matrix.cols())
      throw SpecError(SpecErrorKind::BadMatrix, "Choi matrix must be square");
    if (doc.contains("dim_in")) {
      spec.dim_in = static_cast<int>(require_number(doc, "dim_in"));
      if (spec.dim_in < 1 || spec.matrix.rows() % spec.dim_in != 0)
        throw SpecError(SpecErrorKind::BadField, "dim_in does not divide the matrix side");
      spec.dim_out = static_cast<int>(spec.matrix.rows()) / spec.dim_in;
    } else {
      const int side = static_cast<int>(spec.matrix.rows());
      const int root = static_cast<int>(std::lround(std::sqrt(double(side))));
      if (root * root != side)
        throw SpecError(SpecErrorKind::BadField,
                        "non-square bipartition: specify \"dim_in\" explicitly");
      spec.dim_in = spec.dim_out = root;
    }
    return spec;
  }
  throw SpecError(SpecErrorKind::UnknownType, "unknown channel type \"" + type + "\"");
}

Channel realize(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& s) -> Channel {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KrausSpec>) {
          return from_kraus(s.ops);
        } else if constexpr (std::is_same_v<T, ChoiSpec>) {
          return kraus_from_choi(ChoiMatrix{s.matrix, s.dim_in, s.dim_out});
        } else if constexpr (std::is_same_v<T, PauliSpec>) {
          return pauli_channel(s);
        } else if constexpr (std::is_same_v<T, GeneralizedPauliSpec>) {
          return generalized_pauli_channel(s.d, s.probs);
        } else {
          return extremal_channel(s.theta, s.phi);
        }
      },
      spec);
}

}  // namespace qzec
