#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qzec/linalg.hpp"

namespace qzec {

/// Completely positive trace-preserving map in Kraus form.
struct Channel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<CMatrix> kraus;

  CMatrix apply(const CMatrix& rho) const;
};

/// Choi-Jamiolkowski matrix built from the unnormalized maximally entangled
/// state |Phi> = sum_k |kk>, reference system A first. Tr J = dim_in.
struct ChoiMatrix {
  CMatrix matrix;
  int dim_in = 0;
  int dim_out = 0;
};

struct KrausSpec {
  std::vector<CMatrix> ops;
};
struct ChoiSpec {
  CMatrix matrix;
  int dim_in = 0;
  int dim_out = 0;
};
struct PauliSpec {
  std::array<double, 4> probs{};  // p00, p01, p10, p11
};
struct GeneralizedPauliSpec {
  int d = 2;
  std::vector<double> probs;  // row-major d x d
};
struct ExtremalSpec {
  double theta = 0.0;
  double phi = 0.0;
};

using ChannelSpec =
    std::variant<KrausSpec, ChoiSpec, PauliSpec, GeneralizedPauliSpec, ExtremalSpec>;

enum class SpecErrorKind {
  MalformedJson,
  UnknownType,
  SimplexViolation,
  BadMatrix,
  BadField,
};

class SpecError : public std::runtime_error {
 public:
  SpecError(SpecErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  SpecErrorKind kind() const { return kind_; }

 private:
  SpecErrorKind kind_;
};

Channel from_kraus(const std::vector<CMatrix>& ops);
ChoiMatrix choi(const Channel& ch);
Channel kraus_from_choi(const ChoiMatrix& j, double rel_tol = 1e-9);
bool is_unital(const Channel& ch, double tol = 1e-9);
Channel pauli_channel(const PauliSpec& p);
Channel generalized_pauli_channel(int d, const std::vector<double>& probs);
Channel extremal_channel(double theta, double phi);
Channel tensor(const Channel& a, const Channel& b);
CMatrix support_projection(const ChoiMatrix& j, double rel_tol = 1e-9);

void validate_choi(const ChoiMatrix& j, double tol = 1e-9);

// Pauli unitaries X^i Z^j in dimension d (omega = exp(2 pi i / d)).
CMatrix pauli_x(int d = 2);
CMatrix pauli_z(int d = 2);

ChannelSpec parse_channel_spec(const std::string& text);
Channel realize(const ChannelSpec& spec);

}  // namespace qzec
