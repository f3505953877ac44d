#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qzec/sdp.hpp"

namespace qzec {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured vs expected, with tolerance
};

inline constexpr std::uint64_t kDefaultVerifySeed = 42;

/// Runs the full verification suite (closed forms, graph identities,
/// additivity, certification and property checks) with reproducible
/// randomized populations.
std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed = kDefaultVerifySeed,
                                                  const SolverConfig& cfg = {});

}  // namespace qzec
