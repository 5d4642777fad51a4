#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace korteweg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  std::size_t identity_pairs = 1000;  ///< random field pairs per grid size
  std::size_t states_1d = 1000;
  std::size_t states_2d = 200;
};

/// Randomised property checks of the semi-discrete schemes: summation
/// identities of the difference operators, conservation of every right-hand
/// side, and the energy-balance reports (with both dissipation variants for
/// conservation).
std::vector<CheckResult> verify_suite(const VerifyOptions& options = {});

}  // namespace korteweg
