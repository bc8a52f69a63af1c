#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eitmw/model.hpp"

namespace eitmw {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized self-check of the library invariants: dark-state round trip,
/// characteristic-polynomial residuals, trace and Hermiticity preservation of
/// the Liouvillian, steady-state validity, phase canonicalization, the
/// general dark-state inequalities and the resonant dark-phase structure.
/// Deterministic for a given seed.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed = 20240101, const ToleranceConfig& tol = {});

}  // namespace eitmw
