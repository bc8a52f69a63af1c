#include "eitmw/darkstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eitmw {
namespace {

constexpr double kPhaseTol = 1e-10;
constexpr double kConditionTol = 1e-10;

}  // namespace

double required_detuning(double g, double G, double omega, PhaseBranch branch) {
  if (g == 0.0 || G == 0.0) {
    throw Error(ErrorCode::DegenerateCoupling, "dark-state condition needs g > 0 and G > 0");
  }
  const double magnitude = omega / (g * G) * (g * g - G * G);
  return branch == PhaseBranch::Zero ? -magnitude : magnitude;
}

DarkStateCondition dark_state_condition(double g, double G, double omega, PhaseBranch branch) {
  return {branch, required_detuning(g, G, omega, branch)};
}

std::optional<PhaseBranch> satisfied_branch(const SystemParams& p) {
  const double two_photon = p.delta1 - p.delta2;
  const double tol =
      kConditionTol * std::max({1.0, std::abs(p.delta1), std::abs(p.delta2)});

  if (p.omega == 0.0) {
    if (std::abs(two_photon) <= tol) return PhaseBranch::Zero;
    return std::nullopt;
  }
  if (p.g == 0.0 || p.G == 0.0) return std::nullopt;

  const double phi = canonical_phase(p.phi);
  std::optional<PhaseBranch> branch;
  if (phi <= kPhaseTol || 2.0 * std::numbers::pi - phi <= kPhaseTol) {
    branch = PhaseBranch::Zero;
  } else if (std::abs(phi - std::numbers::pi) <= kPhaseTol) {
    branch = PhaseBranch::Pi;
  } else {
    return std::nullopt;
  }

  if (std::abs(two_photon - required_detuning(p.g, p.G, p.omega, *branch)) <= tol) return branch;
  return std::nullopt;
}

Vector3c dark_state_vector(double g, double G) {
  const double norm = std::hypot(g, G);
  if (norm == 0.0) throw Error(ErrorCode::DegenerateCoupling, "g = G = 0 has no dark direction");
  return Vector3c(G / norm, -g / norm, 0.0);
}

double dark_eigenvalue(const SystemParams& p) {
  const auto branch = satisfied_branch(p);
  if (!branch) {
    throw Error(ErrorCode::ConditionNotSatisfied, "parameters do not satisfy a dark-state condition",
                p.delta1 - p.delta2);
  }
  if (p.G == 0.0) throw Error(ErrorCode::DegenerateCoupling, "dark eigenvalue needs G > 0");
  const double shift = p.g * p.omega / p.G;
  return *branch == PhaseBranch::Zero ? p.delta1 + shift : p.delta1 - shift;
}

std::pair<Vector3c, Vector3c> microwave_dressed_states(double phi) {
  const double s = std::numbers::sqrt2 / 2.0;
  const cd e = std::polar(s, phi);
  return {Vector3c(e, s, 0.0), Vector3c(e, -s, 0.0)};
}

}  // namespace eitmw
