#pragma once

#include <optional>
#include <utility>

#include "eitmw/model.hpp"

namespace eitmw {

/// The two microwave phases at which a dark state can exist.
enum class PhaseBranch { Zero, Pi };

struct DarkStateCondition {
  PhaseBranch phase_branch = PhaseBranch::Zero;
  /// Required value of D1 - D2.
  double required_two_photon_detuning = 0.0;
};

/// D1 - D2 needed for a dark state: -(W/gG)(g^2 - G^2) on the Zero branch,
/// +(W/gG)(g^2 - G^2) on the Pi branch. Throws DegenerateCoupling if g or G is 0.
double required_detuning(double g, double G, double omega, PhaseBranch branch);

DarkStateCondition dark_state_condition(double g, double G, double omega, PhaseBranch branch);

/// Which branch (if any) `p` satisfies. The phase must sit within 1e-10 of 0
/// or pi and the two-photon detuning within 1e-10 * max(1, |D1|, |D2|) of its
/// required value. With the microwave off the phase is irrelevant and plain
/// two-photon resonance is reported as the Zero branch.
std::optional<PhaseBranch> satisfied_branch(const SystemParams& p);

/// (G, -g, 0) / sqrt(g^2 + G^2). Throws DegenerateCoupling if g = G = 0.
Vector3c dark_state_vector(double g, double G);

/// Eigenvalue carried by the dark state at a satisfied condition:
/// D1 + gW/G on the Zero branch, D1 - gW/G on the Pi branch.
/// Throws ConditionNotSatisfied, or DegenerateCoupling if G = 0.
double dark_eigenvalue(const SystemParams& p);

/// (e^{i phi}, 1, 0)/sqrt(2) and (e^{i phi}, -1, 0)/sqrt(2).
std::pair<Vector3c, Vector3c> microwave_dressed_states(double phi);

}  // namespace eitmw
