#pragma once

#include <utility>

#include "eitmw/model.hpp"

/// Closed-form results for the resonant, weak-probe and general dark-state
/// conditions, each checked in the tests against the numerical steady state.
namespace eitmw {

// ---------------------------------------------------------------------------
// Phase dependence of the excited population (G = g, kappa = 0, resonance)
// ---------------------------------------------------------------------------

/// rho33(phi) = (1/3) (1 - A / (A + 6 g^2 W^2 sin^2 phi)) with the reference
/// A = 2 (g^2 - W^2)^2 + g^2 W^2 + 8 gamma^2 W^2.
///
/// The master equation gives the same shape without the g^2 W^2 term; see
/// rho33_resonant_phase_lindblad. Throws PreconditionViolation for negative
/// or non-finite input, or when the expression is 0/0 (g = W = 0).
double rho33_resonant_phase(double g, double omega, double gamma, double phi);

/// Same, reading g, W, gamma1 and phi from `p` after checking G = g,
/// kappa = 0, D1 = D2 = 0 and gamma1 = gamma2.
double rho33_resonant_phase(const SystemParams& p);

/// Exact steady-state rho33 of the master equation on the same domain:
/// A = 2 (g^2 - W^2)^2 + 8 gamma^2 W^2.
double rho33_resonant_phase_lindblad(double g, double omega, double gamma, double phi);

/// Reference full width of the dark-state dip versus phi:
/// 2 asin sqrt(1/6 + 4 gamma^2/(3 g^2) + (g^2 - W^2)^2/(3 g^2 W^2)).
/// Throws OutOfDomain when the root argument exceeds 1.
double phase_fwhm(double g, double omega, double gamma);

/// Full width of the dip at half the peak height for the master-equation
/// curve: 2 asin sqrt(A / (2A + 6 g^2 W^2)), A as in the _lindblad form.
double dip_width_lindblad(double g, double omega, double gamma);

/// Numerically measured full width at half maximum of the dip of the
/// steady-state rho33(phi) around `center` (0 or pi). Samples
/// [center - pi/2, center + pi/2], then refines the peak and both half-level
/// crossings on the solver itself. Throws OutOfDomain if no crossing exists.
double measure_dip_width(const SystemParams& base, double center, int samples = 2001,
                         const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Weak probe (zeta = g/G << 1) at resonance
// ---------------------------------------------------------------------------

/// Reference leading-order Im rho31 = (W zeta sin phi + kappa zeta^2) / (2g).
/// Requires D1 = D2 = 0, g > 0, G > 0 and zeta <= 0.2, else
/// PreconditionViolation.
double weak_probe_absorption(const SystemParams& p);

/// True when 0.1 < zeta <= 0.2, where the expansion is admitted but loose.
bool weak_probe_marginal(const SystemParams& p);

/// Leading order of the master equation itself:
/// Im rho31 = (kappa g + W G sin phi) / (G^2 + (gamma1 + gamma2) kappa).
/// Same numerator as the reference form; same preconditions.
double weak_probe_absorption_leading(const SystemParams& p);

struct TransparencyPhase {
  /// asin(-kappa g / (W G)), in [-pi/2, 0] for kappa >= 0.
  double phi;
  /// The other zero on the circle, -pi - phi, in [-pi, -pi/2].
  double mirror_phi;
};

/// Phase at which dephasing loss and microwave gain cancel.
/// Throws PreconditionViolation unless W > 0 and G > 0, NoSolution when
/// kappa g / (W G) > 1.
TransparencyPhase transparency_phase(double kappa, double g, double G, double omega);

// ---------------------------------------------------------------------------
// General dark-state condition cos phi = A +- sqrt(B) (gamma1 = gamma2)
// ---------------------------------------------------------------------------

struct AppendixAB {
  double a_value = 0.0;
  double b_value = 0.0;
  /// (A + sqrt(B), A - sqrt(B))
  std::pair<double, double> roots;
};

/// Throws PreconditionViolation unless g, G, W > 0 and gamma1 = gamma2.
AppendixAB appendix_ab(const SystemParams& p);

struct AppendixMargins {
  /// B - (1 - A)^2; zero iff (g^2 - G^2) W + gG (D1 - D2) = 0 and kappa = 0.
  double zero_branch = 0.0;
  /// B - (1 + A)^2; zero iff (g^2 - G^2) W - gG (D1 - D2) = 0 and kappa = 0.
  double pi_branch = 0.0;
};

/// Both margins evaluated as explicit sums of squares, so they are
/// nonnegative up to rounding of each (nonnegative) term.
AppendixMargins appendix_inequality_margins(const SystemParams& p);

}  // namespace eitmw
