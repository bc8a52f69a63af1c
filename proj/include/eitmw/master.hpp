#pragma once

#include "eitmw/model.hpp"

namespace eitmw {

using Vector9c = Eigen::Matrix<cd, 9, 1>;
using Matrix9c = Eigen::Matrix<cd, 9, 9>;

/// Row-major vectorization: vec(rho)[3i + j] = rho_ij.
constexpr int vec_index(int i, int j) { return 3 * i + j; }
Vector9c vectorize(const Matrix3c& rho);
Matrix3c unvectorize(const Vector9c& v);

/// Generator of d vec(rho)/dt = L vec(rho).
struct Liouvillian {
  Matrix9c matrix;

  [[nodiscard]] Matrix3c apply(const Matrix3c& rho) const;
};

struct SteadyStateReport {
  DensityMatrix rho;
  int null_space_dimension;
  /// ||L vec(rho)||_2
  double residual;
};

/// -i[H, rho] with H from build_hamiltonian, radiative channels |1><3| and
/// |2><3| at rates 2*gamma1 and 2*gamma2, and pure decay of the ground-state
/// coherence rho_12 at rate kappa.
Liouvillian build_liouvillian(const SystemParams& p);

/// Unique stationary state. One redundant population row is replaced by the
/// trace constraint and the system is solved with full pivoting.
///
/// Throws DegenerateSteadyState when the numerical null space of L (singular
/// values below 1e-10 * sigma_max) has dimension > 1, SolveFailure when the
/// solve is singular or its residual exceeds residual_tol * max(1, |L|), and
/// InvalidState when the solution fails density-matrix validation.
SteadyStateReport steady_state(const SystemParams& p, const ToleranceConfig& tol = {});

/// Largest step evolve accepts: 0.01 / max(rates, Rabi frequencies, |detunings|, 1).
double max_stable_step(const SystemParams& p);

/// Classical fourth-order Runge-Kutta integration of the master equation up
/// to t_final with a uniform step no larger than dt.
/// Throws StepTooLarge, or InvalidState if the result fails validation.
DensityMatrix evolve(const DensityMatrix& rho0, const SystemParams& p, double t_final, double dt,
                     const ToleranceConfig& tol = {});

/// Right-hand side of the resonant (D1 = D2 = 0) dark-state phase condition
/// for gamma1 = gamma2 = gamma:
///
///   cos^2 phi = 1 + 2 gamma / (g^2 G^2 W^2 (4 gamma + kappa)^2)
///                 * { 2 g^2 G^2 gamma kappa^2 + 4 kappa W^2 gamma^2 (g^2 + G^2)
///                     + (g^2 - G^2)^2 [kappa (g^2 + G^2) + 2 gamma W^2] }
///
/// Equal to 1 only for g = G and kappa = 0. Throws PreconditionViolation.
double resonant_dark_phase_condition(const SystemParams& p);

}  // namespace eitmw
