#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

/// Shared domain types for the microwave-controlled three-level Lambda atom.
///
/// Every rate, Rabi frequency and detuning is a dimensionless multiple of a
/// single reference rate gamma. Basis ordering is fixed to (|1>, |2>, |3>)
/// with |3> the excited state.
namespace eitmw {

using cd = std::complex<double>;
using Vector3c = Eigen::Vector3cd;
using Matrix3c = Eigen::Matrix3cd;

/// Basis indices.
enum Level : int { kGround1 = 0, kGround2 = 1, kExcited = 2 };

enum class ErrorCode {
  NonFinite,
  NegativeRate,
  NotHermitian,
  TraceDeviation,
  NotPositive,
  ConvergenceFailure,
  MultipleDark,
  DegenerateCoupling,
  ConditionNotSatisfied,
  DegenerateSteadyState,
  SolveFailure,
  StepTooLarge,
  InvalidState,
  PreconditionViolation,
  OutOfDomain,
  NoSolution,
  InvalidSpec,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

/// Library exception. `magnitude` carries the violating quantity when there
/// is one (trace deviation, most negative eigenvalue, offending axis value).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double magnitude = 0.0);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

/// All physical knobs of the model, in units of gamma.
struct SystemParams {
  double g = 0.0;       ///< probe Rabi frequency
  double G = 0.0;       ///< pump Rabi frequency
  double omega = 0.0;   ///< microwave Rabi frequency
  double phi = 0.0;     ///< microwave phase relative to the optical fields
  double delta1 = 0.0;  ///< probe detuning
  double delta2 = 0.0;  ///< pump detuning
  double gamma1 = 1.0;  ///< radiative rate |3> -> |1>
  double gamma2 = 1.0;  ///< radiative rate |3> -> |2>
  double kappa = 0.0;   ///< ground-state dephasing

  bool operator==(const SystemParams&) const = default;
};

struct ToleranceConfig {
  double hermiticity_tol = 1e-12;
  double trace_tol = 1e-10;
  double psd_tol = 1e-9;
  double dark_amp_tol = 1e-10;
  double residual_tol = 1e-10;

  bool operator==(const ToleranceConfig&) const = default;
};

/// Throws InvalidSpec unless every tolerance is finite and strictly positive.
void validate_tolerances(const ToleranceConfig& tol);

/// Maps any finite phase onto [0, 2pi).
double canonical_phase(double phi);

/// Confirms the parameter invariants and returns `p` with a canonical phase.
/// Throws NonFinite or NegativeRate.
SystemParams validate_params(SystemParams p);

/// A validated 3x3 density matrix (Hermitian, unit trace, positive
/// semidefinite). Only obtainable through check_density_matrix.
class DensityMatrix {
 public:
  [[nodiscard]] const Matrix3c& entries() const noexcept { return rho_; }
  [[nodiscard]] cd operator()(int i, int j) const { return rho_(i, j); }
  [[nodiscard]] double population(int level) const { return rho_(level, level).real(); }
  /// trace(rho^2)
  [[nodiscard]] double purity() const;

 private:
  explicit DensityMatrix(Matrix3c rho) : rho_(std::move(rho)) {}
  friend DensityMatrix check_density_matrix(const Matrix3c&, const ToleranceConfig&);

  Matrix3c rho_;
};

/// Throws NotHermitian, TraceDeviation or NotPositive, each carrying the
/// violating magnitude.
DensityMatrix check_density_matrix(const Matrix3c& rho, const ToleranceConfig& tol = {});

/// min over theta of |a - e^{i theta} b|; zero iff the two vectors are equal
/// up to a global phase.
double phase_aligned_distance(const Vector3c& a, const Vector3c& b);

}  // namespace eitmw
