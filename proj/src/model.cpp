#include "eitmw/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace eitmw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceDeviation: return "TraceDeviation";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::MultipleDark: return "MultipleDark";
    case ErrorCode::DegenerateCoupling: return "DegenerateCoupling";
    case ErrorCode::ConditionNotSatisfied: return "ConditionNotSatisfied";
    case ErrorCode::DegenerateSteadyState: return "DegenerateSteadyState";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, double magnitude)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      magnitude_(magnitude) {}

void validate_tolerances(const ToleranceConfig& tol) {
  for (double v : {tol.hermiticity_tol, tol.trace_tol, tol.psd_tol, tol.dark_amp_tol,
                   tol.residual_tol}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorCode::InvalidSpec, "tolerances must be finite and > 0", v);
    }
  }
}

double canonical_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod of a tiny negative number can round up to exactly 2pi
  if (r >= two_pi) r = 0.0;
  return r;
}

SystemParams validate_params(SystemParams p) {
  const std::pair<const char*, double> fields[] = {
      {"g", p.g},           {"G", p.G},           {"omega", p.omega},
      {"phi", p.phi},       {"delta1", p.delta1}, {"delta2", p.delta2},
      {"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"kappa", p.kappa},
  };
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::NonFinite, std::string("field '") + name + "' is not finite", value);
    }
  }
  const std::pair<const char*, double> nonnegative[] = {
      {"g", p.g}, {"G", p.G}, {"omega", p.omega}, {"kappa", p.kappa}};
  for (const auto& [name, value] : nonnegative) {
    if (value < 0.0) {
      throw Error(ErrorCode::NegativeRate, std::string("field '") + name + "' must be >= 0", value);
    }
  }
  if (p.gamma1 <= 0.0) throw Error(ErrorCode::NegativeRate, "gamma1 must be > 0", p.gamma1);
  if (p.gamma2 <= 0.0) throw Error(ErrorCode::NegativeRate, "gamma2 must be > 0", p.gamma2);

  p.phi = canonical_phase(p.phi);
  return p;
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

DensityMatrix check_density_matrix(const Matrix3c& rho, const ToleranceConfig& tol) {
  if (!rho.allFinite()) throw Error(ErrorCode::NonFinite, "density matrix has non-finite entries");

  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity_tol) {
    std::ostringstream os;
    os << "max |rho_ij - conj(rho_ji)| = " << herm;
    throw Error(ErrorCode::NotHermitian, os.str(), herm);
  }

  const double trace_dev = std::abs(rho.trace() - 1.0);
  if (trace_dev > tol.trace_tol) {
    std::ostringstream os;
    os << "|trace - 1| = " << trace_dev;
    throw Error(ErrorCode::TraceDeviation, os.str(), trace_dev);
  }

  const Matrix3c hermitian_part = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(hermitian_part, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd_tol) {
    std::ostringstream os;
    os << "smallest eigenvalue " << min_eig;
    throw Error(ErrorCode::NotPositive, os.str(), min_eig);
  }
  return DensityMatrix(rho);
}

double phase_aligned_distance(const Vector3c& a, const Vector3c& b) {
  const cd overlap = b.dot(a);  // <b|a>
  const cd phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cd(1.0, 0.0);
  return (a - phase * b).norm();
}

}  // namespace eitmw
