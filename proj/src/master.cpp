#include "eitmw/master.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eitmw/hamiltonian.hpp"

namespace eitmw {
namespace {

using Kron = Eigen::Matrix<cd, 9, 9>;

Kron kron(const Matrix3c& a, const Matrix3c& b) {
  Kron k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return k;
}

// rate * (c rho c^dag - 1/2 {c^dag c, rho}) in row-major vectorized form.
Kron dissipator(const Matrix3c& c, double rate) {
  const Matrix3c id = Matrix3c::Identity();
  const Matrix3c cdc = c.adjoint() * c;
  return rate * (kron(c, c.conjugate()) - 0.5 * kron(cdc, id) - 0.5 * kron(id, cdc.transpose()));
}

Matrix3c lowering(int to, int from) {
  Matrix3c c = Matrix3c::Zero();
  c(to, from) = 1.0;
  return c;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

Vector9c vectorize(const Matrix3c& rho) {
  Vector9c v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(vec_index(i, j)) = rho(i, j);
  return v;
}

Matrix3c unvectorize(const Vector9c& v) {
  Matrix3c rho;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho(i, j) = v(vec_index(i, j));
  return rho;
}

Matrix3c Liouvillian::apply(const Matrix3c& rho) const { return unvectorize(matrix * vectorize(rho)); }

Liouvillian build_liouvillian(const SystemParams& p) {
  const Matrix3c h = build_hamiltonian(p).entries();
  const Matrix3c id = Matrix3c::Identity();
  const cd minus_i(0.0, -1.0);

  Matrix9c l = minus_i * (kron(h, id) - kron(id, h.transpose()));
  l += dissipator(lowering(kGround1, kExcited), 2.0 * p.gamma1);
  l += dissipator(lowering(kGround2, kExcited), 2.0 * p.gamma2);

  // ground-state dephasing touches rho_12 and rho_21 only
  l(vec_index(0, 1), vec_index(0, 1)) -= p.kappa;
  l(vec_index(1, 0), vec_index(1, 0)) -= p.kappa;
  return {l};
}

SteadyStateReport steady_state(const SystemParams& p, const ToleranceConfig& tol) {
  const Liouvillian liouvillian = build_liouvillian(p);
  const Matrix9c& l = liouvillian.matrix;

  Eigen::JacobiSVD<Matrix9c> svd(l);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma(0);
  const double cutoff = 1e-10 * sigma_max;
  int nullity = 0;
  for (int k = 0; k < sigma.size(); ++k)
    if (sigma(k) <= cutoff) ++nullity;
  // trace preservation guarantees at least one zero mode
  nullity = std::max(nullity, 1);
  if (nullity > 1) {
    std::ostringstream os;
    os << "steady state is not unique (null space dimension " << nullity << ")";
    throw Error(ErrorCode::DegenerateSteadyState, os.str(), nullity);
  }

  // d rho_11/dt is minus the sum of the other two population equations
  Matrix9c a = l;
  a.row(vec_index(0, 0)).setZero();
  for (int i = 0; i < 3; ++i) a(vec_index(0, 0), vec_index(i, i)) = 1.0;
  Vector9c rhs = Vector9c::Zero();
  rhs(vec_index(0, 0)) = 1.0;

  Eigen::FullPivLU<Matrix9c> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::SolveFailure, "trace-constrained system is singular");
  const Vector9c x = lu.solve(rhs);

  Matrix3c rho = unvectorize(x);
  rho = 0.5 * (rho + rho.adjoint());

  const double residual = (l * vectorize(rho)).norm();
  if (!std::isfinite(residual) || residual > tol.residual_tol * std::max(1.0, l.norm())) {
    throw Error(ErrorCode::SolveFailure, "steady-state residual above tolerance", residual);
  }

  try {
    return {check_density_matrix(rho, tol), nullity, residual};
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidState, std::string("steady state rejected: ") + e.what(),
                e.magnitude());
  }
}

double max_stable_step(const SystemParams& p) {
  const double scale = std::max({1.0, p.g, p.G, p.omega, std::abs(p.delta1), std::abs(p.delta2),
                                 2.0 * p.gamma1, 2.0 * p.gamma2, p.kappa});
  return 0.01 / scale;
}

DensityMatrix evolve(const DensityMatrix& rho0, const SystemParams& p, double t_final, double dt,
                     const ToleranceConfig& tol) {
  if (!(t_final > 0.0) || !(dt > 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::PreconditionViolation, "t_final and dt must be positive and finite");
  }
  const double limit = max_stable_step(p);
  if (dt > limit) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the stability limit " << limit;
    throw Error(ErrorCode::StepTooLarge, os.str(), dt);
  }

  const Matrix9c l = build_liouvillian(p).matrix;
  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  const double h = t_final / static_cast<double>(steps);

  Vector9c y = vectorize(rho0.entries());
  for (long long n = 0; n < steps; ++n) {
    const Vector9c k1 = l * y;
    const Vector9c k2 = l * (y + 0.5 * h * k1);
    const Vector9c k3 = l * (y + 0.5 * h * k2);
    const Vector9c k4 = l * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  try {
    return check_density_matrix(unvectorize(y), tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidState, std::string("evolved state rejected: ") + e.what(),
                e.magnitude());
  }
}

double resonant_dark_phase_condition(const SystemParams& p) {
  if (p.delta1 != 0.0 || p.delta2 != 0.0) {
    throw Error(ErrorCode::PreconditionViolation, "requires delta1 = delta2 = 0");
  }
  if (!close(p.gamma1, p.gamma2)) {
    throw Error(ErrorCode::PreconditionViolation, "requires gamma1 = gamma2");
  }
  if (!(p.g > 0.0 && p.G > 0.0 && p.omega > 0.0)) {
    throw Error(ErrorCode::PreconditionViolation, "requires g, G, omega > 0");
  }
  const double gamma = p.gamma1;
  const double k = p.kappa;
  const double g2 = p.g * p.g;
  const double G2 = p.G * p.G;
  const double w2 = p.omega * p.omega;
  const double d = g2 - G2;
  const double q = 4.0 * gamma + k;

  const double bracket = 2.0 * g2 * G2 * gamma * k * k + 4.0 * k * w2 * gamma * gamma * (g2 + G2) +
                         d * d * (k * (g2 + G2) + 2.0 * gamma * w2);
  return 1.0 + 2.0 * gamma / (g2 * G2 * w2 * q * q) * bracket;
}

}  // namespace eitmw
