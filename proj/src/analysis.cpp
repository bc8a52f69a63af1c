#include "eitmw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "eitmw/master.hpp"

namespace eitmw {
namespace {

constexpr double kWeakProbeLimit = 0.2;
constexpr double kWeakProbeSoftLimit = 0.1;

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::PreconditionViolation, what);
}

void require_resonant_inputs(double g, double omega, double gamma, double phi) {
  require(std::isfinite(g) && std::isfinite(omega) && std::isfinite(gamma) && std::isfinite(phi),
          "inputs must be finite");
  require(g >= 0.0 && omega >= 0.0, "g and omega must be >= 0");
  require(gamma > 0.0, "gamma must be > 0");
}

double rho33_shape(double a, double g, double omega, double phi) {
  const double s = std::sin(phi);
  const double drive = 6.0 * g * g * omega * omega * s * s;
  require(a + drive > 0.0, "rho33 is undefined for g = omega = 0");
  return (1.0 - a / (a + drive)) / 3.0;
}

double lindblad_a(double g, double omega, double gamma) {
  const double d = g * g - omega * omega;
  return 2.0 * d * d + 8.0 * gamma * gamma * omega * omega;
}

double zeta_checked(const SystemParams& p) {
  require(p.delta1 == 0.0 && p.delta2 == 0.0, "weak-probe result requires delta1 = delta2 = 0");
  require(p.g > 0.0 && p.G > 0.0, "weak-probe result requires g > 0 and G > 0");
  const double zeta = p.g / p.G;
  if (zeta > kWeakProbeLimit) {
    std::ostringstream os;
    os << "zeta = g/G = " << zeta << " is outside the weak-probe regime (<= " << kWeakProbeLimit
       << ")";
    throw Error(ErrorCode::PreconditionViolation, os.str(), zeta);
  }
  return zeta;
}

void require_appendix(const SystemParams& p) {
  require(p.g > 0.0 && p.G > 0.0 && p.omega > 0.0, "requires g, G, omega > 0");
  require(same(p.gamma1, p.gamma2), "requires gamma1 = gamma2");
}

double rho33_at(SystemParams p, double phi, const ToleranceConfig& tol) {
  p.phi = phi;
  return steady_state(validate_params(p), tol).rho.population(kExcited);
}

// Bisection for f(x) = level between a (below) and b (above), on the solver.
double crossing(const SystemParams& p, double below, double above, double level,
                const ToleranceConfig& tol) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (below + above);
    if (rho33_at(p, mid, tol) < level) {
      below = mid;
    } else {
      above = mid;
    }
  }
  return 0.5 * (below + above);
}

}  // namespace

double rho33_resonant_phase(double g, double omega, double gamma, double phi) {
  require_resonant_inputs(g, omega, gamma, phi);
  const double d = g * g - omega * omega;
  const double a = 2.0 * d * d + g * g * omega * omega + 8.0 * gamma * gamma * omega * omega;
  return rho33_shape(a, g, omega, phi);
}

double rho33_resonant_phase(const SystemParams& p) {
  require(same(p.g, p.G), "requires G = g");
  require(p.kappa == 0.0, "requires kappa = 0");
  require(p.delta1 == 0.0 && p.delta2 == 0.0, "requires delta1 = delta2 = 0");
  require(same(p.gamma1, p.gamma2), "requires gamma1 = gamma2");
  return rho33_resonant_phase(p.g, p.omega, p.gamma1, p.phi);
}

double rho33_resonant_phase_lindblad(double g, double omega, double gamma, double phi) {
  require_resonant_inputs(g, omega, gamma, phi);
  return rho33_shape(lindblad_a(g, omega, gamma), g, omega, phi);
}

double phase_fwhm(double g, double omega, double gamma) {
  require(g > 0.0 && omega > 0.0 && gamma > 0.0, "requires g, omega, gamma > 0");
  const double d = g * g - omega * omega;
  const double arg = 1.0 / 6.0 + 4.0 * gamma * gamma / (3.0 * g * g) +
                     d * d / (3.0 * g * g * omega * omega);
  if (arg > 1.0) {
    std::ostringstream os;
    os << "half-maximum argument " << arg << " exceeds 1";
    throw Error(ErrorCode::OutOfDomain, os.str(), arg);
  }
  return 2.0 * std::asin(std::sqrt(arg));
}

double dip_width_lindblad(double g, double omega, double gamma) {
  require(g > 0.0 && omega > 0.0 && gamma > 0.0, "requires g, omega, gamma > 0");
  const double a = lindblad_a(g, omega, gamma);
  return 2.0 * std::asin(std::sqrt(a / (2.0 * a + 6.0 * g * g * omega * omega)));
}

double measure_dip_width(const SystemParams& base, double center, int samples,
                         const ToleranceConfig& tol) {
  require(samples >= 5, "needs at least 5 samples");
  const double half_span = 0.5 * std::numbers::pi;
  const double step = 2.0 * half_span / (samples - 1);

  std::vector<double> phis(samples);
  std::vector<double> values(samples);
  for (int k = 0; k < samples; ++k) {
    phis[k] = center - half_span + k * step;
    values[k] = rho33_at(base, phis[k], tol);
  }

  // peak: golden-section refinement around the best sample
  const auto peak_it = std::max_element(values.begin(), values.end());
  const auto peak_k = static_cast<int>(peak_it - values.begin());
  double lo = phis[std::max(0, peak_k - 1)];
  double hi = phis[std::min(samples - 1, peak_k + 1)];
  double peak = *peak_it;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    const double x1 = hi - invphi * (hi - lo);
    const double x2 = lo + invphi * (hi - lo);
    const double f1 = rho33_at(base, x1, tol);
    const double f2 = rho33_at(base, x2, tol);
    peak = std::max({peak, f1, f2});
    if (f1 < f2) {
      lo = x1;
    } else {
      hi = x2;
    }
  }
  const double level = 0.5 * peak;

  const auto min_k = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  if (values[min_k] >= level) {
    throw Error(ErrorCode::OutOfDomain, "no dip below half maximum", values[min_k]);
  }
  int right = min_k;
  while (right < samples && values[right] < level) ++right;
  int left = min_k;
  while (left >= 0 && values[left] < level) --left;
  if (right == samples || left < 0) {
    throw Error(ErrorCode::OutOfDomain, "dip wider than the sampled window");
  }

  const double right_x = crossing(base, phis[right - 1], phis[right], level, tol);
  const double left_x = crossing(base, phis[left + 1], phis[left], level, tol);
  return right_x - left_x;
}

double weak_probe_absorption(const SystemParams& p) {
  const double zeta = zeta_checked(p);
  return (p.omega * zeta * std::sin(p.phi) + p.kappa * zeta * zeta) / (2.0 * p.g);
}

bool weak_probe_marginal(const SystemParams& p) {
  return p.G > 0.0 && p.g / p.G > kWeakProbeSoftLimit && p.g / p.G <= kWeakProbeLimit;
}

double weak_probe_absorption_leading(const SystemParams& p) {
  zeta_checked(p);
  return (p.kappa * p.g + p.omega * p.G * std::sin(p.phi)) /
         (p.G * p.G + (p.gamma1 + p.gamma2) * p.kappa);
}

TransparencyPhase transparency_phase(double kappa, double g, double G, double omega) {
  require(omega > 0.0 && G > 0.0, "requires omega > 0 and G > 0");
  const double s = -kappa * g / (omega * G);
  if (std::abs(s) > 1.0) {
    std::ostringstream os;
    os << "required |sin phi| = " << std::abs(s) << " > 1";
    throw Error(ErrorCode::NoSolution, os.str(), s);
  }
  const double phi = std::asin(s);
  return {phi, -std::numbers::pi - phi};
}

AppendixAB appendix_ab(const SystemParams& p) {
  require_appendix(p);
  const double gm = p.gamma1;
  const double k = p.kappa;
  const double g = p.g, G = p.G, w = p.omega;
  const double g2 = g * g, G2 = G * G, w2 = w * w;
  const double d1 = p.delta1, d2 = p.delta2;
  const double q = 4.0 * gm + k;
  const double q2 = q * q;

  const double a = 2.0 * gm / (g * G * w * q2) *
                   ((2.0 * gm * g2 + k * w2 - G2 * (2.0 * gm + k)) * d1 +
                    (-(2.0 * gm + k) * g2 + k * w2 + 2.0 * G2 * gm) * d2);

  const double b_first = (g2 * k * G2 + 2.0 * (g2 + G2) * gm * w2) *
                         (k * w2 + 2.0 * gm * (g2 + G2 + 2.0 * gm * k)) / (g2 * G2 * q2 * w2);
  const double t1 = 2.0 * gm * (d1 - d2) - k * d2;
  const double t2 = k * d1 + 2.0 * gm * (d1 - d2);
  const double b_second = 2.0 * gm * (k * w2 + 2.0 * (g2 + G2) * gm) / (g2 * G2 * q2 * q2 * w2) *
                          (g2 * t1 * t1 + G2 * t2 * t2 + 2.0 * gm * k * w2 * (d1 + d2) * (d1 + d2));
  const double b = b_first + b_second;

  const double root = std::sqrt(std::max(b, 0.0));
  return {a, b, {a + root, a - root}};
}

AppendixMargins appendix_inequality_margins(const SystemParams& p) {
  require_appendix(p);
  const double gm = p.gamma1;
  const double k = p.kappa;
  const double g = p.g, G = p.G, w = p.omega;
  const double g2 = g * g, G2 = G * G, w2 = w * w;
  const double d1 = p.delta1, d2 = p.delta2;
  const double q = 4.0 * gm + k;
  const double denom = g2 * G2 * q * q * w2;

  // sign = +1 for B - (1 - A)^2, -1 for B - (1 + A)^2
  auto margin = [&](double sign) {
    const double bracket = (g2 - G2) * w + sign * g * G * (d1 - d2);
    const double u = g * (G2 - w2) - sign * G * w * d1;
    const double v = G * (g2 - w2) - sign * g * w * d2;
    const double brace =
        2.0 * g2 * gm * k * G2 + 4.0 * (g2 + G2) * gm * gm * w2 + u * u + v * v;
    return (4.0 * gm * gm * bracket * bracket + 2.0 * gm * k * brace) / denom;
  };
  return {margin(1.0), margin(-1.0)};
}

}  // namespace eitmw
