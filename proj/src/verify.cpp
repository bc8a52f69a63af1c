#include "eitmw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "eitmw/analysis.hpp"
#include "eitmw/darkstate.hpp"
#include "eitmw/hamiltonian.hpp"
#include "eitmw/master.hpp"

namespace eitmw {
namespace {

using std::numbers::pi;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Moderate box where steady states are known to be physical.
  SystemParams physical() {
    return {.g = uniform(0.1, 3.0), .G = uniform(0.1, 3.0), .omega = uniform(0.1, 3.0),
            .phi = uniform(0.0, 2.0 * pi), .delta1 = uniform(-3.0, 3.0),
            .delta2 = uniform(-3.0, 3.0), .gamma1 = uniform(0.5, 2.0),
            .gamma2 = uniform(0.5, 2.0), .kappa = uniform(0.0, 0.5)};
  }

 private:
  std::mt19937_64 rng_;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// Runs `draw` n times; the check fails on the first false return or exception.
CheckResult sampled(const std::string& name, int n, const std::function<bool(int, std::string&)>& draw) {
  std::string detail;
  for (int i = 0; i < n; ++i) {
    try {
      if (!draw(i, detail)) return {name, false, "draw " + std::to_string(i) + ": " + detail};
    } catch (const Error& e) {
      return {name, false, "draw " + std::to_string(i) + ": " + e.what()};
    }
  }
  return {name, true, std::to_string(n) + " draws"};
}

}  // namespace

std::vector<CheckResult> run_verify_suite(std::uint64_t seed, const ToleranceConfig& tol) {
  Sampler s(seed);
  std::vector<CheckResult> out;

  out.push_back(sampled("dark_state_round_trip", 2000, [&](int i, std::string& detail) {
    const double g = s.uniform(0.01, 10.0), G = s.uniform(0.01, 10.0), w = s.uniform(0.0, 10.0);
    const PhaseBranch branch = i % 2 ? PhaseBranch::Pi : PhaseBranch::Zero;
    SystemParams p{.g = g, .G = G, .omega = w, .phi = branch == PhaseBranch::Zero ? 0.0 : pi};
    p.delta2 = s.uniform(-5.0, 5.0);
    p.delta1 = p.delta2 + required_detuning(g, G, w, branch);
    const auto dark = is_dark(p, tol);
    if (!dark) {
      detail = "no dark eigenvector found";
      return false;
    }
    const double dist = phase_aligned_distance(dark->amplitudes, dark_state_vector(g, G));
    const double scale = std::max({1.0, g, G, w, std::abs(p.delta1), std::abs(p.delta2)});
    const double lam_err = std::abs(dark->eigenvalue - dark_eigenvalue(p));
    detail = fmt("vector distance %.3g, eigenvalue error %.3g", dist, lam_err);
    return dist <= 1e-8 && lam_err <= 1e-9 * scale;
  }));

  out.push_back(sampled("characteristic_residual", 2000, [&](int, std::string& detail) {
    const SystemParams p = validate_params(s.physical());
    const auto states = eigensystem(build_hamiltonian(p));
    const double norm = build_hamiltonian(p).norm();
    for (const auto& st : states) {
      const double r = std::abs(characteristic_residual(st.eigenvalue, p));
      if (r > 1e-9 * std::pow(std::max(1.0, norm), 3)) {
        detail = fmt("residual %.3g at eigenvalue %.6g", r, st.eigenvalue);
        return false;
      }
    }
    return true;
  }));

  out.push_back(sampled("liouvillian_preserves_trace_and_hermiticity", 200, [&](int, std::string& detail) {
    const SystemParams p = validate_params(s.physical());
    const Liouvillian l = build_liouvillian(p);
    Matrix3c a;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = cd(s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0));
    const Matrix3c rho = a * a.adjoint() / (a * a.adjoint()).trace().real();
    const Matrix3c d = l.apply(rho);
    const double scale = std::max(1.0, l.matrix.norm());
    const double tr = std::abs(d.trace());
    const double herm = (d - d.adjoint()).norm();
    detail = fmt("trace %.3g, anti-Hermitian part %.3g", tr, herm);
    return tr <= 1e-12 * scale && herm <= 1e-12 * scale;
  }));

  out.push_back(sampled("steady_state_is_physical", 200, [&](int, std::string& detail) {
    const SystemParams p = validate_params(s.physical());
    const SteadyStateReport r = steady_state(p, tol);
    const double tr = std::abs(r.rho.entries().trace() - 1.0);
    detail = fmt("trace error %.3g, residual %.3g", tr, r.residual);
    return r.null_space_dimension == 1 && tr <= tol.trace_tol;
  }));

  out.push_back(sampled("phase_canonicalization", 200, [&](int, std::string& detail) {
    SystemParams p = s.physical();
    SystemParams q = p;
    q.phi += 2.0 * pi * std::round(s.uniform(-3.0, 3.0));
    const Matrix3c a = steady_state(validate_params(p), tol).rho.entries();
    const Matrix3c b = steady_state(validate_params(q), tol).rho.entries();
    const double diff = (a - b).cwiseAbs().maxCoeff();
    detail = fmt("max entry difference %.3g", diff);
    return diff <= 1e-9;
  }));

  out.push_back(sampled("general_condition_margins", 2000, [&](int, std::string& detail) {
    SystemParams p = s.physical();
    p.gamma2 = p.gamma1;
    const AppendixMargins m = appendix_inequality_margins(p);
    detail = fmt("margins %.3g, %.3g", m.zero_branch, m.pi_branch);
    return m.zero_branch >= 0.0 && m.pi_branch >= 0.0;
  }));

  out.push_back(sampled("resonant_dark_phase_structure", 1000, [&](int i, std::string& detail) {
    SystemParams p = s.physical();
    p.delta1 = p.delta2 = 0.0;
    p.gamma2 = p.gamma1;
    if (i % 2 == 0) {
      p.G = p.g;
      p.kappa = 0.0;
    }
    const double v = resonant_dark_phase_condition(p);
    detail = fmt("value %.17g", v);
    if (i % 2 == 0) return std::abs(v - 1.0) <= 1e-12;
    return v > 1.0;
  }));

  return out;
}

}  // namespace eitmw
