// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
// Usage: acceptance <path-to-eitmw-cli>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "eitmw/analysis.hpp"
#include "eitmw/darkstate.hpp"
#include "eitmw/hamiltonian.hpp"
#include "eitmw/master.hpp"
#include "eitmw/sweep.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace eitmw;
using namespace eitmw::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a = 0.0, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double rho33(const SystemParams& p) { return steady_state(validate_params(p)).rho.population(kExcited); }

double line_center(const SweepSpec& spec, Observable obs) {
  const SweepDataset d = run_sweep(spec);
  const auto k = std::find(spec.observables.begin(), spec.observables.end(), obs) - spec.observables.begin();
  for (const SweepRow& row : d.rows)
    if (row.axis_value == 0.0) return row.values[k];
  throw Error(ErrorCode::InvalidSpec, "grid misses the line center");
}

double liouvillian_gap(const Matrix9c& l) {
  const Eigen::ComplexEigenSolver<Matrix9c> es(l);
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 9; ++k)
    if (std::abs(es.eigenvalues()(k)) > 1e-9) gap = std::min(gap, -es.eigenvalues()(k).real());
  return gap;
}

// --------------------------------------------------------------------------

Outcome dark_state_condition_round_trip() {
  Draws d(1001);
  double worst_amp = 0.0, worst_dist = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double g = d.uniform(0.1, 5.0), G = d.uniform(0.1, 5.0), w = d.uniform(0.1, 5.0);
    const PhaseBranch b = n % 2 ? PhaseBranch::Pi : PhaseBranch::Zero;
    SystemParams p{.g = g, .G = G, .omega = w, .phi = b == PhaseBranch::Zero ? 0.0 : kPi};
    p.delta2 = d.uniform(-3.0, 3.0);
    p.delta1 = p.delta2 + required_detuning(g, G, w, b);
    const auto dark = is_dark(p);
    if (!dark) return {false, "no dark eigenvector at draw " + std::to_string(n)};
    worst_amp = std::max(worst_amp, dark->excited_weight());
    worst_dist = std::max(worst_dist, phase_aligned_distance(dark->amplitudes, dark_state_vector(g, G)));
  }
  return {worst_amp < 1e-10 && worst_dist <= 1e-9,
          fmt("10000 draws, max |<3|psi>| %.2e, max vector distance %.2e", worst_amp, worst_dist)};
}

Outcome coherent_trapping_steady_state() {
  const SystemParams p{.g = 1.0, .G = 1.0, .omega = 1.0};
  const SteadyStateReport dark = steady_state(p);
  SystemParams q = p;
  q.phi = kPi / 2;
  const double r_half = rho33(q);
  const bool dark_ok = dark.rho.population(kExcited) <= 1e-10 && dark.rho.purity() >= 1.0 - 1e-8;
  const bool half_ok = std::abs(r_half - 2.0 / 15.0) <= 1e-8;
  // time-evolution oracle for the phi = pi/2 value
  const DensityMatrix start = check_density_matrix(Matrix3c::Identity() / 3.0);
  const double t = 30.0 / liouvillian_gap(build_liouvillian(validate_params(q)).matrix);
  const double r_evolved = evolve(start, validate_params(q), t, max_stable_step(q)).population(kExcited);
  std::string detail = fmt("phi=0: rho33 %.2e, purity %.12f; ", dark.rho.population(kExcited), dark.rho.purity());
  detail += fmt("phi=pi/2: rho33 %.12f (solver), %.12f (evolution), target 2/15 = %.12f", r_half, r_evolved,
                2.0 / 15.0);
  return {dark_ok && half_ok, detail};
}

Outcome phase_curve_vs_solver() {
  double worst = 0.0, worst_phi = 0.0, worst_exact = 0.0;
  for (int k = 0; k <= 180; ++k) {
    const double phi = 2.0 * kPi * k / 180.0;
    const double solver = rho33({.g = 20.0, .G = 20.0, .omega = 20.0, .phi = phi});
    const double dev = std::abs(rho33_resonant_phase(20.0, 20.0, 1.0, phi) - solver);
    if (dev > worst) {
      worst = dev;
      worst_phi = phi;
    }
    worst_exact = std::max(worst_exact, std::abs(rho33_resonant_phase_lindblad(20.0, 20.0, 1.0, phi) - solver));
  }
  return {worst <= 1e-8, fmt("181 points, max |closed form - solver| %.3e at phi %.4f (master-equation form: %.1e)",
                             worst, worst_phi, worst_exact)};
}

Outcome phase_dip_width() {
  const SystemParams p{.g = 20.0, .G = 20.0, .omega = 20.0};
  const double measured = measure_dip_width(p, 0.0);
  const double formula = phase_fwhm(20.0, 20.0, 1.0);
  return {std::abs(measured - 0.8501) <= 1e-2,
          fmt("measured %.4f rad, closed form %.4f rad, master-equation width %.4f rad", measured, formula,
              dip_width_lindblad(20.0, 20.0, 1.0))};
}

Outcome no_dark_state_with_dephasing() {
  Draws d(1005);
  double lowest = 1.0;
  for (int n = 0; n < 1000; ++n) {
    const SystemParams p{.g = d.uniform(0.1, 5.0), .G = d.uniform(0.1, 5.0), .omega = d.uniform(0.1, 5.0),
                         .phi = d.uniform(0.0, 2.0 * kPi), .kappa = 1.0};
    lowest = std::min(lowest, rho33(p));
  }
  return {lowest > 1e-6, fmt("1000 draws at kappa = 1, min rho33 %.3e", lowest)};
}

Outcome transparency_without_dark_state() {
  const SweepDataset d = run_sweep(figure_preset(FigureId::Fig4)[0]);
  double max_abs_im = 0.0, max_rho33 = 0.0, center_im = 0.0, center_rho33 = 0.0;
  for (const SweepRow& row : d.rows) {
    max_rho33 = std::max(max_rho33, row.values[0]);
    max_abs_im = std::max(max_abs_im, std::abs(row.values[2]));
    if (row.axis_value == 0.0) {
      center_rho33 = row.values[0];
      center_im = row.values[2];
    }
  }
  return {std::abs(center_im) <= 0.1 * max_abs_im && center_rho33 == max_rho33,
          fmt("|Im rho31(0)| %.3e vs sweep max %.3e; ", std::abs(center_im), max_abs_im) +
              fmt("rho33(0) %.6e, sweep max %.6e", center_rho33, max_rho33)};
}

Outcome absorption_transparency_gain() {
  std::vector<double> im;
  for (const SweepSpec& s : figure_preset(FigureId::Fig5)) im.push_back(line_center(s, Observable::ImRho31));
  return {im[0] > 0.0 && std::abs(im[1]) <= 5e-4 && im[2] < 0.0,
          fmt("Im rho31(0) = %.3e, %.3e, %.3e for omega = 0.04, 0.05, 0.06", im[0], im[1], im[2])};
}

Outcome window_regained() {
  std::vector<double> im;
  for (const SweepSpec& s : figure_preset(FigureId::Fig6)) im.push_back(line_center(s, Observable::ImRho31));
  const double ratio = im[1] / std::abs(im[2]);
  return {std::abs(im[0]) <= 1e-8 && ratio >= 10.0,
          fmt("Im rho31(0): no dephasing %.2e, dephasing %.4e, with microwave %.3e", im[0], im[1], im[2]) +
              fmt(" (ratio %.1f)", ratio)};
}

Outcome resonant_phase_condition() {
  Draws d(1009);
  double worst_unity = 0.0, worst_rho33 = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double g = d.uniform(0.1, 5.0), gm = d.uniform(0.5, 2.0);
    const SystemParams p{.g = g, .G = g, .omega = d.uniform(0.1, 5.0), .gamma1 = gm, .gamma2 = gm};
    worst_unity = std::max(worst_unity, std::abs(resonant_dark_phase_condition(p) - 1.0));
    worst_rho33 = std::max(worst_rho33, rho33(p));
  }
  double least = std::numeric_limits<double>::infinity();
  for (int n = 0; n < 1000; ++n) {
    const double gm = d.uniform(0.5, 2.0);
    SystemParams p{.g = d.uniform(0.1, 5.0), .G = d.uniform(0.1, 5.0), .omega = d.uniform(0.1, 5.0),
                   .gamma1 = gm, .gamma2 = gm};
    if (n % 2) p.kappa = d.uniform(0.01, 2.0);
    least = std::min(least, resonant_dark_phase_condition(p) - 1.0);
  }
  return {worst_unity <= 1e-12 && worst_rho33 <= 1e-10 && least > 0.0,
          fmt("g = G: max |value - 1| %.1e, max rho33(phi=0) %.1e; otherwise min value - 1 = %.2e", worst_unity,
              worst_rho33, least)};
}

Outcome appendix_inequalities() {
  Draws d(1010);
  double min_b = 1e300, min_zero = 1e300, min_pi = 1e300, min_upper = 1e300, max_lower = -1e300;
  for (int n = 0; n < 10000; ++n) {
    const double gm = d.uniform(0.2, 2.0);
    const SystemParams p{.g = d.uniform(0.1, 5.0), .G = d.uniform(0.1, 5.0), .omega = d.uniform(0.1, 5.0),
                         .delta1 = d.uniform(-3.0, 3.0), .delta2 = d.uniform(-3.0, 3.0), .gamma1 = gm,
                         .gamma2 = gm, .kappa = d.uniform(0.0, 2.0)};
    const AppendixAB ab = appendix_ab(p);
    const AppendixMargins m = appendix_inequality_margins(p);
    min_b = std::min(min_b, ab.b_value);
    min_zero = std::min(min_zero, m.zero_branch);
    min_pi = std::min(min_pi, m.pi_branch);
    min_upper = std::min(min_upper, ab.roots.first);
    max_lower = std::max(max_lower, ab.roots.second);
  }
  double worst_equality = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double gm = d.uniform(0.2, 2.0);
    SystemParams p{.g = d.uniform(0.1, 5.0), .G = d.uniform(0.1, 5.0), .omega = d.uniform(0.1, 5.0),
                   .delta2 = d.uniform(-3.0, 3.0), .gamma1 = gm, .gamma2 = gm};
    const PhaseBranch b = n % 2 ? PhaseBranch::Pi : PhaseBranch::Zero;
    p.delta1 = p.delta2 + required_detuning(p.g, p.G, p.omega, b);
    const AppendixMargins m = appendix_inequality_margins(p);
    worst_equality = std::max(worst_equality, std::abs(b == PhaseBranch::Zero ? m.zero_branch : m.pi_branch));
  }
  const bool ok = min_b >= -1e-12 && min_zero >= -1e-12 && min_pi >= -1e-12 && min_upper >= 1.0 - 1e-10 &&
                  max_lower <= -1.0 + 1e-10 && worst_equality <= 1e-9;
  return {ok, fmt("min B %.2e, min margins %.2e / %.2e, ", min_b, min_zero, min_pi) +
                  fmt("min A+sqrt(B) %.6f, max A-sqrt(B) %.6f, equality cases max %.1e", min_upper, max_lower,
                      worst_equality)};
}

Outcome oracle_coherence() {
  Draws d(1011);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const SystemParams p = validate_params(d.physical());
    const double t = 30.0 / liouvillian_gap(build_liouvillian(p).matrix);
    const DensityMatrix start = check_density_matrix(Matrix3c::Identity() / 3.0);
    const Matrix3c evolved = evolve(start, p, t, max_stable_step(p)).entries();
    worst = std::max(worst, (evolved - steady_state(p).rho.entries()).cwiseAbs().maxCoeff());
  }
  double worst_trace = 0.0, worst_herm = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Liouvillian l = build_liouvillian(validate_params(d.physical()));
    for (int a = 0; a < 9; ++a) {
      Matrix3c e = Matrix3c::Zero();
      e(a / 3, a % 3) = 1.0;
      worst_trace = std::max(worst_trace, std::abs(l.apply(e).trace()));
      for (const Matrix3c& h : {Matrix3c(e + e.adjoint()), Matrix3c(cd(0.0, 1.0) * (e - e.adjoint()))}) {
        const Matrix3c out = l.apply(h);
        worst_herm = std::max(worst_herm, (out - out.adjoint()).cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst <= 1e-6 && worst_trace <= 1e-12 && worst_herm <= 1e-12,
          fmt("100 draws, max |evolved - steady| %.2e; trace leak %.1e, anti-Hermitian part %.1e", worst,
              worst_trace, worst_herm)};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome figure_determinism(const std::string& cli) {
  if (cli.empty() || !fs::exists(cli)) return {false, "command-line tool not found"};
  const fs::path root = fs::temp_directory_path() / "eitmw_acceptance";
  fs::remove_all(root);
  const std::vector<std::pair<std::string, int>> runs = {{"a", 1}, {"b", 1}, {"c", 4}};
  for (const auto& [dir, workers] : runs) {
    for (const char* id : {"fig2", "fig3", "fig4", "fig5", "fig6"}) {
      const std::string cmd = "\"" + cli + "\" figure " + id + " --workers " + std::to_string(workers) +
                              " --out \"" + (root / dir).string() + "\"";
      if (std::system(cmd.c_str()) != 0) return {false, "figure run failed: " + cmd};
    }
  }
  int files = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const std::string a = read_file(entry.path());
    for (const char* other : {"b", "c"}) {
      const fs::path twin = root / other / entry.path().filename();
      if (!fs::exists(twin) || read_file(twin) != a) {
        return {false, entry.path().filename().string() + " differs in run " + other};
      }
    }
    ++files;
  }
  fs::remove_all(root);
  return {files == 10, std::to_string(files) + " CSV files identical across two runs and 1 vs 4 workers"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"dark-state condition round trip", dark_state_condition_round_trip},
      {"coherent population trapping steady state", coherent_trapping_steady_state},
      {"rho33(phi) closed form vs solver", phase_curve_vs_solver},
      {"phase dip full width at half maximum", phase_dip_width},
      {"no dark state under dephasing", no_dark_state_with_dephasing},
      {"transparency without dark state", transparency_without_dark_state},
      {"absorption / transparency / gain at line center", absorption_transparency_gain},
      {"transparency window regained", window_regained},
      {"resonant dark-phase condition", resonant_phase_condition},
      {"general dark-state inequalities", appendix_inequalities},
      {"steady state vs time evolution, Liouvillian invariants", oracle_coherence},
      {"figure output determinism", [&] { return figure_determinism(cli); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
