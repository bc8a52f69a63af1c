#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eitmw/darkstate.hpp"
#include "eitmw/hamiltonian.hpp"
#include "eitmw/master.hpp"
#include "eitmw/params_io.hpp"
#include "eitmw/sweep.hpp"
#include "eitmw/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eitmw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;
constexpr int kExitVerify = 5;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateSteadyState: return kExitDegenerate;
    case ErrorCode::IoFailure: return kExitIo;
    default: return kExitValidation;
  }
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Vector3c& v) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) out.push_back(complex_json(v(i)));
  return out;
}

std::string_view branch_name(PhaseBranch b) { return b == PhaseBranch::Zero ? "zero" : "pi"; }

void write_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::IoFailure, "write to standard output failed");
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open '" + out + "' for writing");
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::IoFailure, "failed writing '" + out + "'");
}

struct Options {
  std::string params_path;
  std::string tol_path;
  std::string spec_path;
  std::string axis;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<int> points;
  std::vector<std::string> observables;
  std::string format = "csv";
  std::string out;
  int workers = 1;
  std::string figure;
  std::uint64_t seed = 20240101;
};

ToleranceConfig load_tolerances(const Options& o) {
  if (o.tol_path.empty()) return {};
  return tolerances_from_json(read_json_file(o.tol_path));
}

SystemParams load_params(const Options& o) {
  if (o.params_path.empty()) throw Error(ErrorCode::InvalidSpec, "--params is required");
  return validate_params(params_from_json(read_json_file(o.params_path)));
}

int cmd_darkstate(const Options& o) {
  const SystemParams p = load_params(o);
  const ToleranceConfig tol = load_tolerances(o);

  json j;
  j["params"] = params_to_json(p);
  if (p.g > 0.0 && p.G > 0.0) {
    j["required_detuning"] = {{"zero", required_detuning(p.g, p.G, p.omega, PhaseBranch::Zero)},
                              {"pi", required_detuning(p.g, p.G, p.omega, PhaseBranch::Pi)}};
  } else {
    j["required_detuning"] = nullptr;
  }
  const auto branch = satisfied_branch(p);
  j["satisfied_branch"] = branch ? json(std::string(branch_name(*branch))) : json(nullptr);
  if (const auto dark = is_dark(p, tol)) {
    j["dark_state"] = {{"eigenvalue", dark->eigenvalue}, {"amplitudes", vector_json(dark->amplitudes)}};
  } else {
    j["dark_state"] = nullptr;
  }
  json states = json::array();
  for (const DressedState& s : eigensystem(build_hamiltonian(p))) {
    states.push_back({{"eigenvalue", s.eigenvalue}, {"amplitudes", vector_json(s.amplitudes)}});
  }
  j["eigensystem"] = states;
  write_text(j.dump(2) + "\n", o.out);
  return kExitOk;
}

int cmd_steady(const Options& o) {
  const SystemParams p = load_params(o);
  const SteadyStateReport r = steady_state(p, load_tolerances(o));

  json rho = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int k = 0; k < 3; ++k) row.push_back(complex_json(r.rho(i, k)));
    rho.push_back(row);
  }
  const json j = {{"params", params_to_json(p)},
                  {"rho", rho},
                  {"populations",
                   {r.rho.population(kGround1), r.rho.population(kGround2), r.rho.population(kExcited)}},
                  {"purity", r.rho.purity()},
                  {"null_space_dimension", r.null_space_dimension},
                  {"residual", r.residual}};
  write_text(j.dump(2) + "\n", o.out);
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  SweepSpec spec;
  if (!o.spec_path.empty()) spec = spec_from_json(read_json_file(o.spec_path));
  if (!o.params_path.empty()) spec.base = params_from_json(read_json_file(o.params_path));
  else if (o.spec_path.empty()) throw Error(ErrorCode::InvalidSpec, "--params or --spec is required");
  if (!o.axis.empty()) spec.axis = parse_axis(o.axis);
  if (o.start) spec.start = *o.start;
  if (o.stop) spec.stop = *o.stop;
  if (o.points) spec.points = *o.points;
  if (!o.observables.empty()) {
    spec.observables.clear();
    for (const auto& name : o.observables) spec.observables.push_back(parse_observable(name));
  } else if (spec.observables.empty()) {
    spec.observables = {Observable::Rho33, Observable::ReRho31, Observable::ImRho31};
  }
  if (spec.label.empty()) spec.label = "sweep";
  if (o.spec_path.empty() && (o.axis.empty() || !o.start || !o.stop || !o.points)) {
    throw Error(ErrorCode::InvalidSpec, "--axis, --start, --stop and --points are required without --spec");
  }

  const OutputFormat format = parse_format(o.format);
  const SweepDataset d = run_sweep(spec, o.workers, load_tolerances(o));
  if (o.out.empty()) {
    emit(d, format, std::cout);
  } else {
    emit(d, format, fs::path(o.out));
  }
  return kExitOk;
}

int cmd_figure(const Options& o) {
  const FigureId id = parse_figure(o.figure);
  const OutputFormat format = parse_format(o.format);
  const ToleranceConfig tol = load_tolerances(o);
  const std::string ext = format == OutputFormat::Csv ? ".csv" : ".json";

  if (!o.out.empty()) {
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create directory '" + o.out + "': " + ec.message());
  }

  for (const SweepSpec& spec : figure_preset(id)) {
    const SweepDataset d = run_sweep(spec, o.workers, tol);
    if (o.out.empty()) {
      if (format == OutputFormat::Csv) std::cout << "# " << spec.label << '\n';
      emit(d, format, std::cout);
    } else {
      emit(d, format, fs::path(o.out) / (spec.label + ext));
    }
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  bool ok = true;
  for (const CheckResult& r : run_verify_suite(o.seed, load_tolerances(o))) {
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-dependent three-level atom: dark states, steady states and sweeps"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol_path, "Tolerance overrides (JSON)");
    sub->add_option("--out", o.out, "Output path (file, or directory for figure)");
  };

  auto* darkstate = app.add_subcommand("darkstate", "Dark-state conditions, dark vector and eigensystem");
  darkstate->add_option("--params", o.params_path, "System parameters (JSON)")->required();
  add_common(darkstate);

  auto* steady = app.add_subcommand("steady", "Steady-state density matrix as JSON");
  steady->add_option("--params", o.params_path, "System parameters (JSON)")->required();
  add_common(steady);

  auto* sweep = app.add_subcommand("sweep", "Steady-state observables along one axis");
  sweep->add_option("--params", o.params_path, "Base parameters (JSON)");
  sweep->add_option("--spec", o.spec_path, "Full sweep spec (JSON); flags override its fields");
  sweep->add_option("--axis", o.axis, "delta1, phi or omega");
  sweep->add_option("--start", o.start);
  sweep->add_option("--stop", o.stop);
  sweep->add_option("--points", o.points);
  sweep->add_option("--observables", o.observables, "rho33,re_rho31,im_rho31,rho21,dark_flag,purity")
      ->delimiter(',');
  sweep->add_option("--format", o.format, "csv or json");
  sweep->add_option("--workers", o.workers);
  add_common(sweep);

  auto* figure = app.add_subcommand("figure", "Run a figure preset (fig2 .. fig6)");
  figure->add_option("id", o.figure, "fig2, fig3, fig4, fig5 or fig6")->required();
  figure->add_option("--format", o.format, "csv or json");
  figure->add_option("--workers", o.workers);
  add_common(figure);

  auto* verify = app.add_subcommand("verify", "Randomized invariant suite");
  verify->add_option("--seed", o.seed);
  verify->add_option("--tol", o.tol_path, "Tolerance overrides (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*darkstate) return cmd_darkstate(o);
    if (*steady) return cmd_steady(o);
    if (*sweep) return cmd_sweep(o);
    if (*figure) return cmd_figure(o);
    if (*verify) return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
