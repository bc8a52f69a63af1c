#include "eitmw/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "eitmw/master.hpp"
#include "eitmw/params_io.hpp"

#ifndef EITMW_VERSION
#define EITMW_VERSION "0.0.0"
#endif

namespace eitmw {
namespace {

constexpr int kMaxPoints = 1'000'000;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SystemParams point_params(const SweepSpec& spec, double x) {
  SystemParams p = spec.base;
  switch (spec.axis) {
    case SweepAxis::Delta1: p.delta1 = x; break;
    case SweepAxis::Phi: p.phi = x; break;
    case SweepAxis::Omega: p.omega = x; break;
  }
  return p;
}

SweepRow evaluate(const SweepSpec& spec, double x, const ToleranceConfig& tol) {
  const SystemParams p = validate_params(point_params(spec, x));
  const DensityMatrix rho = steady_state(p, tol).rho;

  double rho33 = rho.population(kExcited);
  // clip rounding-level negatives admitted by the PSD tolerance
  if (rho33 < 0.0 && rho33 >= -tol.psd_tol) rho33 = 0.0;

  SweepRow row{x, {}};
  row.values.reserve(spec.observables.size());
  for (Observable obs : spec.observables) {
    double v = 0.0;
    switch (obs) {
      case Observable::Rho33: v = rho33; break;
      case Observable::ReRho31: v = rho(kExcited, kGround1).real(); break;
      case Observable::ImRho31: v = rho(kExcited, kGround1).imag(); break;
      case Observable::Rho21: v = std::abs(rho(kGround2, kGround1)); break;
      case Observable::DarkFlag: v = rho33 <= kDarkFlagThreshold ? 1.0 : 0.0; break;
      case Observable::Purity: v = rho.purity(); break;
    }
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidState, "non-finite observable", x);
    row.values.push_back(v);
  }
  return row;
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::array<Enum, N>& all, const char* what) {
  for (Enum e : all)
    if (to_string(e) == name) return e;
  throw Error(ErrorCode::InvalidSpec, std::string("unknown ") + what + " '" + std::string(name) + "'");
}

constexpr std::array kAxes = {SweepAxis::Delta1, SweepAxis::Phi, SweepAxis::Omega};
constexpr std::array kObservables = {Observable::Rho33,   Observable::ReRho31,
                                     Observable::ImRho31, Observable::Rho21,
                                     Observable::DarkFlag, Observable::Purity};
constexpr std::array kFigures = {FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5,
                                 FigureId::Fig6};

SweepSpec weak_probe_spec(std::string label, double omega, double kappa, double phi,
                          std::vector<Observable> observables) {
  SweepSpec s;
  s.label = std::move(label);
  s.base = SystemParams{.g = 0.05, .G = 1.0, .omega = omega, .phi = phi, .delta1 = 0.0,
                        .delta2 = 0.0, .gamma1 = 1.0, .gamma2 = 1.0, .kappa = kappa};
  s.axis = SweepAxis::Delta1;
  s.start = -0.5;
  s.stop = 0.5;
  s.points = 1001;
  s.observables = std::move(observables);
  return s;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Delta1: return "delta1";
    case SweepAxis::Phi: return "phi";
    case SweepAxis::Omega: return "omega";
  }
  return "?";
}

std::string_view to_string(Observable obs) {
  switch (obs) {
    case Observable::Rho33: return "rho33";
    case Observable::ReRho31: return "re_rho31";
    case Observable::ImRho31: return "im_rho31";
    case Observable::Rho21: return "rho21";
    case Observable::DarkFlag: return "dark_flag";
    case Observable::Purity: return "purity";
  }
  return "?";
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
    case FigureId::Fig6: return "fig6";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) { return parse_enum(name, kAxes, "axis"); }
Observable parse_observable(std::string_view name) {
  return parse_enum(name, kObservables, "observable");
}
FigureId parse_figure(std::string_view name) { return parse_enum(name, kFigures, "figure"); }

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::InvalidSpec, "unknown format '" + std::string(name) + "'");
}

void validate_spec(const SweepSpec& spec) {
  validate_params(spec.base);
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !(spec.start < spec.stop)) {
    throw Error(ErrorCode::InvalidSpec, "sweep needs finite start < stop");
  }
  if (spec.points < 2 || spec.points > kMaxPoints) {
    throw Error(ErrorCode::InvalidSpec, "points must be in [2, 1e6]", spec.points);
  }
  if (spec.observables.empty()) throw Error(ErrorCode::InvalidSpec, "no observables requested");
  std::set<Observable> seen(spec.observables.begin(), spec.observables.end());
  if (seen.size() != spec.observables.size()) {
    throw Error(ErrorCode::InvalidSpec, "observables must not repeat");
  }
  if (spec.axis == SweepAxis::Omega && spec.start < 0.0) {
    throw Error(ErrorCode::InvalidSpec, "omega sweep must stay >= 0", spec.start);
  }
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid(spec.points);
  const double span = spec.stop - spec.start;
  const double last = spec.points - 1;
  for (int i = 0; i < spec.points; ++i) grid[i] = spec.start + span * (i / last);
  grid.back() = spec.stop;
  return grid;
}

std::string tool_version() { return EITMW_VERSION; }

SweepDataset run_sweep(const SweepSpec& spec, int workers, const ToleranceConfig& tol) {
  validate_spec(spec);
  validate_tolerances(tol);
  const std::vector<double> grid = sweep_grid(spec);
  const auto n = static_cast<int>(grid.size());
  workers = std::clamp(workers, 1, n);

  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> first_failure{n};

  auto work = [&](int offset) {
    for (int i = offset; i < n; i += workers) {
      // indices below a known failure are still evaluated so the lowest one wins
      if (i > first_failure.load()) return;
      try {
        rows[i] = evaluate(spec, grid[i], tol);
      } catch (...) {
        errors[i] = std::current_exception();
        int seen = first_failure.load();
        while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
        }
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  const int failed = first_failure.load();
  if (failed < n) {
    try {
      std::rethrow_exception(errors[failed]);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "at " << to_string(spec.axis) << " = " << format_number(grid[failed]) << ": "
         << e.what();
      throw Error(e.code(), os.str(), grid[failed]);
    }
  }

  return {spec, std::move(rows), {validate_params(spec.base), tool_version(), utc_timestamp()}};
}

std::vector<SweepSpec> figure_preset(FigureId id) {
  using std::numbers::pi;
  switch (id) {
    case FigureId::Fig2: {
      std::vector<SweepSpec> specs;
      for (auto [label, phi] : {std::pair{"fig2_phi0", 0.0}, std::pair{"fig2_phi_half_pi", pi / 2}}) {
        SweepSpec s;
        s.label = label;
        s.base = SystemParams{.g = 1.0, .G = 1.0, .omega = 1.0, .phi = phi, .delta1 = 0.0,
                              .delta2 = 0.0, .gamma1 = 1.0, .gamma2 = 1.0, .kappa = 0.0};
        s.axis = SweepAxis::Delta1;
        s.start = -6.0;
        s.stop = 6.0;
        s.points = 601;
        s.observables = {Observable::Rho33, Observable::DarkFlag, Observable::Purity};
        specs.push_back(s);
      }
      return specs;
    }
    case FigureId::Fig3: {
      SweepSpec s;
      s.label = "fig3";
      s.base = SystemParams{.g = 20.0, .G = 20.0, .omega = 20.0, .phi = 0.0, .delta1 = 0.0,
                            .delta2 = 0.0, .gamma1 = 1.0, .gamma2 = 1.0, .kappa = 0.0};
      s.axis = SweepAxis::Phi;
      s.start = 0.0;
      s.stop = 2.0 * pi;
      s.points = 2001;
      s.observables = {Observable::Rho33, Observable::DarkFlag};
      return {s};
    }
    case FigureId::Fig4:
      return {weak_probe_spec("fig4", 0.05, 1.0, -pi / 2,
                              {Observable::Rho33, Observable::ReRho31, Observable::ImRho31})};
    case FigureId::Fig5: {
      std::vector<SweepSpec> specs;
      for (auto [label, omega] : {std::pair{"fig5_omega0.04", 0.04}, std::pair{"fig5_omega0.05", 0.05},
                                  std::pair{"fig5_omega0.06", 0.06}}) {
        specs.push_back(weak_probe_spec(label, omega, 1.0, -pi / 2,
                                        {Observable::Rho33, Observable::ReRho31, Observable::ImRho31}));
      }
      return specs;
    }
    case FigureId::Fig6:
      return {
          weak_probe_spec("fig6_no_dephasing", 0.0, 0.0, 0.0,
                          {Observable::ReRho31, Observable::ImRho31}),
          weak_probe_spec("fig6_dephasing", 0.0, 1.0, 0.0, {Observable::ReRho31, Observable::ImRho31}),
          weak_probe_spec("fig6_dephasing_microwave", 0.05, 1.0, -pi / 2,
                          {Observable::ReRho31, Observable::ImRho31}),
      };
  }
  return {};
}

nlohmann::json spec_to_json(const SweepSpec& spec) {
  nlohmann::json obs = nlohmann::json::array();
  for (Observable o : spec.observables) obs.push_back(std::string(to_string(o)));
  return {{"label", spec.label},   {"base", params_to_json(spec.base)},
          {"axis", std::string(to_string(spec.axis))},
          {"start", spec.start},   {"stop", spec.stop},
          {"points", spec.points}, {"observables", obs}};
}

SweepSpec spec_from_json(const nlohmann::json& j) {
  try {
    SweepSpec spec;
    spec.label = j.value("label", std::string());
    spec.base = params_from_json(j.at("base"));
    spec.axis = parse_axis(j.at("axis").get<std::string>());
    spec.start = j.at("start").get<double>();
    spec.stop = j.at("stop").get<double>();
    spec.points = j.at("points").get<int>();
    for (const auto& o : j.at("observables")) spec.observables.push_back(parse_observable(o.get<std::string>()));
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("malformed sweep spec: ") + e.what());
  }
}

nlohmann::json dataset_to_json(const SweepDataset& dataset) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : dataset.rows) {
    nlohmann::json r = {{"axis", row.axis_value}};
    for (std::size_t k = 0; k < row.values.size(); ++k) {
      r[std::string(to_string(dataset.spec.observables[k]))] = row.values[k];
    }
    rows.push_back(std::move(r));
  }
  return {{"spec", spec_to_json(dataset.spec)},
          {"metadata",
           {{"params", params_to_json(dataset.metadata.params)},
            {"tool_version", dataset.metadata.tool_version},
            {"timestamp", dataset.metadata.timestamp}}},
          {"rows", rows}};
}

SweepDataset dataset_from_json(const nlohmann::json& j) {
  try {
    SweepDataset d;
    d.spec = spec_from_json(j.at("spec"));
    const auto& meta = j.at("metadata");
    d.metadata.params = params_from_json(meta.at("params"));
    d.metadata.tool_version = meta.at("tool_version").get<std::string>();
    d.metadata.timestamp = meta.at("timestamp").get<std::string>();
    for (const auto& r : j.at("rows")) {
      SweepRow row{r.at("axis").get<double>(), {}};
      for (Observable o : d.spec.observables) row.values.push_back(r.at(std::string(to_string(o))).get<double>());
      d.rows.push_back(std::move(row));
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("malformed dataset: ") + e.what());
  }
}

void emit(const SweepDataset& dataset, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    out << dataset_to_json(dataset).dump(2) << '\n';
  } else {
    out << "axis";
    for (Observable o : dataset.spec.observables) out << ',' << to_string(o);
    out << '\n';
    for (const SweepRow& row : dataset.rows) {
      out << format_number(row.axis_value);
      for (double v : row.values) out << ',' << format_number(v);
      out << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::IoFailure, "write failed");
}

void emit(const SweepDataset& dataset, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
  emit(dataset, format, out);
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing '" + path.string() + "'");
}

}  // namespace eitmw
