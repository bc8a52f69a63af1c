#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eitmw/model.hpp"

namespace eitmw {

enum class SweepAxis { Delta1, Phi, Omega };
enum class Observable { Rho33, ReRho31, ImRho31, Rho21, DarkFlag, Purity };
enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6 };
enum class OutputFormat { Csv, Json };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Observable obs);
std::string_view to_string(FigureId id);
/// Parsers throw InvalidSpec on unknown names.
SweepAxis parse_axis(std::string_view name);
Observable parse_observable(std::string_view name);
FigureId parse_figure(std::string_view name);
OutputFormat parse_format(std::string_view name);

/// dark_flag threshold on rho33.
inline constexpr double kDarkFlagThreshold = 1e-8;

struct SweepSpec {
  std::string label;
  SystemParams base;
  SweepAxis axis = SweepAxis::Delta1;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  /// Column order of the emitted dataset. rho21 is the modulus |rho21|;
  /// dark_flag is 1 when rho33 <= kDarkFlagThreshold, else 0.
  std::vector<Observable> observables;

  bool operator==(const SweepSpec&) const = default;
};

/// Throws InvalidSpec (bad range, point count, empty or repeated observables)
/// or the validate_params errors for the base parameters.
void validate_spec(const SweepSpec& spec);

/// `points` values from start to stop inclusive.
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SweepRow {
  double axis_value = 0.0;
  /// One entry per spec.observables, same order.
  std::vector<double> values;

  bool operator==(const SweepRow&) const = default;
};

struct SweepMetadata {
  SystemParams params;
  std::string tool_version;
  std::string timestamp;

  bool operator==(const SweepMetadata&) const = default;
};

struct SweepDataset {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  SweepMetadata metadata;

  bool operator==(const SweepDataset&) const = default;
};

std::string tool_version();

/// Steady state at every grid point. Rows are ordered by grid index
/// regardless of `workers`. A failing point aborts the sweep; the error
/// reported is the one at the lowest failing grid index, with the axis value
/// as its magnitude.
SweepDataset run_sweep(const SweepSpec& spec, int workers = 1, const ToleranceConfig& tol = {});

/// Figure parameter sets, with Delta1 sweeps over
/// [-6, 6] (601 points, fig2) or [-0.5, 0.5] (1001 points, fig4-6) and a
/// phase sweep over [0, 2pi] (2001 points, fig3).
std::vector<SweepSpec> figure_preset(FigureId id);

/// CSV: header `axis,<observables...>` and one row per grid point, numbers
/// printed with 17 significant digits. JSON: object with `spec`, `metadata`
/// and `rows`.
void emit(const SweepDataset& dataset, OutputFormat format, std::ostream& out);
/// Throws IoFailure if the file cannot be written.
void emit(const SweepDataset& dataset, OutputFormat format, const std::filesystem::path& path);

nlohmann::json spec_to_json(const SweepSpec& spec);
SweepSpec spec_from_json(const nlohmann::json& j);
nlohmann::json dataset_to_json(const SweepDataset& dataset);
SweepDataset dataset_from_json(const nlohmann::json& j);

}  // namespace eitmw
