#ifndef TAGCOOP_OUTPUT_HPP
#define TAGCOOP_OUTPUT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tagcoop/experiments.hpp"

namespace tagcoop {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCiMethod = "student-t 95%, df = runs - 1";

// Shortest decimal that parses back to the same double.
std::string format_number(double value);

// t,ingroup_mean,ingroup_ci95,outgroup_mean,outgroup_ci95,runs
// Absent statistics leave their fields empty.
void write_timeseries_csv(std::ostream& out, const TimeseriesResult& result);

// param,value,ingroup_mean,ingroup_ci95,outgroup_mean,outgroup_ci95,runs
void write_sweep_csv(std::ostream& out, const SweepResult& result);

// Per-run stabilized values, for audit:
// param,value,run,run_seed,ingroup,outgroup,overall
// (param and value are empty for single-config experiments).
void write_run_summaries_csv(std::ostream& out, const TimeseriesResult& result);
void write_run_summaries_csv(std::ostream& out, const SweepResult& result);

// Everything needed to regenerate an experiment's artifacts.
struct RunManifest {
  std::string experiment;
  SimConfig config;
  std::size_t window = kStabilizationWindow;
  std::optional<SweepParam> sweep_parameter;
  std::vector<double> sweep_values;
  std::vector<std::string> artifacts;
  std::string tool_version = kToolVersion;
};

nlohmann::ordered_json to_json(const RunManifest& manifest);

}  // namespace tagcoop

#endif  // TAGCOOP_OUTPUT_HPP
