#include "tagcoop/output.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include "tagcoop/config.hpp"

namespace tagcoop {

namespace {

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_stat(std::ostream& out, const std::optional<AggregateStat>& stat) {
  if (stat) {
    out << format_number(stat->mean) << ',' << format_number(stat->ci_halfwidth);
  } else {
    out << ',';
  }
}

void write_summary_row(std::ostream& out, const std::string& param, const std::string& value,
                       const RunSummary& s) {
  out << param << ',' << value << ',' << s.run_index << ',' << s.run_seed << ','
      << field(s.ingroup) << ',' << field(s.outgroup) << ',' << field(s.overall) << '\n';
}

constexpr const char* kSummaryHeader = "param,value,run,run_seed,ingroup,outgroup,overall\n";

}  // namespace

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_timeseries_csv(std::ostream& out, const TimeseriesResult& result) {
  out << "t,ingroup_mean,ingroup_ci95,outgroup_mean,outgroup_ci95,runs\n";
  for (const auto& row : result.rows) {
    out << row.t << ',';
    write_stat(out, row.ingroup);
    out << ',';
    write_stat(out, row.outgroup);
    out << ',' << result.config.runs << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "param,value,ingroup_mean,ingroup_ci95,outgroup_mean,outgroup_ci95,runs\n";
  for (const auto& point : result.points) {
    out << to_string(result.parameter) << ',' << format_number(point.value) << ',';
    write_stat(out, point.ingroup);
    out << ',';
    write_stat(out, point.outgroup);
    out << ',' << point.runs.size() << '\n';
  }
}

void write_run_summaries_csv(std::ostream& out, const TimeseriesResult& result) {
  out << kSummaryHeader;
  for (const auto& s : result.runs) write_summary_row(out, "", "", s);
}

void write_run_summaries_csv(std::ostream& out, const SweepResult& result) {
  out << kSummaryHeader;
  const std::string param(to_string(result.parameter));
  for (const auto& point : result.points) {
    const auto value = format_number(point.value);
    for (const auto& s : point.runs) write_summary_row(out, param, value, s);
  }
}

nlohmann::ordered_json to_json(const RunManifest& manifest) {
  const auto& c = manifest.config;
  nlohmann::ordered_json config = {
      {"n", c.n},
      {"r", c.r},
      {"m", c.m},
      {"b", c.game.b},
      {"c", c.game.c},
      {"epsilon", c.game.epsilon},
      {"alpha", c.prior.alpha},
      {"beta", c.prior.beta},
      {"replacement_prob", c.replacement_prob},
      {"steps", c.steps},
      {"runs", c.runs},
      {"seed", c.seed},
      {"bias", c.bias},
      {"schedule", std::string(to_string(c.schedule))},
  };
  nlohmann::ordered_json j = {
      {"experiment", manifest.experiment},
      {"tool_version", manifest.tool_version},
      {"master_seed", c.seed},
      {"config", config},
      {"config_text", format_config(c)},
      {"stabilization_window", manifest.window},
      {"ci_method", kCiMethod},
      {"seed_derivation", "run_seed = derive_run_seed(master_seed, run_index), run_index in [0, runs)"},
  };
  if (manifest.sweep_parameter) {
    j["sweep"] = {{"parameter", std::string(to_string(*manifest.sweep_parameter))},
                  {"values", manifest.sweep_values}};
  }
  j["artifacts"] = manifest.artifacts;
  return j;
}

}  // namespace tagcoop
