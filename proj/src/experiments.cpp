#include "tagcoop/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "tagcoop/parallel.hpp"

namespace tagcoop {

namespace {

RunSummary summarize(const CooperationSeries& series, const SimConfig& config,
                     std::uint64_t run_index, std::size_t window) {
  RunSummary summary;
  summary.run_index = run_index;
  summary.run_seed = derive_run_seed(config.seed, run_index);
  window = std::min<std::size_t>(window, series.size());
  if (window == 0) return summary;
  summary.ingroup = stabilized_rate(series.ingroup_rates(), window);
  summary.outgroup = stabilized_rate(series.outgroup_rates(), window);
  summary.overall = stabilized_rate(series.overall_rates(), window);
  return summary;
}

std::uint32_t as_count(SweepParam p, double value) {
  if (!(value >= 0.0) || std::floor(value) != value || value > 4.0e9) {
    std::ostringstream msg;
    msg << to_string(p) << " must be a nonnegative integer, got " << value;
    throw ConfigError(msg.str());
  }
  return static_cast<std::uint32_t>(value);
}

}  // namespace

std::optional<AggregateStat> aggregate_present(const std::vector<std::optional<double>>& values) {
  std::vector<double> present;
  present.reserve(values.size());
  for (const auto& v : values) {
    if (v) present.push_back(*v);
  }
  if (present.empty()) return std::nullopt;
  return aggregate_runs(present);
}

TimeseriesResult run_timeseries(const SimConfig& config, const ExperimentOptions& options) {
  config.validate();
  TimeseriesResult result;
  result.config = config;
  result.series.resize(config.runs);
  parallel_for(config.runs, options.parallel, [&](std::size_t run) {
    result.series[run] = run_simulation(config, run);
  });

  for (std::uint64_t run = 0; run < config.runs; ++run) {
    result.runs.push_back(summarize(result.series[run], config, run, options.window));
  }

  result.rows.reserve(config.steps);
  std::vector<std::optional<double>> in(config.runs), out(config.runs), all(config.runs);
  for (std::uint32_t t = 0; t < config.steps; ++t) {
    for (std::size_t run = 0; run < config.runs; ++run) {
      const auto& tally = result.series[run].steps[t];
      in[run] = tally.ingroup_rate();
      out[run] = tally.outgroup_rate();
      all[run] = tally.overall_rate();
    }
    result.rows.push_back({t, aggregate_present(in), aggregate_present(out), aggregate_present(all)});
  }

  std::vector<std::optional<double>> stab_in, stab_out, stab_all;
  for (const auto& s : result.runs) {
    stab_in.push_back(s.ingroup);
    stab_out.push_back(s.outgroup);
    stab_all.push_back(s.overall);
  }
  result.stabilized_ingroup = aggregate_present(stab_in);
  result.stabilized_outgroup = aggregate_present(stab_out);
  result.stabilized_overall = aggregate_present(stab_all);
  return result;
}

TimeseriesResult experiment_baseline(bool bias, const ExperimentOptions& options,
                                     const SimConfig& base) {
  SimConfig config = base;
  config.bias = bias;
  return run_timeseries(config, options);
}

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::kBOverC: return "b_over_c";
    case SweepParam::kM: return "m";
    case SweepParam::kR: return "r";
    case SweepParam::kEpsilon: return "epsilon";
    case SweepParam::kBias: return "bias";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view text) {
  for (auto p : {SweepParam::kBOverC, SweepParam::kM, SweepParam::kR, SweepParam::kEpsilon,
                 SweepParam::kBias}) {
    if (text == to_string(p)) return p;
  }
  throw ConfigError("unknown sweep parameter '" + std::string(text) +
                    "' (expected b_over_c, m, r, epsilon or bias)");
}

std::vector<double> default_sweep_values(SweepParam p) {
  switch (p) {
    case SweepParam::kBOverC: return {1.5, 2, 3, 5, 10};
    case SweepParam::kM: return {2, 4, 5, 10, 20};
    case SweepParam::kR: return {3, 4, 6, 10, 20};
    case SweepParam::kEpsilon: return {0, 0.01, 0.05, 0.1, 0.2, 0.5};
    case SweepParam::kBias: return {0, 1};
  }
  return {};
}

SimConfig apply_sweep_value(const SimConfig& base, SweepParam parameter, double value) {
  SimConfig config = base;
  switch (parameter) {
    case SweepParam::kBOverC: config.game.b = value * config.game.c; break;
    case SweepParam::kM: config.m = as_count(parameter, value); break;
    case SweepParam::kR: config.r = as_count(parameter, value); break;
    case SweepParam::kEpsilon: config.game.epsilon = value; break;
    case SweepParam::kBias:
      if (value != 0.0 && value != 1.0) throw ConfigError("bias sweep values must be 0 or 1");
      config.bias = value != 0.0;
      break;
  }
  config.validate();
  return config;
}

std::optional<double> SweepPoint::gap() const {
  if (!ingroup || !outgroup) return std::nullopt;
  return ingroup->mean - outgroup->mean;
}

SweepResult run_sweep(const SweepSpec& spec, const ExperimentOptions& options) {
  SweepResult result;
  result.parameter = spec.parameter;
  for (double value : spec.values) {
    SweepPoint point;
    point.value = value;
    point.config = apply_sweep_value(spec.base, spec.parameter, value);
    point.config.runs = spec.runs;
    point.config.validate();
    point.runs.resize(spec.runs);
    result.points.push_back(std::move(point));
  }

  const std::size_t tasks = result.points.size() * spec.runs;
  parallel_for(tasks, options.parallel, [&](std::size_t task) {
    auto& point = result.points[task / spec.runs];
    const std::uint64_t run = task % spec.runs;
    const auto series = run_simulation(point.config, run);
    point.runs[run] = summarize(series, point.config, run, options.window);
  });

  for (auto& point : result.points) {
    std::vector<std::optional<double>> in, out;
    for (const auto& s : point.runs) {
      in.push_back(s.ingroup);
      out.push_back(s.outgroup);
    }
    point.ingroup = aggregate_present(in);
    point.outgroup = aggregate_present(out);
  }
  return result;
}

SweepResult sweep_bc(const std::vector<double>& ratios, const ExperimentOptions& options,
                     const SimConfig& base) {
  SweepSpec spec{base, SweepParam::kBOverC, ratios, base.runs};
  spec.base.bias = true;
  return run_sweep(spec, options);
}

SweepResult sweep_groups(const std::vector<double>& group_counts,
                         const ExperimentOptions& options, const SimConfig& base) {
  SweepSpec spec{base, SweepParam::kM, group_counts, base.runs};
  spec.base.bias = true;
  return run_sweep(spec, options);
}

SweepResult sweep_degree(const std::vector<double>& degrees, std::uint32_t m,
                         const ExperimentOptions& options, const SimConfig& base) {
  SweepSpec spec{base, SweepParam::kR, degrees, base.runs};
  spec.base.bias = true;
  spec.base.m = m;
  return run_sweep(spec, options);
}

SweepResult sweep_epsilon(const std::vector<double>& epsilons, const ExperimentOptions& options,
                          const SimConfig& base) {
  SweepSpec spec{base, SweepParam::kEpsilon, epsilons, base.runs};
  spec.base.bias = true;
  return run_sweep(spec, options);
}

}  // namespace tagcoop
