#ifndef TAGCOOP_EXPERIMENTS_HPP
#define TAGCOOP_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tagcoop/engine.hpp"
#include "tagcoop/metrics.hpp"

namespace tagcoop {

struct ExperimentOptions {
  unsigned parallel = 1;  // worker threads; never changes results
  std::size_t window = kStabilizationWindow;
};

// Stabilized rates of one run, with what is needed to replay it.
struct RunSummary {
  std::uint64_t run_index = 0;
  std::uint64_t run_seed = 0;
  std::optional<double> ingroup;
  std::optional<double> outgroup;
  std::optional<double> overall;
};

struct TimeseriesRow {
  std::uint32_t t = 0;
  std::optional<AggregateStat> ingroup;
  std::optional<AggregateStat> outgroup;
  std::optional<AggregateStat> overall;
};

struct TimeseriesResult {
  SimConfig config;
  std::vector<TimeseriesRow> rows;
  std::vector<RunSummary> runs;
  std::vector<CooperationSeries> series;  // one per run
  std::optional<AggregateStat> stabilized_ingroup;
  std::optional<AggregateStat> stabilized_outgroup;
  std::optional<AggregateStat> stabilized_overall;
};

// All runs of one config, aggregated per step across runs.
TimeseriesResult run_timeseries(const SimConfig& config, const ExperimentOptions& options = {});

// Unbiased (bias = false) or biased population at the default parameters.
TimeseriesResult experiment_baseline(bool bias, const ExperimentOptions& options = {},
                                     const SimConfig& base = {});

enum class SweepParam : std::uint8_t { kBOverC, kM, kR, kEpsilon, kBias };

std::string_view to_string(SweepParam p);
SweepParam parse_sweep_param(std::string_view text);

// The swept grids used by the canned figures.
std::vector<double> default_sweep_values(SweepParam p);

struct SweepSpec {
  SimConfig base;
  SweepParam parameter = SweepParam::kBOverC;
  std::vector<double> values;
  std::uint32_t runs = 20;
};

// base with `parameter` set to `value`; validated. b_over_c keeps c and sets
// b = value * c.
SimConfig apply_sweep_value(const SimConfig& base, SweepParam parameter, double value);

struct SweepPoint {
  double value = 0.0;
  SimConfig config;
  std::optional<AggregateStat> ingroup;
  std::optional<AggregateStat> outgroup;
  std::vector<RunSummary> runs;

  // ingroup - outgroup means; absent if either side is.
  std::optional<double> gap() const;
};

struct SweepResult {
  SweepParam parameter = SweepParam::kBOverC;
  std::vector<SweepPoint> points;
};

// Every point reuses run indices 0..runs-1 under the base seed, so identical
// configs in different sweeps produce identical runs.
SweepResult run_sweep(const SweepSpec& spec, const ExperimentOptions& options = {});

// Canned sweeps, bias on.
SweepResult sweep_bc(const std::vector<double>& ratios, const ExperimentOptions& options = {},
                     const SimConfig& base = {});
SweepResult sweep_groups(const std::vector<double>& group_counts,
                         const ExperimentOptions& options = {}, const SimConfig& base = {});
SweepResult sweep_degree(const std::vector<double>& degrees, std::uint32_t m,
                         const ExperimentOptions& options = {}, const SimConfig& base = {});
SweepResult sweep_epsilon(const std::vector<double>& epsilons,
                          const ExperimentOptions& options = {}, const SimConfig& base = {});

// Aggregate of the present values; absent if none are.
std::optional<AggregateStat> aggregate_present(const std::vector<std::optional<double>>& values);

}  // namespace tagcoop

#endif  // TAGCOOP_EXPERIMENTS_HPP
