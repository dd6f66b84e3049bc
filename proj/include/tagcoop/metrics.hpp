#ifndef TAGCOOP_METRICS_HPP
#define TAGCOOP_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tagcoop/beliefs.hpp"
#include "tagcoop/graph.hpp"

namespace tagcoop {

// One played pair, with realized (post-tremble) actions.
struct InteractionRecord {
  std::uint32_t t;
  VertexId u;
  VertexId v;
  Action action_u;
  Action action_v;
  bool same_group;

  bool operator==(const InteractionRecord&) const = default;
};

enum class Relation : std::uint8_t { kIngroup, kOutgroup };

inline Relation classify_action(GroupTag actor, GroupTag partner) {
  return actor == partner ? Relation::kIngroup : Relation::kOutgroup;
}

// Action counts for one timestep. Each record contributes two actions.
struct StepTally {
  std::uint32_t ingroup_coop = 0;
  std::uint32_t ingroup_actions = 0;
  std::uint32_t outgroup_coop = 0;
  std::uint32_t outgroup_actions = 0;

  // Absent (nullopt) when the class saw no actions this step.
  std::optional<double> ingroup_rate() const;
  std::optional<double> outgroup_rate() const;
  std::optional<double> overall_rate() const;

  void add(const InteractionRecord& rec);
  bool operator==(const StepTally&) const = default;
};

StepTally tally_step(std::span<const InteractionRecord> records);

struct StepRates {
  std::optional<double> ingroup;
  std::optional<double> outgroup;
};

StepRates step_rates(std::span<const InteractionRecord> records);

// Per-timestep tallies of a single run.
struct CooperationSeries {
  std::vector<StepTally> steps;

  std::size_t size() const { return steps.size(); }
  std::vector<std::optional<double>> ingroup_rates() const;
  std::vector<std::optional<double>> outgroup_rates() const;
  std::vector<std::optional<double>> overall_rates() const;

  bool operator==(const CooperationSeries&) const = default;
};

class WindowTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kStabilizationWindow = 100;

// Mean of the final `window` entries. Absent entries are skipped; the result
// is absent only if every entry in the window is.
std::optional<double> stabilized_rate(std::span<const std::optional<double>> series,
                                      std::size_t window);
double stabilized_rate(std::span<const double> series, std::size_t window);

struct AggregateStat {
  double mean = 0.0;
  double ci_halfwidth = 0.0;  // 95%, Student-t with sample_count - 1 dof
  std::size_t sample_count = 0;
};

// Two-sided 97.5% quantile of Student's t with `dof` degrees of freedom.
double t_quantile_975(std::size_t dof);

// Mean and 95% confidence half-width across runs. Throws on empty input.
AggregateStat aggregate_runs(std::span<const double> values);

}  // namespace tagcoop

#endif  // TAGCOOP_METRICS_HPP
