#include "tagcoop/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <string>

namespace tagcoop {

namespace {

std::optional<double> ratio(std::uint32_t hits, std::uint32_t total) {
  if (total == 0) return std::nullopt;
  return static_cast<double>(hits) / total;
}

}  // namespace

std::optional<double> StepTally::ingroup_rate() const {
  return ratio(ingroup_coop, ingroup_actions);
}

std::optional<double> StepTally::outgroup_rate() const {
  return ratio(outgroup_coop, outgroup_actions);
}

std::optional<double> StepTally::overall_rate() const {
  return ratio(ingroup_coop + outgroup_coop, ingroup_actions + outgroup_actions);
}

void StepTally::add(const InteractionRecord& rec) {
  const std::uint32_t coop =
      (rec.action_u == Action::C ? 1U : 0U) + (rec.action_v == Action::C ? 1U : 0U);
  if (rec.same_group) {
    ingroup_coop += coop;
    ingroup_actions += 2;
  } else {
    outgroup_coop += coop;
    outgroup_actions += 2;
  }
}

StepTally tally_step(std::span<const InteractionRecord> records) {
  StepTally tally;
  for (const auto& rec : records) tally.add(rec);
  return tally;
}

StepRates step_rates(std::span<const InteractionRecord> records) {
  const auto tally = tally_step(records);
  return {tally.ingroup_rate(), tally.outgroup_rate()};
}

std::vector<std::optional<double>> CooperationSeries::ingroup_rates() const {
  std::vector<std::optional<double>> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.ingroup_rate());
  return out;
}

std::vector<std::optional<double>> CooperationSeries::outgroup_rates() const {
  std::vector<std::optional<double>> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.outgroup_rate());
  return out;
}

std::vector<std::optional<double>> CooperationSeries::overall_rates() const {
  std::vector<std::optional<double>> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.overall_rate());
  return out;
}

std::optional<double> stabilized_rate(std::span<const std::optional<double>> series,
                                      std::size_t window) {
  if (window == 0 || window > series.size()) {
    throw WindowTooLarge("window of " + std::to_string(window) +
                         " steps does not fit a series of length " +
                         std::to_string(series.size()));
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : series.last(window)) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

double stabilized_rate(std::span<const double> series, std::size_t window) {
  if (window == 0 || window > series.size()) {
    throw WindowTooLarge("window of " + std::to_string(window) +
                         " steps does not fit a series of length " +
                         std::to_string(series.size()));
  }
  double sum = 0.0;
  for (double v : series.last(window)) sum += v;
  return sum / static_cast<double>(window);
}

double t_quantile_975(std::size_t dof) {
  return boost::math::quantile(
      boost::math::students_t_distribution<double>(static_cast<double>(dof)), 0.975);
}

AggregateStat aggregate_runs(std::span<const double> input) {
  if (input.empty()) throw std::invalid_argument("aggregate_runs needs at least one value");
  // Summing in sorted order makes the result independent of run order.
  std::vector<double> values(input.begin(), input.end());
  std::sort(values.begin(), values.end());
  AggregateStat stat;
  stat.sample_count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  stat.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return stat;

  const bool constant = std::all_of(values.begin(), values.end(),
                                    [&](double v) { return v == values.front(); });
  if (constant) {
    stat.mean = values.front();
    return stat;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - stat.mean) * (v - stat.mean);
  const auto n = static_cast<double>(values.size());
  const double sd = std::sqrt(ss / (n - 1.0));
  stat.ci_halfwidth = t_quantile_975(values.size() - 1) * sd / std::sqrt(n);
  return stat;
}

}  // namespace tagcoop
