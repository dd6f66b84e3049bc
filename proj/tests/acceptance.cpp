// End-to-end acceptance checks at full scale (n=1000, 1000 steps, 20 runs).
// Prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "properties.hpp"
#include "reference_model.hpp"
#include "tagcoop/engine.hpp"
#include "tagcoop/experiments.hpp"

using namespace tagcoop;

namespace {

// Thresholds.
constexpr double kBaselineLevel = 0.84;
constexpr double kBaselineTolerance = 0.05;
constexpr double kMirrorGap = 0.05;
constexpr double kEarlyCeiling = 0.1;
constexpr std::uint32_t kEarlySteps = 3;
constexpr double kStrongGap = 0.30;
constexpr std::uint32_t kSpikeWindow = 20;
constexpr double kFlatIngroup = 0.05;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

ExperimentOptions options() {
  ExperimentOptions o;
  o.parallel = std::max(1U, std::thread::hardware_concurrency());
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Halfwidth of the per-run (ingroup - outgroup) gap at a sweep point.
double gap_halfwidth(const SweepPoint& point) {
  std::vector<double> gaps;
  for (const auto& run : point.runs) {
    if (run.ingroup && run.outgroup) gaps.push_back(*run.ingroup - *run.outgroup);
  }
  return aggregate_runs(gaps).ci_halfwidth;
}

double outgroup_halfwidth(const SweepPoint& point) { return point.outgroup->ci_halfwidth; }

// Walks points in the given order and checks that `value` never rises by more
// than one CI halfwidth (the larger of the two neighbours').
void check_nonincreasing(Verdict& v, const std::vector<const SweepPoint*>& order,
                         const std::function<double(const SweepPoint&)>& value,
                         const std::function<double(const SweepPoint&)>& halfwidth,
                         const std::string& label, const std::string& axis) {
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& a = *order[i - 1];
    const auto& b = *order[i];
    const double slack = std::max(halfwidth(a), halfwidth(b));
    std::ostringstream what;
    what << label << " at " << axis << "=" << b.value << " (" << fmt(value(b)) << ") exceeds "
         << axis << "=" << a.value << " (" << fmt(value(a)) << ") by more than " << fmt(slack);
    v.require(value(b) <= value(a) + slack, what.str());
  }
}

std::string describe_sweep(const SweepResult& result) {
  std::ostringstream out;
  for (const auto& p : result.points) {
    out << " " << to_string(result.parameter) << "=" << p.value << ":in=" << fmt(p.ingroup->mean)
        << ",out=" << fmt(p.outgroup->mean) << ",gap=" << fmt(*p.gap()) << "±"
        << fmt(gap_halfwidth(p));
  }
  return out.str();
}

const SweepPoint& point_at(const SweepResult& result, double value) {
  for (const auto& p : result.points) {
    if (p.value == value) return p;
  }
  throw std::logic_error("missing sweep point");
}

// Early local maximum of the cross-run outgroup series above its stabilized
// level.
void check_outgroup_spike(Verdict& v, const TimeseriesResult& biased) {
  const double settled = biased.stabilized_outgroup->mean;
  std::vector<double> out;
  for (const auto& row : biased.rows) out.push_back(row.outgroup->mean);
  double peak = -1;
  std::uint32_t at = 0;
  for (std::uint32_t t = 0; t < kSpikeWindow && t < out.size(); ++t) {
    const bool left = t == 0 || out[t] >= out[t - 1];
    const bool right = t + 1 >= out.size() || out[t] >= out[t + 1];
    if (left && right && out[t] > peak) {
      peak = out[t];
      at = t;
    }
  }
  v.detail << " outgroup peak " << fmt(peak) << " at t=" << at << " vs stabilized " << fmt(settled);
  v.require(peak > settled, "no early outgroup local maximum above the stabilized rate");
}

void check_strong_gap(Verdict& v, const TimeseriesResult& biased) {
  const double gap = biased.stabilized_ingroup->mean - biased.stabilized_outgroup->mean;
  v.detail << " ingroup " << fmt(biased.stabilized_ingroup->mean) << " outgroup "
           << fmt(biased.stabilized_outgroup->mean) << " gap " << fmt(gap);
  v.require(gap >= kStrongGap, "gap below " + fmt(kStrongGap));
}

int failures = 0;

void report(int id, const std::string& name, Verdict& v, double seconds) {
  if (!v.pass) ++failures;
  std::printf("[%s] AC%d %s:%s (%.0fs)\n", v.pass ? "PASS" : "FAIL", id, name.c_str(),
              v.detail.str().c_str(), seconds);
  std::fflush(stdout);
}

template <class Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    fn(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const auto seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, name, v, seconds);
}

}  // namespace

int main() {
  const auto opts = options();
  const SimConfig defaults;

  const auto unbiased = experiment_baseline(false, opts, defaults);

  criterion(1, "baseline cooperation level", [&](Verdict& v) {
    const double overall = unbiased.stabilized_overall->mean;
    const double gap =
        std::abs(unbiased.stabilized_ingroup->mean - unbiased.stabilized_outgroup->mean);
    v.detail << " overall " << fmt(overall) << "±" << fmt(unbiased.stabilized_overall->ci_halfwidth)
             << " |in-out| " << fmt(gap);
    v.require(std::abs(overall - kBaselineLevel) <= kBaselineTolerance,
              "overall outside 0.84 ± 0.05");
    v.require(gap < kMirrorGap, "ingroup and outgroup differ by 0.05 or more");
  });

  criterion(2, "early defection", [&](Verdict& v) {
    double sum = 0;
    for (std::uint32_t t = 0; t < kEarlySteps; ++t) sum += unbiased.rows[t].overall->mean;
    const double early = sum / kEarlySteps;
    v.detail << " mean cooperation over steps 1-3 " << fmt(early);
    v.require(early < kEarlyCeiling, "early cooperation not below 0.1");
  });

  const auto biased = experiment_baseline(true, opts, defaults);

  criterion(3, "ingroup favoritism under bias", [&](Verdict& v) { check_strong_gap(v, biased); });

  criterion(4, "early outgroup spike", [&](Verdict& v) { check_outgroup_spike(v, biased); });

  criterion(5, "b/c mitigation", [&](Verdict& v) {
    const auto sweep = sweep_bc({1.5, 2, 3, 5, 10}, opts, defaults);
    v.detail << describe_sweep(sweep);
    std::vector<const SweepPoint*> order;
    for (const auto& p : sweep.points) order.push_back(&p);
    check_nonincreasing(v, order, [](const SweepPoint& p) { return *p.gap(); }, gap_halfwidth,
                        "gap", "b/c");
  });

  criterion(6, "diversity mitigation", [&](Verdict& v) {
    const auto sweep = sweep_groups({2, 4, 5, 10, 20}, opts, defaults);
    v.detail << describe_sweep(sweep);
    std::vector<const SweepPoint*> order;
    for (const auto& p : sweep.points) order.push_back(&p);
    // Outgroup nondecreasing in m == negated outgroup nonincreasing.
    check_nonincreasing(v, order, [](const SweepPoint& p) { return -p.outgroup->mean; },
                        outgroup_halfwidth, "negated outgroup rate", "m");
    double lo = 1, hi = 0;
    for (const auto& p : sweep.points) {
      lo = std::min(lo, p.ingroup->mean);
      hi = std::max(hi, p.ingroup->mean);
    }
    v.detail << " ingroup range " << fmt(hi - lo);
    v.require(hi - lo < kFlatIngroup, "ingroup varies by 0.05 or more across m");
  });

  criterion(7, "degree mitigation", [&](Verdict& v) {
    const auto many = sweep_degree({3, 4, 6, 10, 20}, 20, opts, defaults);
    const auto few = sweep_degree({3, 4}, 2, opts, defaults);
    v.detail << " m=20:" << describe_sweep(many) << " | m=2:" << describe_sweep(few);
    // Decreasing r from 20: the gap must not grow.
    std::vector<const SweepPoint*> order{&point_at(many, 20), &point_at(many, 10),
                                         &point_at(many, 6), &point_at(many, 4)};
    check_nonincreasing(v, order, [](const SweepPoint& p) { return *p.gap(); }, gap_halfwidth,
                        "gap", "r");
    // r=3 spot checks.
    check_nonincreasing(v, {&point_at(many, 4), &point_at(many, 3)},
                        [](const SweepPoint& p) { return *p.gap(); }, gap_halfwidth, "gap", "r");
    v.require(*point_at(few, 4).gap() > kStrongGap, "m=2, r=4 gap not above 0.30");
    v.require(*point_at(few, 3).gap() > kStrongGap, "m=2, r=3 gap not above 0.30");
  });

  criterion(8, "robustness to epsilon = 0", [&](Verdict& v) {
    SimConfig config = defaults;
    config.game.epsilon = 0.0;
    const auto exact = experiment_baseline(true, opts, config);
    check_strong_gap(v, exact);
    check_outgroup_spike(v, exact);
  });

  criterion(9, "oracle equivalence", [&](Verdict& v) {
    int compared = 0;
    for (bool bias : {false, true}) {
      for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        reference::Params p;  // n=6, r=2, m=2, 5 steps, epsilon=0
        p.bias = bias;
        p.seed = seed;
        SimConfig c;
        c.n = 6;
        c.r = 2;
        c.m = 2;
        c.steps = 5;
        c.game.epsilon = 0.0;
        c.bias = bias;
        c.seed = seed;
        std::vector<reference::Move> log;
        run_simulation(c, 0, [&](std::span<const InteractionRecord> recs) {
          for (const auto& r : recs) {
            log.push_back({r.t, r.u, r.v, to_char(r.action_u), to_char(r.action_v), r.same_group});
          }
        });
        ++compared;
        if (log != reference::reference_log(p)) {
          v.require(false, "log mismatch at seed " + std::to_string(seed) +
                               (bias ? " (biased)" : " (unbiased)"));
          return;
        }
      }
    }
    v.detail << " " << compared << " logs identical";
  });

  criterion(10, "property suites", [&](Verdict& v) {
    const std::vector<std::pair<std::string, props::Outcome>> results = {
        {"graph invariants", props::graph_invariants(300)},
        {"decision scale invariance", props::decision_scale_invariance(20000)},
        {"decision monotonicity", props::decision_monotonicity(20000)},
        {"pooling equivalence", props::pooling_equivalence(6)},
        {"observation conservation", props::observation_conservation(6)},
        {"tag permutation invariance", props::tag_permutation_invariance(5)},
        {"byte-identical reruns", props::cli_reruns_identical()},
    };
    for (const auto& [name, outcome] : results) {
      v.detail << " " << name << "=" << (outcome.ok ? "ok" : "FAILED");
      v.require(outcome.ok, name + ": " + outcome.detail);
    }
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
