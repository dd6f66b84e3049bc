#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "tagcoop/beliefs.hpp"
#include "tagcoop/cli.hpp"
#include "tagcoop/engine.hpp"
#include "tagcoop/graph.hpp"

namespace fs = std::filesystem;
using namespace tagcoop;

namespace props {

namespace {

template <class... Parts>
Outcome fail(const Parts&... parts) {
  std::ostringstream msg;
  (msg << ... << parts);
  return {false, msg.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Estimates random_estimates(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::uint32_t> count(0, 40);
  ConditionalCounts k{count(gen), count(gen), count(gen), count(gen)};
  return posterior_estimates(k, {});
}

}  // namespace

Outcome graph_invariants(int cases) {
  std::mt19937_64 gen(20240601);
  for (int i = 0; i < cases; ++i) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(2, 60)(gen);
    std::uint32_t r = std::uniform_int_distribution<std::uint32_t>(1, n - 1)(gen);
    if ((n * r) % 2 != 0) r = r > 1 ? r - 1 : r + 1;
    if (r >= n || (n * r) % 2 != 0) continue;
    const std::uint64_t seed = gen();
    Rng a(seed), b(seed);
    const auto g1 = generate_regular_graph(n, r, a);
    const auto g2 = generate_regular_graph(n, r, b);
    if (const auto v = validate_graph(g1); !v.empty()) {
      return fail("n=", n, " r=", r, " seed=", seed, ": ", v.front().description);
    }
    if (g1.edges() != g2.edges()) return fail("n=", n, " r=", r, " seed=", seed, " not deterministic");
  }
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(seed);
    const auto g = generate_regular_graph(1000, 10, rng);
    if (const auto v = validate_graph(g); !v.empty()) {
      return fail("n=1000 r=10 seed=", seed, ": ", v.front().description);
    }
  }
  return {};
}

Outcome decision_scale_invariance(int cases) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> cost(0.05, 5.0), ratio(1.001, 12.0), logk(-4.0, 4.0);
  std::uniform_int_distribution<int> pow2(-20, 20);
  for (int i = 0; i < cases; ++i) {
    const auto [p, q] = random_estimates(gen);
    const double c = cost(gen);
    const double b = c * ratio(gen);
    const Action base = decide(p, q, b, c);

    const double exact_k = std::ldexp(1.0, pow2(gen));
    if (decide(p, q, exact_k * b, exact_k * c) != base) {
      return fail("p=", p, " q=", q, " b=", b, " c=", c, " k=", exact_k);
    }
    // Arbitrary k rounds; only compare away from ties.
    const double k = std::pow(10.0, logk(gen));
    const double margin = p * b - c - q * b;
    if (std::abs(margin) > 1e-9 * (b + c) && decide(p, q, k * b, k * c) != base) {
      return fail("p=", p, " q=", q, " b=", b, " c=", c, " k=", k);
    }
  }
  return {};
}

Outcome decision_monotonicity(int cases) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0), cost(0.05, 5.0), ratio(1.001, 12.0);
  for (int i = 0; i < cases; ++i) {
    const double p = unit(gen), q = unit(gen);
    const double c = cost(gen);
    const double b = c * ratio(gen);
    const double up = std::nextafter(1.0, 0.0);
    const double p2 = p + (up - p) * unit(gen);
    const double q2 = q + (up - q) * unit(gen);
    if (decide(p, q, b, c) == Action::C && decide(p2, q, b, c) != Action::C) {
      return fail("C lost raising p ", p, " -> ", p2, " (q=", q, " b=", b, " c=", c, ")");
    }
    if (decide(p, q, b, c) == Action::D && decide(p, q2, b, c) != Action::D) {
      return fail("D lost raising q ", q, " -> ", q2, " (p=", p, " b=", b, " c=", c, ")");
    }
  }
  return {};
}

Outcome pooling_equivalence(int seeds) {
  for (int s = 0; s < seeds; ++s) {
    SimConfig config;
    config.n = 120;
    config.r = 6;
    config.m = 3 + static_cast<std::uint32_t>(s % 3);
    config.bias = true;
    config.replacement_prob = 0.0;
    config.seed = 100 + static_cast<std::uint64_t>(s);
    SimState state = init_simulation(config, 0);

    std::vector<BeliefStore> shadow;
    for (const auto& a : state.agents) shadow.emplace_back(a.tag, false);

    std::vector<InteractionRecord> records;
    for (int t = 0; t < 40; ++t) {
      step(state, records);
      for (const auto& rec : records) {
        auto& ku = shadow[rec.u].lookup_or_init(BeliefTarget::individual(rec.v, state.agents[rec.v].tag));
        ku = observe(ku, rec.action_u, rec.action_v);
        auto& kv = shadow[rec.v].lookup_or_init(BeliefTarget::individual(rec.u, state.agents[rec.u].tag));
        kv = observe(kv, rec.action_v, rec.action_u);
      }
    }

    for (const auto& agent : state.agents) {
      std::map<GroupTag, ConditionalCounts> pooled;
      for (const auto& rec : shadow[agent.id].records()) {
        const auto partner_tag = state.agents[rec.target.key].tag;
        if (partner_tag == agent.tag) {
          const auto* own = agent.beliefs.find(BeliefTarget::individual(rec.target.key, partner_tag));
          if (!own || !(*own == rec.counts)) {
            return fail("seed ", config.seed, ": agent ", agent.id, " ingroup record for ",
                        rec.target.key, " differs from shadow");
          }
          continue;
        }
        auto& sum = pooled[partner_tag];
        sum.n_cc += rec.counts.n_cc;
        sum.n_cd += rec.counts.n_cd;
        sum.n_dc += rec.counts.n_dc;
        sum.n_dd += rec.counts.n_dd;
      }
      std::size_t groups = 0;
      for (const auto& rec : agent.beliefs.records()) {
        if (rec.target.kind != BeliefTarget::Kind::kGroup) continue;
        ++groups;
        const auto it = pooled.find(rec.target.key);
        if (it == pooled.end() || !(it->second == rec.counts)) {
          return fail("seed ", config.seed, ": agent ", agent.id, " group ", rec.target.key,
                      " counts differ from pooled shadow");
        }
      }
      if (groups != pooled.size()) {
        return fail("seed ", config.seed, ": agent ", agent.id, " has ", groups,
                    " group records, shadow pools ", pooled.size());
      }
    }
  }
  return {};
}

Outcome observation_conservation(int seeds) {
  for (int s = 0; s < seeds; ++s) {
    for (bool bias : {false, true}) {
      for (auto schedule : {Schedule::kEdgeOnce, Schedule::kNeighborInitiated}) {
        SimConfig config;
        config.n = 80;
        config.r = 4;
        config.m = 2 + static_cast<std::uint32_t>(s % 4);
        config.bias = bias;
        config.schedule = schedule;
        config.replacement_prob = 0.0;
        config.seed = 500 + static_cast<std::uint64_t>(s);
        SimState state = init_simulation(config, 0);
        const std::uint64_t pairs = state.graph.edges().size() *
                                    (schedule == Schedule::kEdgeOnce ? 1 : 2);
        auto total = [&] {
          std::uint64_t sum = 0;
          for (const auto& a : state.agents) sum += a.beliefs.total_observations();
          return sum;
        };
        for (int t = 0; t < 15; ++t) {
          const auto before = total();
          const auto records = step(state);
          if (records.size() != pairs || total() - before != 2 * pairs) {
            return fail("seed ", config.seed, " step ", t, ": observations grew by ",
                        total() - before, ", expected ", 2 * pairs);
          }
        }
      }
    }
  }
  return {};
}

Outcome tag_permutation_invariance(int seeds) {
  for (int s = 0; s < seeds; ++s) {
    SimConfig config;
    config.n = 90;
    config.r = 4;
    config.m = 3;
    config.bias = false;
    config.replacement_prob = 0.05;
    config.seed = 900 + static_cast<std::uint64_t>(s);
    SimState plain = init_simulation(config, 0);
    SimState relabelled = init_simulation(config, 0);
    for (auto& agent : relabelled.agents) {
      agent.tag = (agent.tag + 1 + static_cast<GroupTag>(s)) % config.m;
      agent.beliefs.reset(agent.tag);
    }
    for (int t = 0; t < 60; ++t) {
      const auto a = step(plain);
      const auto b = step(relabelled);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].u != b[i].u || a[i].v != b[i].v || a[i].action_u != b[i].action_u ||
            a[i].action_v != b[i].action_v) {
          return fail("seed ", config.seed, " step ", t, " pair ", i, " differs after relabelling");
        }
      }
    }
  }
  return {};
}

Outcome cli_reruns_identical() {
  const fs::path root = fs::temp_directory_path() /
                        ("tagcoop_rerun_" + std::to_string(std::random_device{}()));
  fs::create_directories(root);
  const std::vector<std::vector<std::string>> invocations = {
      {"sweep", "m", "--values", "2,3,4", "--set", "n=60", "--set", "r=4", "--set", "bias=true"},
      {"figure", "2", "--set", "n=60", "--set", "r=4"},
      {"run", "--set", "n=48", "--set", "r=6", "--set", "m=3", "--log-run", "1"},
  };
  Outcome result;
  int id = 0;
  for (const auto& base : invocations) {
    std::vector<fs::path> dirs;
    for (const char* workers : {"1", "3", "1"}) {
      auto args = base;
      const auto dir = root / std::to_string(id++);
      args.insert(args.end(), {"--runs", "4", "--steps", "40", "--seed", "77", "--parallel",
                               workers, "--out", dir.string()});
      std::ostringstream out, err;
      if (run_command(args, out, err) != 0) {
        result = fail(base.front(), " exited nonzero: ", err.str());
        break;
      }
      dirs.push_back(dir);
    }
    if (!result.ok) break;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const auto name = entry.path().filename();
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        if (slurp(entry.path()) != slurp(dirs[k] / name)) {
          result = fail(base.front(), ": ", name.string(), " differs between reruns");
        }
      }
    }
    if (!result.ok) break;
  }
  fs::remove_all(root);
  return result;
}

}  // namespace props
