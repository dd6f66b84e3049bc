#include "tagcoop/engine.hpp"

#include <ostream>
#include <sstream>
#include <string>

namespace tagcoop {

void GameParams::validate() const {
  if (!(c > 0.0) || !(b > c)) {
    std::ostringstream msg;
    msg << "b must exceed c and c must exceed 0 (got b=" << b << ", c=" << c << ")";
    throw ConfigError(msg.str());
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("epsilon must lie in [0, 1]");
  }
}

std::string_view to_string(Schedule s) {
  return s == Schedule::kEdgeOnce ? "edge_once" : "neighbor_initiated";
}

Schedule parse_schedule(std::string_view text) {
  if (text == "edge_once") return Schedule::kEdgeOnce;
  if (text == "neighbor_initiated") return Schedule::kNeighborInitiated;
  throw ConfigError("unknown schedule '" + std::string(text) +
                    "' (expected edge_once or neighbor_initiated)");
}

void SimConfig::validate() const {
  if (m <= 1) throw ConfigError("m must exceed 1");
  if (n < 2) throw ConfigError("n must be at least 2");
  if (r < 1 || r >= n) throw ConfigError("r must satisfy 1 <= r < n");
  if ((static_cast<std::uint64_t>(n) * r) % 2 != 0) throw ConfigError("n*r must be even");
  if (m > n) throw ConfigError("m must not exceed n");
  game.validate();
  try {
    prior.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(replacement_prob >= 0.0 && replacement_prob <= 1.0)) {
    throw ConfigError("replacement_prob must lie in [0, 1]");
  }
  if (runs < 1) throw ConfigError("runs must be at least 1");
}

double payoff(Action self, Action other, const GameParams& game) {
  const double received = other == Action::C ? game.b : 0.0;
  const double paid = self == Action::C ? game.c : 0.0;
  return received - paid;
}

SimState init_simulation(const SimConfig& config, std::uint64_t run_index) {
  config.validate();
  Rng rng(derive_run_seed(config.seed, run_index));
  RegularGraph graph = generate_regular_graph(config.n, config.r, rng);

  // Balanced multiset; the first n mod m tags get one extra member.
  std::vector<GroupTag> tags;
  tags.reserve(config.n);
  for (GroupTag tag = 0; tag < config.m; ++tag) {
    const std::uint32_t size = config.n / config.m + (tag < config.n % config.m ? 1 : 0);
    tags.insert(tags.end(), size, tag);
  }
  rng.shuffle(std::span<GroupTag>(tags));

  std::vector<Agent> agents;
  agents.reserve(config.n);
  for (AgentId id = 0; id < config.n; ++id) {
    agents.push_back({id, tags[id], BeliefStore(tags[id], config.bias)});
  }
  return SimState{config, std::move(graph), std::move(agents), rng, 0};
}

InteractionRecord play_pair(SimState& state, VertexId u, VertexId v) {
  Agent& a = state.agents[u];
  Agent& b = state.agents[v];
  const auto& game = state.config.game;
  const auto& prior = state.config.prior;

  ConditionalCounts& seen_by_a = a.beliefs.lookup_or_init(a.beliefs.target_for(v, b.tag));
  ConditionalCounts& seen_by_b = b.beliefs.lookup_or_init(b.beliefs.target_for(u, a.tag));

  Action act_a = decide_from_counts(seen_by_a, prior, game.b, game.c);
  Action act_b = decide_from_counts(seen_by_b, prior, game.b, game.c);
  if (game.epsilon > 0.0) {
    act_a = tremble(act_a, game.epsilon, state.rng.uniform01());
    act_b = tremble(act_b, game.epsilon, state.rng.uniform01());
  }

  seen_by_a = observe(seen_by_a, act_a, act_b);
  seen_by_b = observe(seen_by_b, act_b, act_a);
  return {state.t, u, v, act_a, act_b, a.tag == b.tag};
}

void apply_replacement(SimState& state) {
  const double prob = state.config.replacement_prob;
  if (prob <= 0.0) return;
  for (auto& agent : state.agents) {
    if (!(state.rng.uniform01() < prob)) continue;
    const auto tag = static_cast<GroupTag>(state.rng.uniform_below(state.config.m));
    agent.tag = tag;
    agent.beliefs.reset(tag);
    for (VertexId w : state.graph.neighbors(agent.id)) {
      state.agents[w].beliefs.purge_individual(agent.id);
    }
  }
}

void step(SimState& state, std::vector<InteractionRecord>& out) {
  const auto& edges = state.graph.edges();
  std::vector<Edge> schedule;
  if (state.config.schedule == Schedule::kEdgeOnce) {
    schedule = edges;
  } else {
    schedule.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
      schedule.emplace_back(u, v);
      schedule.emplace_back(v, u);
    }
  }
  state.rng.shuffle(std::span<Edge>(schedule));

  out.clear();
  out.reserve(schedule.size());
  for (const auto& [u, v] : schedule) out.push_back(play_pair(state, u, v));

  apply_replacement(state);
  ++state.t;
}

std::vector<InteractionRecord> step(SimState& state) {
  std::vector<InteractionRecord> out;
  step(state, out);
  return out;
}

CooperationSeries run_simulation(const SimConfig& config, std::uint64_t run_index,
                                 const StepObserver& observer) {
  SimState state = init_simulation(config, run_index);
  CooperationSeries series;
  series.steps.reserve(config.steps);
  std::vector<InteractionRecord> records;
  for (std::uint32_t s = 0; s < config.steps; ++s) {
    step(state, records);
    series.steps.push_back(tally_step(records));
    if (observer) observer(records);
  }
  return series;
}

void write_interaction_log_header(std::ostream& out) {
  out << "t,u,v,action_u,action_v,same_group\n";
}

void write_interaction_log(std::ostream& out, std::span<const InteractionRecord> records) {
  for (const auto& rec : records) {
    out << rec.t << ',' << rec.u << ',' << rec.v << ',' << to_char(rec.action_u) << ','
        << to_char(rec.action_v) << ',' << (rec.same_group ? 1 : 0) << '\n';
  }
}

}  // namespace tagcoop
