#ifndef TAGCOOP_ENGINE_HPP
#define TAGCOOP_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tagcoop/beliefs.hpp"
#include "tagcoop/graph.hpp"
#include "tagcoop/metrics.hpp"
#include "tagcoop/random.hpp"

namespace tagcoop {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GameParams {
  double b = 3.0;        // benefit of receiving cooperation
  double c = 1.0;        // cost of cooperating
  double epsilon = 0.01; // tremble probability

  void validate() const;
  bool operator==(const GameParams&) const = default;
};

// How pairs are scheduled within a step.
enum class Schedule : std::uint8_t {
  kEdgeOnce,           // every edge once, in shuffled order
  kNeighborInitiated,  // every agent initiates with every neighbor: each edge twice
};

std::string_view to_string(Schedule s);
Schedule parse_schedule(std::string_view text);

struct SimConfig {
  std::uint32_t n = 1000;
  std::uint32_t r = 10;
  std::uint32_t m = 2;
  GameParams game;
  PriorParams prior;
  bool bias = false;
  double replacement_prob = 0.01;
  std::uint32_t steps = 1000;
  std::uint32_t runs = 20;
  std::uint64_t seed = 1;
  Schedule schedule = Schedule::kEdgeOnce;

  // Throws ConfigError naming the first violated constraint.
  void validate() const;
};

struct Agent {
  AgentId id;
  GroupTag tag;
  BeliefStore beliefs;
};

// Population state for one run.
//
// All randomness comes from `rng`, seeded with derive_run_seed(seed, run) and
// consumed in this fixed order:
//   1. graph construction;
//   2. one shuffle of the balanced tag list (agent i gets entry i);
//   3. per step: one shuffle of the pair schedule (a fresh copy of the
//      canonical edge list, or for kNeighborInitiated the list
//      (u,v),(v,u) for each canonical edge), then for each pair, if
//      epsilon > 0, one uniform01 draw for the first agent and one for the
//      second;
//   4. per step, if replacement_prob > 0, for each agent in id order one
//      uniform01 draw, followed by uniform_below(m) for the new tag when the
//      agent is replaced.
struct SimState {
  SimConfig config;
  RegularGraph graph;
  std::vector<Agent> agents;
  Rng rng;
  std::uint32_t t = 0;
};

// Row player's payoff.
double payoff(Action self, Action other, const GameParams& game);

SimState init_simulation(const SimConfig& config, std::uint64_t run_index);

// Both agents choose from their current beliefs, tremble, then record the
// outcome against their belief target for the other.
InteractionRecord play_pair(SimState& state, VertexId u, VertexId v);

// Plays every scheduled pair, then applies replacement, then advances t.
// `out` is cleared and receives the step's records in play order.
void step(SimState& state, std::vector<InteractionRecord>& out);
std::vector<InteractionRecord> step(SimState& state);

// Independent per-agent replacement with a fresh tag and empty beliefs.
// Neighbors forget their individual records of the replaced agent.
void apply_replacement(SimState& state);

using StepObserver = std::function<void(std::span<const InteractionRecord>)>;

CooperationSeries run_simulation(const SimConfig& config, std::uint64_t run_index,
                                 const StepObserver& observer = {});

// CSV with header "t,u,v,action_u,action_v,same_group".
void write_interaction_log_header(std::ostream& out);
void write_interaction_log(std::ostream& out, std::span<const InteractionRecord> records);

}  // namespace tagcoop

#endif  // TAGCOOP_ENGINE_HPP
