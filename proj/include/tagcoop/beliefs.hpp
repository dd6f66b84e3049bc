#ifndef TAGCOOP_BELIEFS_HPP
#define TAGCOOP_BELIEFS_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace tagcoop {

using AgentId = std::uint32_t;
using GroupTag = std::uint32_t;

enum class Action : std::uint8_t { C, D };

constexpr Action opposite(Action a) { return a == Action::C ? Action::D : Action::C; }
char to_char(Action a);

class InvalidGame : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BiasViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Tallies of past interactions with one target: n_ab counts the times the
// owner played `a` while the partner played `b`.
struct ConditionalCounts {
  std::uint32_t n_cc = 0;
  std::uint32_t n_cd = 0;
  std::uint32_t n_dc = 0;
  std::uint32_t n_dd = 0;

  std::uint64_t total() const {
    return std::uint64_t{n_cc} + n_cd + n_dc + n_dd;
  }
  bool operator==(const ConditionalCounts&) const = default;
};

// Beta pseudocounts shared by every agent; alpha = beta = 0 is the uniform
// prior.
struct PriorParams {
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const;
};

struct Estimates {
  double p;  // P(partner cooperates | I cooperate)
  double q;  // P(partner cooperates | I defect)
};

// Posterior means of the two conditional cooperation probabilities.
Estimates posterior_estimates(const ConditionalCounts& counts,
                              const PriorParams& prior);

// C iff p*b - c > q*b. Ties defect.
Action decide(double p, double q, double b, double c);

// Same rule evaluated on the counts directly: both estimates are brought to a
// common denominator so that exact ties (e.g. p = q) are recognised without
// floating-point division noise. Agrees with decide(posterior_estimates(..))
// away from ties. Does not validate b and c.
Action decide_from_counts(const ConditionalCounts& counts,
                          const PriorParams& prior, double b, double c);

// Flips `intended` iff draw < epsilon.
Action tremble(Action intended, double epsilon, double draw);

ConditionalCounts observe(ConditionalCounts counts, Action own, Action partner);

// Who an observation is attributed to: a single partner, or a whole outgroup.
struct BeliefTarget {
  enum class Kind : std::uint8_t { kIndividual, kGroup };

  Kind kind;
  // Partner id for kIndividual, outgroup tag for kGroup.
  std::uint32_t key;
  // Partner's tag when the target was formed; equal to key for kGroup.
  GroupTag tag;

  static BeliefTarget individual(AgentId id, GroupTag partner_tag) {
    return {Kind::kIndividual, id, partner_tag};
  }
  static BeliefTarget group(GroupTag tag) { return {Kind::kGroup, tag, tag}; }

  bool operator==(const BeliefTarget& o) const {
    return kind == o.kind && key == o.key;
  }
};

// Per-agent memory of conditional counts.
//
// Unbiased stores hold one record per partner. Biased stores (outgroup
// homogeneity) hold records for ingroup partners individually and one pooled
// record per foreign tag.
class BeliefStore {
 public:
  struct Record {
    BeliefTarget target;
    ConditionalCounts counts;
  };

  BeliefStore(GroupTag owner_tag, bool biased) : owner_tag_(owner_tag), biased_(biased) {}

  GroupTag owner_tag() const { return owner_tag_; }
  bool biased() const { return biased_; }

  BeliefTarget target_for(AgentId partner, GroupTag partner_tag) const {
    if (biased_ && partner_tag != owner_tag_) return BeliefTarget::group(partner_tag);
    return BeliefTarget::individual(partner, partner_tag);
  }

  // Existing counts for `target`, or fresh zero counts registered under it.
  // Throws BiasViolation if the target could not legally be held here.
  ConditionalCounts& lookup_or_init(const BeliefTarget& target);

  // nullptr when the target has never been observed.
  const ConditionalCounts* find(const BeliefTarget& target) const;

  // Drops the individual record for `id`, if any. Group records are kept.
  bool purge_individual(AgentId id);

  // Forget everything and take on a new tag.
  void reset(GroupTag new_owner_tag);

  const std::vector<Record>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

  // Sum of all tallies across records.
  std::uint64_t total_observations() const;

  // One "target,n_cc,n_cd,n_dc,n_dd" row per record; targets print as
  // "i<id>" or "g<tag>".
  void dump(std::ostream& out) const;

 private:
  void check(const BeliefTarget& target) const;

  GroupTag owner_tag_;
  bool biased_;
  std::vector<Record> records_;
};

}  // namespace tagcoop

#endif  // TAGCOOP_BELIEFS_HPP
