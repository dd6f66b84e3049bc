#include "tagcoop/beliefs.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace tagcoop {

char to_char(Action a) { return a == Action::C ? 'C' : 'D'; }

void PriorParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw std::invalid_argument("pseudocounts alpha and beta must be nonnegative");
  }
}

Estimates posterior_estimates(const ConditionalCounts& counts,
                              const PriorParams& prior) {
  const double after_c = static_cast<double>(counts.n_cc) + counts.n_cd;
  const double after_d = static_cast<double>(counts.n_dc) + counts.n_dd;
  const double shared = prior.alpha + prior.beta + 2.0;
  return {(counts.n_cc + prior.alpha + 1.0) / (after_c + shared),
          (counts.n_dc + prior.alpha + 1.0) / (after_d + shared)};
}

Action decide(double p, double q, double b, double c) {
  if (!(c > 0.0) || !(b > c)) {
    std::ostringstream msg;
    msg << "prisoner's dilemma needs b > c > 0, got b=" << b << " c=" << c;
    throw InvalidGame(msg.str());
  }
  return p * b - c > q * b ? Action::C : Action::D;
}

Action decide_from_counts(const ConditionalCounts& counts,
                          const PriorParams& prior, double b, double c) {
  const double shared = prior.alpha + prior.beta + 2.0;
  const double p_num = counts.n_cc + prior.alpha + 1.0;
  const double p_den = static_cast<double>(counts.n_cc) + counts.n_cd + shared;
  const double q_num = counts.n_dc + prior.alpha + 1.0;
  const double q_den = static_cast<double>(counts.n_dc) + counts.n_dd + shared;
  // p*b - c > q*b  <=>  (p_num*q_den - q_num*p_den) * b > c * p_den * q_den
  return (p_num * q_den - q_num * p_den) * b > c * (p_den * q_den) ? Action::C
                                                                    : Action::D;
}

Action tremble(Action intended, double epsilon, double draw) {
  return draw < epsilon ? opposite(intended) : intended;
}

ConditionalCounts observe(ConditionalCounts counts, Action own, Action partner) {
  if (own == Action::C) {
    ++(partner == Action::C ? counts.n_cc : counts.n_cd);
  } else {
    ++(partner == Action::C ? counts.n_dc : counts.n_dd);
  }
  return counts;
}

void BeliefStore::check(const BeliefTarget& target) const {
  if (target.kind == BeliefTarget::Kind::kGroup) {
    if (!biased_) {
      throw BiasViolation("unbiased store cannot hold group-level records");
    }
    if (target.key == owner_tag_) {
      throw BiasViolation("group record for the owner's own tag " +
                          std::to_string(owner_tag_));
    }
  } else if (biased_ && target.tag != owner_tag_) {
    throw BiasViolation("biased store cannot track outgroup agent " +
                        std::to_string(target.key) + " individually");
  }
}

ConditionalCounts& BeliefStore::lookup_or_init(const BeliefTarget& target) {
  check(target);
  for (auto& rec : records_) {
    if (rec.target == target) return rec.counts;
  }
  records_.push_back({target, {}});
  return records_.back().counts;
}

const ConditionalCounts* BeliefStore::find(const BeliefTarget& target) const {
  for (const auto& rec : records_) {
    if (rec.target == target) return &rec.counts;
  }
  return nullptr;
}

bool BeliefStore::purge_individual(AgentId id) {
  const auto it = std::find_if(records_.begin(), records_.end(), [id](const Record& rec) {
    return rec.target.kind == BeliefTarget::Kind::kIndividual && rec.target.key == id;
  });
  if (it == records_.end()) return false;
  records_.erase(it);
  return true;
}

void BeliefStore::reset(GroupTag new_owner_tag) {
  owner_tag_ = new_owner_tag;
  records_.clear();
}

std::uint64_t BeliefStore::total_observations() const {
  std::uint64_t total = 0;
  for (const auto& rec : records_) total += rec.counts.total();
  return total;
}

void BeliefStore::dump(std::ostream& out) const {
  for (const auto& rec : records_) {
    out << (rec.target.kind == BeliefTarget::Kind::kIndividual ? 'i' : 'g')
        << rec.target.key << ',' << rec.counts.n_cc << ',' << rec.counts.n_cd << ','
        << rec.counts.n_dc << ',' << rec.counts.n_dd << '\n';
  }
}

}  // namespace tagcoop
