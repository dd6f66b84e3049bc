#ifndef TAGCOOP_GRAPH_HPP
#define TAGCOOP_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tagcoop/random.hpp"

namespace tagcoop {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

class InfeasibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple undirected r-regular graph. Immutable after construction.
//
// The raw constructor does not check anything so that broken graphs can be
// represented and reported by validate_graph().
class RegularGraph {
 public:
  RegularGraph(std::uint32_t n, std::uint32_t r,
               std::vector<std::vector<VertexId>> adjacency,
               std::vector<Edge> edges);

  // Builds sorted adjacency lists and the canonical (u < v, sorted) edge
  // list from an arbitrary edge list.
  static RegularGraph from_edges(std::uint32_t n, std::uint32_t r,
                                 std::vector<Edge> edges);

  std::uint32_t n() const { return n_; }
  std::uint32_t r() const { return r_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }
  const std::vector<std::vector<VertexId>>& adjacency() const { return adjacency_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool operator==(const RegularGraph&) const = default;

 private:
  std::uint32_t n_;
  std::uint32_t r_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Edge> edges_;
};

inline constexpr int kMaxGraphRestarts = 1000;

// Random simple r-regular graph on n vertices via the pairing model: points
// with residual degree are matched in uniformly drawn pairs, rejecting pairs
// that would form a loop or a multi-edge, and the whole construction starts
// over when no legal pair remains. For r > (n-1)/2 the complement, an
// (n-1-r)-regular graph, is paired instead and inverted.
RegularGraph generate_regular_graph(std::uint32_t n, std::uint32_t r, Rng& rng);

struct GraphViolation {
  enum class Kind {
    kDegree,
    kSelfLoop,
    kDuplicateEdge,
    kEdgeCount,
    kNonCanonicalEdge,
    kVertexOutOfRange,
    kAdjacencyMismatch,
  };
  Kind kind;
  std::string description;
};

// Empty iff every regular-graph invariant holds.
std::vector<GraphViolation> validate_graph(const RegularGraph& g);

// One "u v" line per edge in canonical order.
void write_edge_list(std::ostream& out, const RegularGraph& g);

}  // namespace tagcoop

#endif  // TAGCOOP_GRAPH_HPP
