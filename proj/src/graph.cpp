#include "tagcoop/graph.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace tagcoop {

namespace {

// Consecutive rejected draws tolerated before checking whether any legal
// pair is left at all.
constexpr int kRejectionsBeforeSweep = 32;

bool contains(const std::vector<VertexId>& list, VertexId v) {
  return std::find(list.begin(), list.end(), v) != list.end();
}

void remove_point(std::vector<VertexId>& points, std::size_t index) {
  points[index] = points.back();
  points.pop_back();
}

// One pass of the pairing model. Returns false when it dead-ends.
bool try_pairing(std::uint32_t n, std::uint32_t r, Rng& rng,
                 std::vector<std::vector<VertexId>>& adjacency,
                 std::vector<Edge>& edges) {
  adjacency.assign(n, {});
  for (auto& list : adjacency) list.reserve(r);
  edges.clear();
  edges.reserve(static_cast<std::size_t>(n) * r / 2);

  std::vector<VertexId> points;
  points.reserve(static_cast<std::size_t>(n) * r);
  for (VertexId v = 0; v < n; ++v) points.insert(points.end(), r, v);

  int rejections = 0;
  while (!points.empty()) {
    std::size_t i = 0;
    std::size_t j = 0;
    if (rejections < kRejectionsBeforeSweep) {
      i = static_cast<std::size_t>(rng.uniform_below(points.size()));
      j = static_cast<std::size_t>(rng.uniform_below(points.size() - 1));
      if (j >= i) ++j;
      const VertexId a = points[i];
      const VertexId b = points[j];
      if (a == b || contains(adjacency[a], b)) {
        ++rejections;
        continue;
      }
    } else {
      std::set<VertexId> residual(points.begin(), points.end());
      std::vector<Edge> legal;
      for (auto a = residual.begin(); a != residual.end(); ++a) {
        for (auto b = std::next(a); b != residual.end(); ++b) {
          if (!contains(adjacency[*a], *b)) legal.emplace_back(*a, *b);
        }
      }
      if (legal.empty()) return false;
      const Edge pick = legal[rng.uniform_below(legal.size())];
      i = static_cast<std::size_t>(
          std::find(points.begin(), points.end(), pick.first) - points.begin());
      j = static_cast<std::size_t>(
          std::find(points.begin(), points.end(), pick.second) - points.begin());
    }

    const VertexId a = points[i];
    const VertexId b = points[j];
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
    edges.emplace_back(std::min(a, b), std::max(a, b));
    remove_point(points, std::max(i, j));
    remove_point(points, std::min(i, j));
    rejections = 0;
  }
  return true;
}

}  // namespace

RegularGraph::RegularGraph(std::uint32_t n, std::uint32_t r,
                           std::vector<std::vector<VertexId>> adjacency,
                           std::vector<Edge> edges)
    : n_(n), r_(r), adjacency_(std::move(adjacency)), edges_(std::move(edges)) {}

RegularGraph RegularGraph::from_edges(std::uint32_t n, std::uint32_t r,
                                      std::vector<Edge> edges) {
  std::vector<std::vector<VertexId>> adjacency(n);
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u < n) adjacency[u].push_back(v);
    if (v < n) adjacency[v].push_back(u);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  std::sort(edges.begin(), edges.end());
  return RegularGraph(n, r, std::move(adjacency), std::move(edges));
}

RegularGraph generate_regular_graph(std::uint32_t n, std::uint32_t r, Rng& rng) {
  if (n < 2 || r < 1 || r >= n) {
    std::ostringstream msg;
    msg << "no simple " << r << "-regular graph on " << n
        << " vertices (need n >= 2 and 1 <= r < n)";
    throw InfeasibleParameters(msg.str());
  }
  if ((static_cast<std::uint64_t>(n) * r) % 2 != 0) {
    std::ostringstream msg;
    msg << "n*r must be even, got n=" << n << " r=" << r;
    throw InfeasibleParameters(msg.str());
  }

  // Dense targets: pair the sparser complement instead.
  if (r > (n - 1) / 2) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * r / 2);
    if (r == n - 1) {
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      }
      return RegularGraph::from_edges(n, r, std::move(edges));
    }
    const auto sparse = generate_regular_graph(n, n - 1 - r, rng);
    for (VertexId u = 0; u < n; ++u) {
      const auto& skip = sparse.neighbors(u);
      for (VertexId v = u + 1; v < n; ++v) {
        if (!std::binary_search(skip.begin(), skip.end(), v)) edges.emplace_back(u, v);
      }
    }
    return RegularGraph::from_edges(n, r, std::move(edges));
  }

  std::vector<std::vector<VertexId>> adjacency;
  std::vector<Edge> edges;
  for (int attempt = 0; attempt <= kMaxGraphRestarts; ++attempt) {
    if (try_pairing(n, r, rng, adjacency, edges)) {
      for (auto& list : adjacency) std::sort(list.begin(), list.end());
      std::sort(edges.begin(), edges.end());
      return RegularGraph(n, r, std::move(adjacency), std::move(edges));
    }
  }
  std::ostringstream msg;
  msg << "pairing failed after " << kMaxGraphRestarts << " restarts (n=" << n
      << ", r=" << r << ")";
  throw ConstructionFailure(msg.str());
}

std::vector<GraphViolation> validate_graph(const RegularGraph& g) {
  using Kind = GraphViolation::Kind;
  std::vector<GraphViolation> out;
  auto report = [&out](Kind kind, auto&&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    out.push_back({kind, msg.str()});
  };

  const auto n = g.n();
  const auto& adjacency = g.adjacency();
  if (adjacency.size() != n) {
    report(Kind::kAdjacencyMismatch, "adjacency has ", adjacency.size(),
           " lists for ", n, " vertices");
  }

  for (VertexId v = 0; v < adjacency.size(); ++v) {
    const auto& list = adjacency[v];
    if (list.size() != g.r()) {
      report(Kind::kDegree, "vertex ", v, " has degree ", list.size(),
             ", expected ", g.r());
    }
    std::vector<VertexId> sorted = list;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] >= n) {
        report(Kind::kVertexOutOfRange, "vertex ", v, " lists neighbor ",
               sorted[k], " outside [0, ", n, ")");
      }
      if (k > 0 && sorted[k] == sorted[k - 1]) {
        report(Kind::kDuplicateEdge, "vertex ", v, " lists neighbor ",
               sorted[k], " more than once");
      }
    }
  }

  std::set<Edge> seen;
  std::set<Edge> from_edges;
  for (const auto& [u, v] : g.edges()) {
    if (u == v) {
      report(Kind::kSelfLoop, "self-loop at vertex ", u);
    } else if (u > v) {
      report(Kind::kNonCanonicalEdge, "edge (", u, ",", v, ") is not ordered u < v");
    }
    if (u >= n || v >= n) {
      report(Kind::kVertexOutOfRange, "edge (", u, ",", v, ") leaves [0, ", n, ")");
    }
    const Edge key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) {
      report(Kind::kDuplicateEdge, "edge (", key.first, ",", key.second,
             ") appears more than once");
    }
    from_edges.insert(key);
  }

  const auto expected = static_cast<std::uint64_t>(n) * g.r() / 2;
  if (g.edges().size() != expected) {
    report(Kind::kEdgeCount, "graph has ", g.edges().size(), " edges, expected ",
           expected);
  }

  std::set<Edge> from_adjacency;
  for (VertexId v = 0; v < adjacency.size(); ++v) {
    for (VertexId w : adjacency[v]) {
      if (w == v) {
        report(Kind::kSelfLoop, "vertex ", v, " lists itself as a neighbor");
        continue;
      }
      from_adjacency.insert({std::min(v, w), std::max(v, w)});
    }
  }
  for (const auto& e : from_adjacency) {
    if (!from_edges.contains(e)) {
      report(Kind::kAdjacencyMismatch, "adjacency edge (", e.first, ",", e.second,
             ") missing from edge list");
    }
    // Symmetry of adjacency.
    if (e.second < adjacency.size() && !contains(adjacency[e.second], e.first)) {
      report(Kind::kAdjacencyMismatch, "vertex ", e.second, " does not list ",
             e.first, " back");
    }
    if (e.first < adjacency.size() && !contains(adjacency[e.first], e.second)) {
      report(Kind::kAdjacencyMismatch, "vertex ", e.first, " does not list ",
             e.second, " back");
    }
  }
  for (const auto& e : from_edges) {
    if (e.first != e.second && !from_adjacency.contains(e)) {
      report(Kind::kAdjacencyMismatch, "edge (", e.first, ",", e.second,
             ") missing from adjacency");
    }
  }
  return out;
}

void write_edge_list(std::ostream& out, const RegularGraph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace tagcoop
