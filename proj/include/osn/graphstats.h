#pragma once

// Blogroll network statistics. Everything except the reciprocal-edge count
// is computed on the undirected projection of the blogroll digraph.

#include <cstddef>
#include <span>
#include <vector>

#include "osn/core.h"

namespace osn {

// Undirected projection with nodes renumbered 0..n-1 in ascending UserId.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(const BlogrollGraph& g);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<UserId>& nodes() const { return nodes_; }
  std::size_t index_of(UserId u) const;
  // Sorted, no duplicates, no self-loops.
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }
  bool adjacent(std::size_t a, std::size_t b) const;

 private:
  std::vector<UserId> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Weak components ordered by smallest member; members ascending.
std::vector<std::vector<UserId>> weak_components(const BlogrollGraph& g);

// Unordered pairs {u, v} with both u->v and v->u present.
std::size_t reciprocal_pairs(const BlogrollGraph& g);

// Mean local clustering coefficient over `component`; nodes with fewer than
// two undirected neighbors contribute 0.
double clustering_coefficient(const BlogrollGraph& g, std::span<const UserId> component);
double clustering_coefficient(const UndirectedGraph& g, std::span<const UserId> component);

struct DistanceProfile {
  double shortest = 0.0;  // min over nodes of mean distance to the others
  double longest = 0.0;   // max over nodes of the same
};

// Singleton components yield {0, 0}. Throws std::invalid_argument if the
// node set is not connected.
DistanceProfile distance_profile(const BlogrollGraph& g, std::span<const UserId> component);
DistanceProfile distance_profile(const UndirectedGraph& g, std::span<const UserId> component);

struct ComponentReport {
  std::size_t id = 0;  // position in weak_components order
  std::size_t nodes = 0;
  std::size_t edges = 0;  // directed
  double clustering = 0.0;
  DistanceProfile distances;
  std::size_t reciprocal_pairs = 0;
};

struct GraphSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t weak_components = 0;
  double average_component_size = 0.0;
  std::size_t max_component_size = 0;
  std::size_t min_component_size = 0;
  std::size_t reciprocal_pairs = 0;
  std::size_t reciprocal_edges = 0;  // directed edges that have a reverse edge
};

struct GraphReport {
  GraphSummary summary;
  // Largest components first (ties by id), at most `top` of them.
  std::vector<ComponentReport> components;
};

GraphReport graph_report(const BlogrollGraph& g, std::size_t top = 5);

}  // namespace osn
