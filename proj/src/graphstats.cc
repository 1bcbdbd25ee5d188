#include "osn/graphstats.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace osn {

UndirectedGraph::UndirectedGraph(const BlogrollGraph& g) {
  nodes_.assign(g.nodes.sorted().begin(), g.nodes.sorted().end());
  adjacency_.resize(nodes_.size());
  for (const Edge& e : g.edges) {
    std::size_t a = index_of(e.source);
    std::size_t b = index_of(e.target);
    if (a == b) continue;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

std::size_t UndirectedGraph::index_of(UserId u) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), u);
  if (it == nodes_.end() || *it != u) {
    throw std::invalid_argument("user #" + std::to_string(u.value) + " is not a graph node");
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool UndirectedGraph::adjacent(std::size_t a, std::size_t b) const {
  return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::vector<std::vector<UserId>> weak_components(const BlogrollGraph& g) {
  UndirectedGraph u(g);
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(u.size(), kUnseen);
  std::vector<std::vector<UserId>> out;
  std::vector<std::size_t> stack;
  // Seeds are visited in ascending id, so components come out ordered by
  // their smallest member.
  for (std::size_t seed = 0; seed < u.size(); ++seed) {
    if (label[seed] != kUnseen) continue;
    std::vector<UserId> members;
    label[seed] = out.size();
    stack.push_back(seed);
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      members.push_back(u.nodes()[x]);
      for (std::size_t y : u.neighbors(x)) {
        if (label[y] == kUnseen) {
          label[y] = out.size();
          stack.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::size_t reciprocal_pairs(const BlogrollGraph& g) {
  std::size_t pairs = 0;
  for (const Edge& e : g.edges) {
    if (e.source < e.target && g.edges.contains({e.target, e.source})) ++pairs;
  }
  return pairs;
}

double clustering_coefficient(const UndirectedGraph& g, std::span<const UserId> component) {
  if (component.empty()) return 0.0;
  double sum = 0.0;
  for (UserId node : component) {
    const auto& nbrs = g.neighbors(g.index_of(node));
    const std::size_t deg = nbrs.size();
    if (deg < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      for (std::size_t j = i + 1; j < deg; ++j) {
        if (g.adjacent(nbrs[i], nbrs[j])) ++links;
      }
    }
    sum += static_cast<double>(links) / (static_cast<double>(deg * (deg - 1)) / 2.0);
  }
  return sum / static_cast<double>(component.size());
}

double clustering_coefficient(const BlogrollGraph& g, std::span<const UserId> component) {
  return clustering_coefficient(UndirectedGraph(g), component);
}

DistanceProfile distance_profile(const UndirectedGraph& g, std::span<const UserId> component) {
  if (component.size() <= 1) return {};
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.size(), kUnseen);
  std::vector<std::size_t> visited;
  std::deque<std::size_t> queue;
  DistanceProfile out{std::numeric_limits<double>::infinity(), 0.0};
  for (UserId source : component) {
    std::size_t s = g.index_of(source);
    dist[s] = 0;
    visited.assign(1, s);
    queue.assign(1, s);
    std::size_t total = 0;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : g.neighbors(x)) {
        if (dist[y] != kUnseen) continue;
        dist[y] = dist[x] + 1;
        total += dist[y];
        visited.push_back(y);
        queue.push_back(y);
      }
    }
    if (visited.size() != component.size()) {
      throw std::invalid_argument("distance profile: node set is not one connected component");
    }
    for (std::size_t v : visited) dist[v] = kUnseen;
    double mean = static_cast<double>(total) / static_cast<double>(component.size() - 1);
    out.shortest = std::min(out.shortest, mean);
    out.longest = std::max(out.longest, mean);
  }
  return out;
}

DistanceProfile distance_profile(const BlogrollGraph& g, std::span<const UserId> component) {
  return distance_profile(UndirectedGraph(g), component);
}

GraphReport graph_report(const BlogrollGraph& g, std::size_t top) {
  GraphReport rep;
  UndirectedGraph u(g);
  auto components = weak_components(g);

  GraphSummary& sum = rep.summary;
  sum.nodes = g.nodes.size();
  sum.edges = g.edges.size();
  sum.weak_components = components.size();
  sum.reciprocal_pairs = reciprocal_pairs(g);
  sum.reciprocal_edges = 2 * sum.reciprocal_pairs;
  if (!components.empty()) {
    sum.min_component_size = std::numeric_limits<std::size_t>::max();
    for (const auto& c : components) {
      sum.max_component_size = std::max(sum.max_component_size, c.size());
      sum.min_component_size = std::min(sum.min_component_size, c.size());
    }
    sum.average_component_size =
        static_cast<double>(sum.nodes) / static_cast<double>(components.size());
  }

  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return components[a].size() > components[b].size();
  });
  order.resize(std::min(top, order.size()));

  std::vector<std::size_t> component_of(u.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (UserId m : components[c]) component_of[u.index_of(m)] = c;
  }
  std::vector<std::size_t> edges(components.size(), 0);
  std::vector<std::size_t> mutual(components.size(), 0);
  for (const Edge& e : g.edges) {
    std::size_t c = component_of[u.index_of(e.source)];
    ++edges[c];
    if (e.source < e.target && g.edges.contains({e.target, e.source})) ++mutual[c];
  }

  for (std::size_t c : order) {
    const auto& members = components[c];
    rep.components.push_back({c, members.size(), edges[c], clustering_coefficient(u, members),
                              distance_profile(u, members), mutual[c]});
  }
  return rep;
}

}  // namespace osn
