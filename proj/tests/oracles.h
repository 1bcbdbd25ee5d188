#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. None of these share code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "osn/core.h"
#include "osn/profiles.h"
#include "osn/similarity.h"

namespace osn::oracle {

// Materializes B x L, keeps rows with equal resources, projects onto
// (blogger, tag, resource) and deduplicates.
inline std::vector<TagAssignment> enrich_nested_loop(const std::vector<PostTuple>& posts,
                                                     const std::vector<TagAssignment>& out) {
  std::vector<std::tuple<PostTuple, TagAssignment>> product;
  for (const PostTuple& b : posts) {
    for (const TagAssignment& l : out) product.emplace_back(b, l);
  }
  std::set<TagAssignment> projected;
  for (const auto& [b, l] : product) {
    if (b.resource == l.resource) projected.insert({b.user, l.tag, b.resource});
  }
  return {projected.begin(), projected.end()};
}

// Dense 0/1 rows.
using DenseMatrix = std::vector<std::vector<int>>;

inline DenseMatrix densify(const ProfileMatrix& m) {
  DenseMatrix d(m.rows.size(), std::vector<int>(m.vocabulary.size(), 0));
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (std::uint32_t i : m.rows[r].indices) d[r][i] = 1;
  }
  return d;
}

// Inner product over dense vectors, then the same final expression the
// binary cosine uses: shared / sqrt(|u| * |v|).
inline double dense_cosine(const std::vector<int>& u, const std::vector<int>& v) {
  std::size_t dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<std::size_t>(u[i] * v[i]);
    nu += static_cast<std::size_t>(u[i] * u[i]);
    nv += static_cast<std::size_t>(v[i] * v[i]);
  }
  if (nu == 0 || nv == 0) return 0.0;
  return static_cast<double>(dot) / std::sqrt(static_cast<double>(nu) * static_cast<double>(nv));
}

inline std::vector<std::vector<double>> all_pairs_cosine(const ProfileMatrix& m) {
  DenseMatrix d = densify(m);
  std::vector<std::vector<double>> s(d.size(), std::vector<double>(d.size(), 0.0));
  for (std::size_t a = 0; a < d.size(); ++a) {
    for (std::size_t b = 0; b < d.size(); ++b) {
      if (a != b) s[a][b] = dense_cosine(d[a], d[b]);
    }
  }
  return s;
}

// Sorts every other user by (score desc, id asc), drops zeros, keeps k.
inline std::vector<std::vector<std::pair<std::size_t, double>>> top_k_by_sort(
    const std::vector<std::vector<double>>& s, std::size_t k) {
  std::vector<std::vector<std::pair<std::size_t, double>>> out(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::vector<std::pair<std::size_t, double>> all;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (b != a) all.emplace_back(b, s[a][b]);
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    for (const auto& entry : all) {
      if (out[a].size() == k || entry.second <= 0.0) break;
      out[a].push_back(entry);
    }
  }
  return out;
}

// Random profile matrix with users 0..n-1 and items 0..items-1.
inline ProfileMatrix random_profiles(std::mt19937_64& rng, std::size_t users, std::size_t items,
                                     double density) {
  std::bernoulli_distribution bit(density);
  ProfileMatrix m;
  m.vocabulary.kind = ProfileKind::kTrack;
  for (std::size_t i = 0; i < items; ++i) {
    m.vocabulary.items.push_back(static_cast<std::uint32_t>(i));
    m.vocabulary.counts.push_back(0);
  }
  for (std::size_t u = 0; u < users; ++u) {
    UserProfile p{UserId{static_cast<std::uint32_t>(u)}, ProfileKind::kTrack, items, {}};
    for (std::size_t i = 0; i < items; ++i) {
      if (bit(rng)) p.indices.push_back(static_cast<std::uint32_t>(i));
    }
    m.rows.push_back(std::move(p));
  }
  return m;
}

// Graph oracles over an adjacency matrix of the undirected projection.
struct DenseGraph {
  std::vector<UserId> nodes;                 // ascending
  std::vector<std::vector<bool>> directed;   // directed[a][b]: edge a -> b
  std::vector<std::vector<bool>> undirected;
};

inline DenseGraph densify(const BlogrollGraph& g) {
  DenseGraph d;
  d.nodes.assign(g.nodes.sorted().begin(), g.nodes.sorted().end());
  const std::size_t n = d.nodes.size();
  d.directed.assign(n, std::vector<bool>(n, false));
  d.undirected.assign(n, std::vector<bool>(n, false));
  auto pos = [&](UserId u) {
    return static_cast<std::size_t>(std::lower_bound(d.nodes.begin(), d.nodes.end(), u) -
                                    d.nodes.begin());
  };
  for (const Edge& e : g.edges) {
    std::size_t a = pos(e.source), b = pos(e.target);
    d.directed[a][b] = true;
    if (a != b) d.undirected[a][b] = d.undirected[b][a] = true;
  }
  return d;
}

inline std::size_t position(const DenseGraph& d, UserId u) {
  return static_cast<std::size_t>(std::lower_bound(d.nodes.begin(), d.nodes.end(), u) -
                                  d.nodes.begin());
}

// Label propagation until fixpoint: every node takes the smallest label of
// itself and its neighbors.
inline std::vector<std::vector<UserId>> components(const DenseGraph& d) {
  const std::size_t n = d.nodes.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (d.undirected[a][b] && label[b] < label[a]) {
          label[a] = label[b];
          changed = true;
        }
      }
    }
  }
  std::vector<std::vector<UserId>> out;
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<UserId> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == root) members.push_back(d.nodes[i]);
    }
    if (!members.empty()) out.push_back(members);
  }
  return out;
}

inline std::size_t reciprocal_pairs(const DenseGraph& d) {
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < d.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < d.nodes.size(); ++b) {
      if (d.directed[a][b] && d.directed[b][a]) ++pairs;
    }
  }
  return pairs;
}

// Counts, for each node, the triangles through it by enumerating all
// unordered triples.
inline double clustering(const DenseGraph& d, const std::vector<UserId>& component) {
  const std::size_t n = d.nodes.size();
  std::vector<std::size_t> triangles(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (d.undirected[a][b] && d.undirected[b][c] && d.undirected[a][c]) {
          ++triangles[a];
          ++triangles[b];
          ++triangles[c];
        }
      }
    }
  }
  double sum = 0.0;
  for (UserId u : component) {
    std::size_t i = position(d, u);
    std::size_t deg = 0;
    for (std::size_t j = 0; j < n; ++j) deg += d.undirected[i][j] ? 1 : 0;
    if (deg < 2) continue;
    sum += static_cast<double>(triangles[i]) / (static_cast<double>(deg * (deg - 1)) / 2.0);
  }
  return component.empty() ? 0.0 : sum / static_cast<double>(component.size());
}

// Floyd-Warshall over the component, then per-node mean distance.
inline std::pair<double, double> distances(const DenseGraph& d,
                                           const std::vector<UserId>& component) {
  const std::size_t m = component.size();
  if (m <= 1) return {0.0, 0.0};
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;
  std::vector<std::vector<std::size_t>> dist(m, std::vector<std::size_t>(m, kInf));
  for (std::size_t a = 0; a < m; ++a) {
    dist[a][a] = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (d.undirected[position(d, component[a])][position(d, component[b])]) dist[a][b] = 1;
    }
  }
  for (std::size_t via = 0; via < m; ++via) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        dist[a][b] = std::min(dist[a][b], dist[a][via] + dist[via][b]);
      }
    }
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t total = 0;
    for (std::size_t b = 0; b < m; ++b) total += dist[a][b];
    double mean = static_cast<double>(total) / static_cast<double>(m - 1);
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
  }
  return {lo, hi};
}

// Random digraph with nodes 0..n-1 (no self-loops).
inline BlogrollGraph random_digraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution edge(p);
  BlogrollGraph g;
  for (std::size_t i = 0; i < n; ++i) g.nodes.insert(UserId{static_cast<std::uint32_t>(i)});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && edge(rng)) {
        g.edges.insert({UserId{static_cast<std::uint32_t>(a)}, UserId{static_cast<std::uint32_t>(b)}});
      }
    }
  }
  return g;
}

}  // namespace osn::oracle
