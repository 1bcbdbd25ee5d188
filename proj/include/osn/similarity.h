#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "osn/core.h"
#include "osn/profiles.h"

namespace osn {

inline constexpr std::size_t kDefaultNeighbors = 10;

// Cosine of two binary profiles: |u ∩ v| / sqrt(|u| * |v|), 0 when either
// profile is empty. Throws std::invalid_argument if the profiles are over
// different vocabularies.
double cosine(const UserProfile& u, const UserProfile& v);

// Symmetric user-user cosine matrix. Only strictly positive off-diagonal
// entries are stored; each row holds its entries sorted by column.
class SimilarityMatrix {
 public:
  struct Entry {
    std::uint32_t column;
    double score;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SimilarityMatrix() = default;
  SimilarityMatrix(std::vector<UserId> users, std::vector<std::vector<Entry>> rows);

  std::size_t size() const { return users_.size(); }
  const std::vector<UserId>& users() const { return users_; }
  UserId user(std::size_t row) const { return users_.at(row); }
  std::optional<std::size_t> row_of(UserId user) const;

  std::span<const Entry> row(std::size_t r) const { return rows_.at(r); }
  // S[a][b] for a != b; 0 when the pair shares nothing. Throws on a == b.
  double at(std::size_t a, std::size_t b) const;
  // Number of unordered pairs with a positive score.
  std::size_t pair_count() const;

  friend bool operator==(const SimilarityMatrix&, const SimilarityMatrix&) = default;

 private:
  std::vector<UserId> users_;
  std::vector<std::vector<Entry>> rows_;
};

// Exact all-pairs cosine via an inverted index over vocabulary items; pairs
// that share no item are never touched. Rows are split across `workers`
// threads and each row is computed independently, so the result does not
// depend on the worker count.
SimilarityMatrix similarity_matrix(const ProfileMatrix& profiles, unsigned workers = 1);

struct Neighbor {
  UserId user;
  double score;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Optimal blogroll of one user: its (at most k) most similar other users,
// by descending score then ascending id. Zero-score users never appear.
struct NeighborSet {
  UserId owner;
  std::vector<Neighbor> members;
  friend bool operator==(const NeighborSet&, const NeighborSet&) = default;
};

// One NeighborSet per matrix row, in row order.
std::vector<NeighborSet> optimal_blogrolls(const SimilarityMatrix& s,
                                           std::size_t k = kDefaultNeighbors);

}  // namespace osn
