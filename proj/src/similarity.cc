#include "osn/similarity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace osn {
namespace {

double binary_cosine(std::size_t shared, std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0.0;
  return static_cast<double>(shared) /
         std::sqrt(static_cast<double>(a) * static_cast<double>(b));
}

// Computes rows [first, last) of the matrix into `out`.
void fill_rows(const ProfileMatrix& m, const std::vector<std::vector<std::uint32_t>>& postings,
               std::size_t first, std::size_t last,
               std::vector<std::vector<SimilarityMatrix::Entry>>& out) {
  const std::size_t n = m.rows.size();
  std::vector<std::uint32_t> shared(n, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t r = first; r < last; ++r) {
    touched.clear();
    for (std::uint32_t item : m.rows[r].indices) {
      for (std::uint32_t other : postings[item]) {
        if (other == r) continue;
        if (shared[other]++ == 0) touched.push_back(other);
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& row = out[r];
    row.reserve(touched.size());
    const std::size_t own = m.rows[r].indices.size();
    for (std::uint32_t other : touched) {
      row.push_back({other, binary_cosine(shared[other], own, m.rows[other].indices.size())});
      shared[other] = 0;
    }
  }
}

}  // namespace

double cosine(const UserProfile& u, const UserProfile& v) {
  if (u.kind != v.kind || u.dimension != v.dimension) {
    throw std::invalid_argument("cosine: profiles are over different vocabularies");
  }
  std::size_t shared = 0;
  auto a = u.indices.begin();
  auto b = v.indices.begin();
  while (a != u.indices.end() && b != v.indices.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++shared;
      ++a;
      ++b;
    }
  }
  return binary_cosine(shared, u.indices.size(), v.indices.size());
}

SimilarityMatrix::SimilarityMatrix(std::vector<UserId> users, std::vector<std::vector<Entry>> rows)
    : users_(std::move(users)), rows_(std::move(rows)) {
  if (users_.size() != rows_.size()) {
    throw std::invalid_argument("similarity matrix: row count does not match user count");
  }
}

std::optional<std::size_t> SimilarityMatrix::row_of(UserId user) const {
  auto it = std::lower_bound(users_.begin(), users_.end(), user);
  if (it == users_.end() || *it != user) return std::nullopt;
  return static_cast<std::size_t>(it - users_.begin());
}

double SimilarityMatrix::at(std::size_t a, std::size_t b) const {
  if (a == b) throw std::invalid_argument("similarity matrix: diagonal entries are excluded");
  const auto& row = rows_.at(a);
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const Entry& e, std::size_t col) { return e.column < col; });
  if (it == row.end() || it->column != b) return 0.0;
  return it->score;
}

std::size_t SimilarityMatrix::pair_count() const {
  std::size_t total = 0;
  for (const auto& row : rows_) total += row.size();
  return total / 2;
}

SimilarityMatrix similarity_matrix(const ProfileMatrix& m, unsigned workers) {
  const std::size_t n = m.rows.size();
  std::vector<UserId> users;
  users.reserve(n);
  for (const UserProfile& p : m.rows) users.push_back(p.user);
  if (!std::is_sorted(users.begin(), users.end())) {
    throw std::invalid_argument("similarity matrix: profile rows must be in ascending user order");
  }

  std::vector<std::vector<std::uint32_t>> postings(m.vocabulary.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::uint32_t item : m.rows[r].indices) {
      postings.at(item).push_back(static_cast<std::uint32_t>(r));
    }
  }

  std::vector<std::vector<SimilarityMatrix::Entry>> rows(n);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fill_rows(m, postings, 0, n, rows);
  } else {
    // Interleaved blocks balance skewed profile sizes across threads.
    constexpr std::size_t kBlock = 64;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t start = w * kBlock; start < n; start += workers * kBlock) {
          fill_rows(m, postings, start, std::min(n, start + kBlock), rows);
        }
      });
    }
  }
  return SimilarityMatrix(std::move(users), std::move(rows));
}

std::vector<NeighborSet> optimal_blogrolls(const SimilarityMatrix& s, std::size_t k) {
  if (k == 0) throw std::invalid_argument("optimal blogrolls: k must be >= 1");
  std::vector<NeighborSet> out;
  out.reserve(s.size());
  std::vector<SimilarityMatrix::Entry> candidates;
  for (std::size_t r = 0; r < s.size(); ++r) {
    auto row = s.row(r);
    candidates.assign(row.begin(), row.end());
    // Columns are in ascending user order, so column order is id order.
    auto better = [](const auto& a, const auto& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.column < b.column;
    };
    std::size_t keep = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), better);
    NeighborSet set{s.user(r), {}};
    for (std::size_t i = 0; i < keep; ++i) {
      if (candidates[i].score <= 0.0) break;
      set.members.push_back({s.user(candidates[i].column), candidates[i].score});
    }
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace osn
