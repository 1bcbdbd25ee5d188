#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "osn/similarity.h"

namespace osn {
namespace {

UserProfile profile(std::uint32_t user, std::vector<std::uint32_t> items, std::size_t dim = 8) {
  return {UserId{user}, ProfileKind::kTrack, dim, std::move(items)};
}

ProfileMatrix matrix(std::vector<std::vector<std::uint32_t>> rows, std::size_t dim = 8) {
  ProfileMatrix m;
  for (std::uint32_t i = 0; i < dim; ++i) {
    m.vocabulary.items.push_back(i);
    m.vocabulary.counts.push_back(0);
  }
  for (std::uint32_t u = 0; u < rows.size(); ++u) m.rows.push_back(profile(u, rows[u], dim));
  return m;
}

TEST(CosineTest, IdenticalProfiles) { EXPECT_EQ(cosine(profile(0, {1, 2}), profile(1, {1, 2})), 1.0); }

TEST(CosineTest, HalfOverlap) { EXPECT_EQ(cosine(profile(0, {1, 2}), profile(1, {2, 3})), 0.5); }

TEST(CosineTest, EmptyProfileIsZero) { EXPECT_EQ(cosine(profile(0, {}), profile(1, {1})), 0.0); }

TEST(CosineTest, VocabularyMismatch) {
  EXPECT_THROW(cosine(profile(0, {1}, 8), profile(1, {1}, 9)), std::invalid_argument);
  UserProfile tag = profile(1, {1});
  tag.kind = ProfileKind::kTag;
  EXPECT_THROW(cosine(profile(0, {1}), tag), std::invalid_argument);
}

TEST(CosinePropertyTest, SymmetricAndBounded) {
  std::mt19937_64 rng(31);
  ProfileMatrix m = oracle::random_profiles(rng, 60, 40, 0.15);
  for (const auto& u : m.rows) {
    if (!u.indices.empty()) {
      ASSERT_EQ(cosine(u, u), 1.0);
    }
    for (const auto& v : m.rows) {
      double s = cosine(u, v);
      ASSERT_EQ(s, cosine(v, u));
      ASSERT_GE(s, 0.0);
      ASSERT_LE(s, 1.0);
    }
  }
}

TEST(SimilarityMatrixTest, DisjointProfilesHaveNoEntries) {
  SimilarityMatrix s = similarity_matrix(matrix({{0}, {1}, {2, 3}}));
  EXPECT_EQ(s.pair_count(), 0u);
  EXPECT_EQ(s.at(0, 2), 0.0);
}

TEST(SimilarityMatrixTest, IdenticalPairSingleEntry) {
  SimilarityMatrix s = similarity_matrix(matrix({{1, 4}, {1, 4}}));
  EXPECT_EQ(s.pair_count(), 1u);
  EXPECT_EQ(s.at(0, 1), 1.0);
  EXPECT_EQ(s.at(1, 0), 1.0);
  EXPECT_THROW(s.at(1, 1), std::invalid_argument);
}

TEST(SimilarityMatrixTest, MatchesBruteForceExactly) {
  std::mt19937_64 rng(50);
  ProfileMatrix m = oracle::random_profiles(rng, 50, 200, 0.05);
  SimilarityMatrix s = similarity_matrix(m);
  auto expected = oracle::all_pairs_cosine(m);
  for (std::size_t a = 0; a < 50; ++a) {
    for (std::size_t b = 0; b < 50; ++b) {
      if (a != b) {
        ASSERT_EQ(s.at(a, b), expected[a][b]) << a << "," << b;
      }
    }
  }
}

TEST(SimilarityMatrixTest, StoresOnlyPositiveEntriesSymmetrically) {
  std::mt19937_64 rng(51);
  SimilarityMatrix s = similarity_matrix(oracle::random_profiles(rng, 80, 100, 0.04));
  for (std::size_t r = 0; r < s.size(); ++r) {
    for (const auto& e : s.row(r)) {
      ASSERT_GT(e.score, 0.0);
      ASSERT_NE(e.column, r);
      ASSERT_EQ(s.at(e.column, r), e.score);
    }
  }
}

TEST(SimilarityMatrixTest, WorkerCountDoesNotChangeResult) {
  std::mt19937_64 rng(52);
  ProfileMatrix m = oracle::random_profiles(rng, 300, 150, 0.05);
  SimilarityMatrix one = similarity_matrix(m, 1);
  for (unsigned w : {2u, 3u, 4u, 16u}) ASSERT_EQ(similarity_matrix(m, w), one);
}

TEST(SimilarityMatrixTest, RowsMustBeInUserOrder) {
  ProfileMatrix m = matrix({{0}, {0}});
  std::swap(m.rows[0], m.rows[1]);
  EXPECT_THROW(similarity_matrix(m), std::invalid_argument);
}

TEST(OptimalBlogrollTest, FewerCandidatesThanK) {
  // user 0 shares an item with users 1..3 only
  SimilarityMatrix s = similarity_matrix(matrix({{0, 1, 2}, {0}, {1}, {2}, {5}}));
  auto sets = optimal_blogrolls(s, 10);
  EXPECT_EQ(sets[0].members.size(), 3u);
  EXPECT_TRUE(sets[4].members.empty());
}

TEST(OptimalBlogrollTest, KeepsBest) {
  // cos(0,1) = 1, cos(0,2) = 1/sqrt(2)
  SimilarityMatrix s = similarity_matrix(matrix({{0}, {0}, {0, 1}}));
  auto sets = optimal_blogrolls(s, 1);
  ASSERT_EQ(sets[0].members.size(), 1u);
  EXPECT_EQ(sets[0].members[0].user, UserId{1});
  EXPECT_EQ(sets[0].members[0].score, 1.0);
}

TEST(OptimalBlogrollTest, TiesByAscendingId) {
  SimilarityMatrix s = similarity_matrix(matrix({{0}, {0}, {0}, {0}}));
  auto sets = optimal_blogrolls(s, 2);
  EXPECT_EQ(sets[3].members[0].user, UserId{0});
  EXPECT_EQ(sets[3].members[1].user, UserId{1});
}

TEST(OptimalBlogrollTest, RejectsZeroK) {
  EXPECT_THROW(optimal_blogrolls(SimilarityMatrix{}, 0), std::invalid_argument);
}

TEST(OptimalBlogrollTest, MatchesSortOracle) {
  std::mt19937_64 rng(20);
  for (int round = 0; round < 20; ++round) {
    ProfileMatrix m = oracle::random_profiles(rng, 20, 12, 0.25);
    SimilarityMatrix s = similarity_matrix(m);
    auto got = optimal_blogrolls(s, 10);
    auto expected = oracle::top_k_by_sort(oracle::all_pairs_cosine(m), 10);
    for (std::size_t u = 0; u < 20; ++u) {
      ASSERT_EQ(got[u].members.size(), expected[u].size());
      for (std::size_t i = 0; i < expected[u].size(); ++i) {
        ASSERT_EQ(got[u].members[i].user.index(), expected[u][i].first);
        ASSERT_EQ(got[u].members[i].score, expected[u][i].second);
      }
    }
  }
}

TEST(OptimalBlogrollTest, InvariantsAndMeanDominance) {
  std::mt19937_64 rng(24);
  const std::size_t k = 5;
  ProfileMatrix m = oracle::random_profiles(rng, 40, 30, 0.2);
  SimilarityMatrix s = similarity_matrix(m);
  auto sets = optimal_blogrolls(s, k);
  std::uniform_int_distribution<std::size_t> pick(0, 39);
  for (std::size_t u = 0; u < sets.size(); ++u) {
    const auto& members = sets[u].members;
    ASSERT_LE(members.size(), k);
    double best = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      ASSERT_NE(members[i].user, sets[u].owner);
      ASSERT_GT(members[i].score, 0.0);
      if (i > 0) {
        ASSERT_LE(members[i].score, members[i - 1].score);
      }
      best += members[i].score;
    }
    if (members.size() < k) continue;
    best /= static_cast<double>(k);
    for (int trial = 0; trial < 50; ++trial) {
      std::set<std::size_t> others;
      while (others.size() < k) {
        std::size_t v = pick(rng);
        if (v != u) others.insert(v);
      }
      double mean = 0.0;
      for (std::size_t v : others) mean += s.at(u, v);
      ASSERT_GE(best + 1e-12, mean / static_cast<double>(k));
    }
  }
}

}  // namespace
}  // namespace osn
