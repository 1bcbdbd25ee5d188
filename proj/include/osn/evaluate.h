#pragma once

// How well do explicit blogrolls agree with profile similarity? Compares
// each user's explicit blogroll B_u against their optimal blogroll B*_u.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "osn/core.h"
#include "osn/similarity.h"

namespace osn {

inline constexpr double kDefaultBinWidth = 0.1;

// Mean of S[user][v] over v in `roll`; nullopt for an empty roll. Throws
// std::invalid_argument if `user` is in its own roll or a member is not a
// matrix row.
std::optional<double> avg_blogroll_similarity(UserId user, std::span<const UserId> roll,
                                              const SimilarityMatrix& s);

struct BlogrollQualityReport {
  // Per matrix row; nullopt when the respective roll is empty.
  std::vector<std::optional<double>> explicit_scores;
  std::vector<std::optional<double>> optimal_scores;

  std::size_t users = 0;
  std::size_t users_with_explicit = 0;  // |B_u| > 0
  std::size_t users_with_optimal = 0;   // |B*_u| > 0

  double avg_sim_explicit = 0.0;   // AvgSim(B), mean over users_with_explicit
  double avg_sim_optimal = 0.0;    // AvgSim(B*), mean over users_with_optimal
  std::optional<double> improvement_percent;  // undefined when AvgSim(B) == 0

  std::size_t users_with_overlap = 0;  // |B_u ∩ B*_u| > 0
  double overlap_mean = 0.0;           // mean |B ∩ B*| over users_with_overlap
  double overlap_probability = 0.0;            // users_with_overlap / users_with_explicit
  double overlap_probability_all_users = 0.0;  // users_with_overlap / users
};

// Explicit rolls come from the blogroll's out-edges. `optimal` must hold one
// NeighborSet per matrix row, in row order.
BlogrollQualityReport quality_report(const BlogrollGraph& blogroll,
                                     std::span<const NeighborSet> optimal,
                                     const SimilarityMatrix& s);

struct Histogram {
  double bin_width = kDefaultBinWidth;
  std::vector<std::size_t> frequency;   // [i*w, (i+1)*w), last bin closed at 1
  std::vector<std::size_t> cumulative;

  std::size_t total() const { return cumulative.empty() ? 0 : cumulative.back(); }
  // Share of scores in bins whose lower edge is >= 0.5.
  double fraction_from_half() const;
};

// Throws std::invalid_argument when 1/bin_width is not an integer or a score
// lies outside [0, 1].
Histogram similarity_histogram(std::span<const double> scores, double bin_width = kDefaultBinWidth);

struct HistogramPair {
  Histogram explicit_rolls;
  Histogram optimal_rolls;
};

HistogramPair similarity_histograms(const BlogrollQualityReport& report,
                                    double bin_width = kDefaultBinWidth);

struct IntersectionDistribution {
  std::vector<std::size_t> counts;  // counts[i] = users with intersection size i, i = 0..max roll size
  std::size_t users = 0;
  double agreement = 0.0;    // share of users with intersection >= 1
  double mean_size = 0.0;    // mean intersection over agreeing users
};

// Throws std::invalid_argument unless both sides cover the same owners in the
// same order.
IntersectionDistribution blogroll_agreement(std::span<const NeighborSet> a,
                                            std::span<const NeighborSet> b);

}  // namespace osn
