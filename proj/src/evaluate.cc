#include "osn/evaluate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace osn {
namespace {

std::size_t bins_for(double width) {
  if (!(width > 0.0) || width > 1.0) {
    throw std::invalid_argument("bin width must be in (0, 1]");
  }
  double n = std::round(1.0 / width);
  if (std::abs(n * width - 1.0) > 1e-9) {
    throw std::invalid_argument("bin width must divide 1 evenly");
  }
  return static_cast<std::size_t>(n);
}

double mean_of(const std::vector<std::optional<double>>& xs, std::size_t& count) {
  double sum = 0.0;
  count = 0;
  for (const auto& x : xs) {
    if (!x) continue;
    sum += *x;
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

std::optional<double> avg_blogroll_similarity(UserId user, std::span<const UserId> roll,
                                              const SimilarityMatrix& s) {
  if (roll.empty()) return std::nullopt;
  auto self = s.row_of(user);
  if (!self) throw std::invalid_argument("user #" + std::to_string(user.value) + " is not scored");
  double sum = 0.0;
  for (UserId v : roll) {
    if (v == user) {
      throw std::invalid_argument("user #" + std::to_string(user.value) +
                                  " appears in its own blogroll");
    }
    auto other = s.row_of(v);
    if (!other) throw std::invalid_argument("blogroll member #" + std::to_string(v.value) + " is not scored");
    sum += s.at(*self, *other);
  }
  return sum / static_cast<double>(roll.size());
}

BlogrollQualityReport quality_report(const BlogrollGraph& blogroll,
                                     std::span<const NeighborSet> optimal,
                                     const SimilarityMatrix& s) {
  const std::size_t n = s.size();
  if (optimal.size() != n) {
    throw std::invalid_argument("quality report: one optimal blogroll per user is required");
  }
  std::vector<std::vector<UserId>> explicit_rolls(n);
  for (const Edge& e : blogroll.edges) {
    auto row = s.row_of(e.source);
    if (!row) {
      throw std::invalid_argument("quality report: blogroll user #" +
                                  std::to_string(e.source.value) + " has no profile row");
    }
    explicit_rolls[*row].push_back(e.target);
  }

  BlogrollQualityReport rep;
  rep.users = n;
  rep.explicit_scores.resize(n);
  rep.optimal_scores.resize(n);
  std::size_t overlap_total = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const NeighborSet& best = optimal[r];
    if (best.owner != s.user(r)) {
      throw std::invalid_argument("quality report: optimal blogrolls are not in matrix row order");
    }
    auto& roll = explicit_rolls[r];
    std::sort(roll.begin(), roll.end());
    rep.explicit_scores[r] = avg_blogroll_similarity(s.user(r), roll, s);

    std::vector<UserId> members;
    for (const Neighbor& m : best.members) members.push_back(m.user);
    rep.optimal_scores[r] = avg_blogroll_similarity(s.user(r), members, s);

    std::sort(members.begin(), members.end());
    std::vector<UserId> shared;
    std::set_intersection(roll.begin(), roll.end(), members.begin(), members.end(),
                          std::back_inserter(shared));
    if (!shared.empty()) {
      ++rep.users_with_overlap;
      overlap_total += shared.size();
    }
  }

  rep.avg_sim_explicit = mean_of(rep.explicit_scores, rep.users_with_explicit);
  rep.avg_sim_optimal = mean_of(rep.optimal_scores, rep.users_with_optimal);
  if (rep.avg_sim_explicit > 0.0) {
    rep.improvement_percent =
        (rep.avg_sim_optimal - rep.avg_sim_explicit) / rep.avg_sim_explicit * 100.0;
  }
  if (rep.users_with_overlap > 0) {
    rep.overlap_mean =
        static_cast<double>(overlap_total) / static_cast<double>(rep.users_with_overlap);
  }
  if (rep.users_with_explicit > 0) {
    rep.overlap_probability = static_cast<double>(rep.users_with_overlap) /
                              static_cast<double>(rep.users_with_explicit);
  }
  if (n > 0) {
    rep.overlap_probability_all_users =
        static_cast<double>(rep.users_with_overlap) / static_cast<double>(n);
  }
  return rep;
}

double Histogram::fraction_from_half() const {
  if (total() == 0) return 0.0;
  std::size_t first = static_cast<std::size_t>(std::llround(0.5 / bin_width));
  std::size_t above = 0;
  for (std::size_t i = first; i < frequency.size(); ++i) above += frequency[i];
  return static_cast<double>(above) / static_cast<double>(total());
}

Histogram similarity_histogram(std::span<const double> scores, double bin_width) {
  const std::size_t bins = bins_for(bin_width);
  Histogram h{bin_width, std::vector<std::size_t>(bins, 0), {}};
  for (double x : scores) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("similarity score outside [0, 1]: " + std::to_string(x));
    }
    // x * bins rather than x / width: 0.3 / 0.1 rounds below 3.
    auto bin = static_cast<std::size_t>(std::floor(x * static_cast<double>(bins)));
    ++h.frequency[std::min(bin, bins - 1)];
  }
  h.cumulative.resize(bins);
  std::size_t running = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    running += h.frequency[i];
    h.cumulative[i] = running;
  }
  return h;
}

HistogramPair similarity_histograms(const BlogrollQualityReport& report, double bin_width) {
  auto present = [](const std::vector<std::optional<double>>& xs) {
    std::vector<double> out;
    for (const auto& x : xs) {
      if (x) out.push_back(*x);
    }
    return out;
  };
  return {similarity_histogram(present(report.explicit_scores), bin_width),
          similarity_histogram(present(report.optimal_scores), bin_width)};
}

IntersectionDistribution blogroll_agreement(std::span<const NeighborSet> a,
                                            std::span<const NeighborSet> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("blogroll agreement: populations differ in size");
  }
  IntersectionDistribution d;
  d.users = a.size();
  std::size_t agreeing = 0;
  std::size_t total = 0;
  std::vector<UserId> left;
  std::vector<UserId> right;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].owner != b[i].owner) {
      throw std::invalid_argument("blogroll agreement: populations differ at position " +
                                  std::to_string(i));
    }
    left.clear();
    right.clear();
    for (const Neighbor& m : a[i].members) left.push_back(m.user);
    for (const Neighbor& m : b[i].members) right.push_back(m.user);
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    std::vector<UserId> shared;
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(shared));
    if (d.counts.size() <= shared.size()) d.counts.resize(shared.size() + 1, 0);
    ++d.counts[shared.size()];
    if (!shared.empty()) {
      ++agreeing;
      total += shared.size();
    }
  }
  std::size_t widest = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    widest = std::max({widest, a[i].members.size(), b[i].members.size()});
  }
  if (d.users > 0 && d.counts.size() < widest + 1) d.counts.resize(widest + 1, 0);
  if (d.users > 0) d.agreement = static_cast<double>(agreeing) / static_cast<double>(d.users);
  if (agreeing > 0) d.mean_size = static_cast<double>(total) / static_cast<double>(agreeing);
  return d;
}

}  // namespace osn
