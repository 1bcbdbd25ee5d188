#include "osn/profiles.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace osn {
namespace {

std::vector<UserId> sorted_unique(std::span<const UserId> users) {
  std::vector<UserId> out(users.begin(), users.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Builds rows from (user, dimension) incidences.
template <typename Pairs>
std::vector<UserProfile> make_rows(const std::vector<UserId>& users, ProfileKind kind,
                                   std::size_t dimension, const Pairs& pairs) {
  std::unordered_map<UserId, std::size_t> row_of;
  std::vector<UserProfile> rows(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    row_of.emplace(users[i], i);
    rows[i].user = users[i];
    rows[i].kind = kind;
    rows[i].dimension = dimension;
  }
  for (const auto& [user, index] : pairs) {
    auto it = row_of.find(user);
    if (it != row_of.end()) rows[it->second].indices.push_back(index);
  }
  for (UserProfile& row : rows) {
    std::sort(row.indices.begin(), row.indices.end());
    row.indices.erase(std::unique(row.indices.begin(), row.indices.end()), row.indices.end());
  }
  return rows;
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  return kind == ProfileKind::kTrack ? "track" : "tag";
}

ProfileKind profile_kind_from_string(std::string_view name) {
  if (name == "track") return ProfileKind::kTrack;
  if (name == "tag") return ProfileKind::kTag;
  throw std::invalid_argument("unknown profile kind '" + std::string(name) + "'");
}

std::vector<bool> UserProfile::dense() const {
  std::vector<bool> bits(dimension, false);
  for (std::uint32_t i : indices) bits.at(i) = true;
  return bits;
}

UserProfile UserProfile::from_dense(UserId user, ProfileKind kind, const std::vector<bool>& bits) {
  UserProfile p{user, kind, bits.size(), {}};
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) p.indices.push_back(static_cast<std::uint32_t>(i));
  }
  return p;
}

std::size_t ProfileMatrix::empty_profiles() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const UserProfile& p) { return p.indices.empty(); }));
}

Vocabulary build_tag_vocabulary(std::span<const TagAssignment> out_assignments,
                                const Interner<TagId>& tags, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("tag vocabulary cap must be >= 1");
  std::unordered_map<TagId, std::size_t> counts;
  for (const TagAssignment& a : out_assignments) ++counts[a.tag];

  std::vector<std::pair<TagId, std::size_t>> ranked(counts.begin(), counts.end());
  auto before = [&tags](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return tags.label(a.first) < tags.label(b.first);
  };
  std::size_t keep = std::min(cap, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), before);
  ranked.resize(keep);

  Vocabulary vocab{ProfileKind::kTag, {}, {}};
  for (const auto& [tag, count] : ranked) {
    vocab.items.push_back(tag.value);
    vocab.counts.push_back(count);
  }
  return vocab;
}

ProfileMatrix build_track_profiles(std::span<const UserId> users,
                                   std::span<const PostTuple> posts) {
  std::vector<UserId> rows = sorted_unique(users);
  std::vector<PostTuple> sorted(posts.begin(), posts.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  ProfileMatrix m;
  m.vocabulary.kind = ProfileKind::kTrack;
  std::vector<std::uint32_t> resources;
  for (const PostTuple& p : sorted) resources.push_back(p.resource.value);
  std::sort(resources.begin(), resources.end());
  resources.erase(std::unique(resources.begin(), resources.end()), resources.end());
  m.vocabulary.items = resources;
  m.vocabulary.counts.assign(resources.size(), 0);

  std::unordered_map<std::uint32_t, std::uint32_t> position;
  for (std::size_t i = 0; i < resources.size(); ++i) {
    position.emplace(resources[i], static_cast<std::uint32_t>(i));
  }
  std::vector<std::pair<UserId, std::uint32_t>> pairs;
  pairs.reserve(sorted.size());
  for (const PostTuple& p : sorted) {
    std::uint32_t dim = position.at(p.resource.value);
    ++m.vocabulary.counts[dim];
    pairs.emplace_back(p.user, dim);
  }
  m.rows = make_rows(rows, ProfileKind::kTrack, resources.size(), pairs);
  return m;
}

ProfileMatrix build_tag_profiles(std::span<const UserId> users, const EnrichedRelation& enriched,
                                 const Vocabulary& vocabulary) {
  if (vocabulary.kind != ProfileKind::kTag) {
    throw std::invalid_argument("tag profiles need a tag vocabulary");
  }
  std::unordered_map<std::uint32_t, std::uint32_t> position;
  for (std::size_t i = 0; i < vocabulary.items.size(); ++i) {
    position.emplace(vocabulary.items[i], static_cast<std::uint32_t>(i));
  }
  std::vector<std::pair<UserId, std::uint32_t>> pairs;
  for (const TagAssignment& a : enriched.assignments) {
    auto it = position.find(a.tag.value);
    if (it != position.end()) pairs.emplace_back(a.user, it->second);
  }
  ProfileMatrix m;
  m.vocabulary = vocabulary;
  m.rows = make_rows(sorted_unique(users), ProfileKind::kTag, vocabulary.size(), pairs);
  return m;
}

}  // namespace osn
