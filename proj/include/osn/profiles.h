#pragma once

// Binary user profiles. A track profile marks the resources a blogger wrote
// about; a tag profile marks the vocabulary tags that reached the blogger
// through enrichment. Profiles are stored sparsely as sorted positions into
// the vocabulary.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "osn/core.h"
#include "osn/enrich.h"

namespace osn {

enum class ProfileKind { kTrack, kTag };

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

inline constexpr std::size_t kDefaultTagCap = 20000;

struct Vocabulary {
  ProfileKind kind = ProfileKind::kTrack;
  // Resource handles (track) or tag handles (tag), one per dimension.
  std::vector<std::uint32_t> items;
  // Per-dimension popularity: distinct in-domain mentioning users for
  // tracks, out-of-domain assignment count for tags.
  std::vector<std::size_t> counts;

  std::size_t size() const { return items.size(); }
};

struct UserProfile {
  UserId user;
  ProfileKind kind = ProfileKind::kTrack;
  std::size_t dimension = 0;           // vocabulary size
  std::vector<std::uint32_t> indices;  // strictly increasing, < dimension

  std::vector<bool> dense() const;
  static UserProfile from_dense(UserId user, ProfileKind kind, const std::vector<bool>& bits);

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct ProfileMatrix {
  Vocabulary vocabulary;
  std::vector<UserProfile> rows;  // ascending UserId

  std::size_t empty_profiles() const;
};

// The `cap` most frequent tags by out-of-domain assignment count; ties go to
// the lexicographically smaller normalized label.
Vocabulary build_tag_vocabulary(std::span<const TagAssignment> out_assignments,
                                const Interner<TagId>& tags, std::size_t cap = kDefaultTagCap);

// One row per user in `users` (sorted and deduplicated internally). Track
// dimensions are the posted resources in ascending handle order.
ProfileMatrix build_track_profiles(std::span<const UserId> users,
                                   std::span<const PostTuple> posts);

ProfileMatrix build_tag_profiles(std::span<const UserId> users, const EnrichedRelation& enriched,
                                 const Vocabulary& vocabulary);

}  // namespace osn
