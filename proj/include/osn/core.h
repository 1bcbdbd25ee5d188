#pragma once

// Folksonomy data model: interned users, tags and resources, the in-domain
// post relation B, the out-of-domain tag assignment relation L (and its
// enriched in-domain image Y), and the explicit blogroll graph.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "osn/normalize.h"

namespace osn {

// Dense 0-based handle into one interning table. The Kind parameter keeps
// user, tag and resource handles from being mixed up.
template <typename Kind>
struct Handle {
  std::uint32_t value = 0;

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(Handle, Handle) = default;
};

struct UserKind {};
struct TagKind {};
struct ResourceKind {};

using UserId = Handle<UserKind>;
using TagId = Handle<TagKind>;
using ResourceId = Handle<ResourceKind>;

class InvalidLabel : public std::invalid_argument {
 public:
  explicit InvalidLabel(std::string raw)
      : std::invalid_argument("label is empty after normalization: \"" + raw + "\""),
        raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

// Bijective label <-> handle table. Labels are stored normalized.
template <typename Id>
class Interner {
 public:
  explicit Interner(NormalizationPolicy policy = {}) : policy_(policy) {}

  // Normalizes `raw` and returns its handle, allocating the next dense handle
  // on first sight. Throws InvalidLabel if nothing is left after normalization.
  Id intern(std::string_view raw) {
    std::string label = normalize(raw, policy_);
    if (label.empty()) throw InvalidLabel(std::string(raw));
    return intern_normalized(std::move(label));
  }

  // `label` must already be a fixed point of the policy.
  Id intern_normalized(std::string label) {
    auto it = index_.find(label);
    if (it != index_.end()) return Id{it->second};
    Id id{static_cast<std::uint32_t>(labels_.size())};
    index_.emplace(label, id.value);
    labels_.push_back(std::move(label));
    return id;
  }

  std::optional<Id> find_normalized(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return Id{it->second};
  }

  std::optional<Id> find(std::string_view raw) const {
    return find_normalized(normalize(raw, policy_));
  }

  const std::string& label(Id id) const { return labels_.at(id.index()); }
  bool contains(Id id) const { return id.index() < labels_.size(); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const NormalizationPolicy& policy() const { return policy_; }

 private:
  NormalizationPolicy policy_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct TagAssignment {
  UserId user;
  TagId tag;
  ResourceId resource;
  friend auto operator<=>(const TagAssignment&, const TagAssignment&) = default;
};

struct PostTuple {
  UserId user;
  ResourceId resource;
  friend auto operator<=>(const PostTuple&, const PostTuple&) = default;
};

struct Edge {
  UserId source;
  UserId target;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Set with insertion-order iteration. Insertion order is what makes a
// write-then-reload round trip reproduce the same handles.
template <typename T>
class TupleSet {
 public:
  // Returns false if `value` was already present.
  bool insert(const T& value) {
    if (!members_.insert(value).second) return false;
    order_.push_back(value);
    return true;
  }
  bool contains(const T& value) const { return members_.count(value) != 0; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }
  const std::vector<T>& in_order() const { return order_; }
  const std::set<T>& sorted() const { return members_; }

  friend bool operator==(const TupleSet& a, const TupleSet& b) {
    return a.order_ == b.order_;
  }

 private:
  std::set<T> members_;
  std::vector<T> order_;
};

struct BlogrollGraph {
  TupleSet<UserId> nodes;
  TupleSet<Edge> edges;

  friend bool operator==(const BlogrollGraph&, const BlogrollGraph&) = default;
};

struct Dataset {
  explicit Dataset(NormalizationPolicy policy = {})
      : users(policy), tags(policy), resources(policy) {}

  Interner<UserId> users;
  Interner<TagId> tags;
  Interner<ResourceId> resources;

  TupleSet<UserId> in_domain_users;
  TupleSet<UserId> out_domain_users;
  TupleSet<PostTuple> posts;              // B
  TupleSet<TagAssignment> assignments;    // L (out-of-domain)
  BlogrollGraph blogroll;
};

struct Violation {
  std::string kind;
  std::string detail;
};

// One record per breached invariant; empty iff the dataset is consistent.
std::vector<Violation> validate(const Dataset& dataset);

}  // namespace osn

template <typename Kind>
struct std::hash<osn::Handle<Kind>> {
  std::size_t operator()(osn::Handle<Kind> h) const noexcept {
    return std::hash<std::uint32_t>{}(h.value);
  }
};
