#pragma once

// Newline-delimited JSON loaders for the four input files:
//
//   posts        {"user": "...", "resource": "..."}
//   assignments  {"user": "...", "tag": "...", "resource": "..."}
//   blogroll     {"source": "...", "target": "..."}
//   dictionary   one resource label per line
//
// Blank lines and lines whose first character is '#' are ignored.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "osn/core.h"

namespace osn {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ResourceDictionary {
 public:
  ResourceDictionary() = default;
  ResourceDictionary(std::span<const std::string> raw_labels, const NormalizationPolicy& policy);

  bool contains(const std::string& normalized) const { return labels_.count(normalized) != 0; }
  std::size_t size() const { return labels_.size(); }

 private:
  std::unordered_set<std::string> labels_;
};

ResourceDictionary load_dictionary(std::istream& in, const NormalizationPolicy& policy = {});

struct LoadReport {
  std::size_t records = 0;  // non-comment, non-blank lines
  std::size_t added = 0;
  std::size_t duplicates = 0;
  std::size_t skipped_empty_field = 0;
  std::size_t skipped_not_in_dictionary = 0;
  std::size_t self_loops = 0;
  std::size_t unknown_endpoints_interned = 0;
  std::size_t unknown_endpoints_skipped = 0;  // strict mode only
};

struct IngestOptions {
  // Blogroll edges naming users with no posts: intern them as profile-less
  // in-domain users (default) or skip the edge.
  bool strict_blogroll = false;
  // Prepended to out-of-domain user labels so the two sites' user sets stay
  // disjoint even when account names collide.
  std::string out_domain_prefix = "out:";
};

// Adds in-domain users, resources and post tuples to `dataset`. Every
// in-domain user also becomes a blogroll node.
LoadReport load_posts(std::istream& in, Dataset& dataset,
                      const ResourceDictionary* dictionary = nullptr);

// Adds out-of-domain users, tags, resources and tag assignments.
LoadReport load_assignments(std::istream& in, Dataset& dataset,
                            const IngestOptions& options = {});

// Adds blogroll edges between in-domain users.
LoadReport load_blogroll(std::istream& in, Dataset& dataset, const IngestOptions& options = {});

// Writers emit records in insertion order, so loading their output into a
// fresh dataset in the order posts, blogroll, assignments reproduces every
// handle.
void write_posts(std::ostream& out, const Dataset& dataset);
void write_blogroll(std::ostream& out, const Dataset& dataset);
void write_assignments(std::ostream& out, const Dataset& dataset,
                       std::span<const TagAssignment> relation,
                       const IngestOptions& options = {});

// Label of an out-of-domain user with the disjointness prefix removed.
std::string external_user_label(const Dataset& dataset, UserId user,
                                 const IngestOptions& options = {});

}  // namespace osn
