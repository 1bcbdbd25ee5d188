#pragma once

#include <string>
#include <string_view>

namespace osn {

// Canonicalization applied to every user, tag and resource label before it
// is interned. Two raw labels name the same entity iff their normalized
// forms are equal, which is what makes the cross-site resource join an
// exact equality join.
struct NormalizationPolicy {
  bool compatibility_normalize = true;  // Unicode NFKC
  bool case_fold = true;                // Unicode full case folding
  bool collapse_whitespace = true;      // trim ends, runs of white space -> ' '

  friend bool operator==(const NormalizationPolicy&,
                         const NormalizationPolicy&) = default;
};

// Idempotent: normalize(normalize(s)) == normalize(s). Invalid UTF-8 input
// sequences are replaced by U+FFFD.
std::string normalize(std::string_view label,
                      const NormalizationPolicy& policy = {});

}  // namespace osn
