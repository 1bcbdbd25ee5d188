#pragma once

// Cross-site enrichment: out-of-domain tags are projected onto in-domain
// users through resources both sites share,
//
//   Y = { (u_b, t_l, r_b) | (u_b, r_b) in B, (u_l, t_l, r_l) in L, r_b = r_l }.

#include <cstddef>
#include <span>
#include <vector>

#include "osn/core.h"

namespace osn {

struct EnrichedRelation {
  // Sorted by (user, tag, resource), no duplicates.
  std::vector<TagAssignment> assignments;

  std::size_t joined_resources = 0;               // |R_B ∩ R_L|
  std::size_t unmatched_in_domain_resources = 0;  // |R_B \ R_L|
  std::size_t unmatched_out_domain_resources = 0; // |R_L \ R_B|
  std::size_t out_domain_assignments = 0;         // |L|
  std::size_t out_domain_distinct_tags = 0;
};

// Hash join keyed on resource. The result does not depend on input order.
EnrichedRelation enrich(std::span<const PostTuple> posts,
                        std::span<const TagAssignment> out_assignments);

}  // namespace osn
