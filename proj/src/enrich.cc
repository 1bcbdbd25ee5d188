#include "osn/enrich.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace osn {

EnrichedRelation enrich(std::span<const PostTuple> posts,
                        std::span<const TagAssignment> out_assignments) {
  EnrichedRelation result;
  result.out_domain_assignments = out_assignments.size();

  // resource -> distinct tags applied to it out of domain
  std::unordered_map<ResourceId, std::vector<TagId>> tags_by_resource;
  std::unordered_set<TagId> distinct_tags;
  for (const TagAssignment& a : out_assignments) {
    tags_by_resource[a.resource].push_back(a.tag);
    distinct_tags.insert(a.tag);
  }
  result.out_domain_distinct_tags = distinct_tags.size();
  for (auto& [resource, tags] : tags_by_resource) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  }

  std::unordered_set<ResourceId> in_resources;
  for (const PostTuple& p : posts) {
    in_resources.insert(p.resource);
    auto it = tags_by_resource.find(p.resource);
    if (it == tags_by_resource.end()) continue;
    for (TagId t : it->second) result.assignments.push_back({p.user, t, p.resource});
  }

  for (ResourceId r : in_resources) {
    if (tags_by_resource.count(r)) {
      ++result.joined_resources;
    } else {
      ++result.unmatched_in_domain_resources;
    }
  }
  result.unmatched_out_domain_resources = tags_by_resource.size() - result.joined_resources;

  auto& out = result.assignments;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return result;
}

}  // namespace osn
