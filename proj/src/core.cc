#include "osn/core.h"

#include <fmt/format.h>

namespace osn {
namespace {

std::string user_name(const Dataset& ds, UserId u) {
  if (ds.users.contains(u)) return fmt::format("{} (#{})", ds.users.label(u), u.value);
  return fmt::format("#{}", u.value);
}

}  // namespace

std::vector<Violation> validate(const Dataset& ds) {
  std::vector<Violation> out;
  auto add = [&out](std::string kind, std::string detail) {
    out.push_back({std::move(kind), std::move(detail)});
  };

  for (UserId u : ds.in_domain_users) {
    if (!ds.users.contains(u)) add("unknown-handle", "in-domain user " + user_name(ds, u));
    if (ds.out_domain_users.contains(u)) {
      add("domain-overlap", "user " + user_name(ds, u) + " is in both domains");
    }
  }
  for (UserId u : ds.out_domain_users) {
    if (!ds.users.contains(u)) add("unknown-handle", "out-of-domain user " + user_name(ds, u));
  }

  for (const PostTuple& p : ds.posts) {
    if (!ds.in_domain_users.contains(p.user)) {
      add("post-user-domain", "post by non in-domain user " + user_name(ds, p.user));
    }
    if (!ds.resources.contains(p.resource)) {
      add("unknown-handle", fmt::format("post resource #{}", p.resource.value));
    }
  }
  for (const TagAssignment& a : ds.assignments) {
    if (!ds.out_domain_users.contains(a.user)) {
      add("assignment-user-domain",
          "assignment by non out-of-domain user " + user_name(ds, a.user));
    }
    if (!ds.tags.contains(a.tag)) add("unknown-handle", fmt::format("tag #{}", a.tag.value));
    if (!ds.resources.contains(a.resource)) {
      add("unknown-handle", fmt::format("assignment resource #{}", a.resource.value));
    }
  }

  for (UserId u : ds.blogroll.nodes) {
    if (!ds.in_domain_users.contains(u)) {
      add("blogroll-node-domain", "blogroll node " + user_name(ds, u) + " is not in-domain");
    }
  }
  for (const Edge& e : ds.blogroll.edges) {
    std::string name = user_name(ds, e.source) + " -> " + user_name(ds, e.target);
    if (e.source == e.target) add("self-loop", "edge " + name);
    if (!ds.blogroll.nodes.contains(e.source) || !ds.blogroll.nodes.contains(e.target)) {
      add("dangling-edge", "edge " + name + " has an endpoint outside the node set");
    }
  }
  return out;
}

}  // namespace osn
