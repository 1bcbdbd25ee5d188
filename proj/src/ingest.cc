#include "osn/ingest.h"

#include <istream>
#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

namespace osn {
namespace {

using nlohmann::json;

// Calls `fn(line_number, record)` for every data line of a JSONL stream.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(number, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(number, "malformed record: not an object");
    fn(number, record);
  }
}

const std::string& field(const json& record, const char* name, std::size_t line) {
  auto it = record.find(name);
  if (it == record.end()) throw ParseError(line, std::string("missing field '") + name + "'");
  if (!it->is_string()) throw ParseError(line, std::string("field '") + name + "' is not a string");
  return it->get_ref<const std::string&>();
}

std::string json_string(const std::string& s) { return json(s).dump(); }

}  // namespace

ResourceDictionary::ResourceDictionary(std::span<const std::string> raw_labels,
                                       const NormalizationPolicy& policy) {
  for (const std::string& raw : raw_labels) {
    std::string label = normalize(raw, policy);
    if (!label.empty()) labels_.insert(std::move(label));
  }
}

ResourceDictionary load_dictionary(std::istream& in, const NormalizationPolicy& policy) {
  std::vector<std::string> raw;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    raw.push_back(line);
  }
  return ResourceDictionary(raw, policy);
}

LoadReport load_posts(std::istream& in, Dataset& ds, const ResourceDictionary* dictionary) {
  LoadReport report;
  const NormalizationPolicy& policy = ds.users.policy();
  for_each_record(in, [&](std::size_t line, const json& record) {
    ++report.records;
    std::string user = normalize(field(record, "user", line), policy);
    std::string resource = normalize(field(record, "resource", line), policy);
    if (user.empty() || resource.empty()) {
      ++report.skipped_empty_field;
      return;
    }
    if (dictionary != nullptr && !dictionary->contains(resource)) {
      ++report.skipped_not_in_dictionary;
      return;
    }
    UserId u = ds.users.intern_normalized(std::move(user));
    ResourceId r = ds.resources.intern_normalized(std::move(resource));
    ds.in_domain_users.insert(u);
    ds.blogroll.nodes.insert(u);
    if (ds.posts.insert({u, r})) {
      ++report.added;
    } else {
      ++report.duplicates;
    }
  });
  return report;
}

LoadReport load_assignments(std::istream& in, Dataset& ds, const IngestOptions& options) {
  LoadReport report;
  const NormalizationPolicy& policy = ds.users.policy();
  for_each_record(in, [&](std::size_t line, const json& record) {
    ++report.records;
    std::string user = normalize(field(record, "user", line), policy);
    std::string tag = normalize(field(record, "tag", line), policy);
    std::string resource = normalize(field(record, "resource", line), policy);
    if (user.empty() || tag.empty() || resource.empty()) {
      ++report.skipped_empty_field;
      return;
    }
    UserId u = ds.users.intern_normalized(options.out_domain_prefix + user);
    TagId t = ds.tags.intern_normalized(std::move(tag));
    ResourceId r = ds.resources.intern_normalized(std::move(resource));
    ds.out_domain_users.insert(u);
    if (ds.assignments.insert({u, t, r})) {
      ++report.added;
    } else {
      ++report.duplicates;
    }
  });
  return report;
}

LoadReport load_blogroll(std::istream& in, Dataset& ds, const IngestOptions& options) {
  LoadReport report;
  const NormalizationPolicy& policy = ds.users.policy();
  for_each_record(in, [&](std::size_t line, const json& record) {
    ++report.records;
    std::string source = normalize(field(record, "source", line), policy);
    std::string target = normalize(field(record, "target", line), policy);
    if (source.empty() || target.empty()) {
      ++report.skipped_empty_field;
      return;
    }
    if (source == target) {
      ++report.self_loops;
      return;
    }
    std::optional<UserId> ends[2];
    std::string* labels[2] = {&source, &target};
    std::size_t unknown = 0;
    for (int i = 0; i < 2; ++i) {
      ends[i] = ds.users.find_normalized(*labels[i]);
      if (!ends[i] || !ds.in_domain_users.contains(*ends[i])) ++unknown;
    }
    if (unknown > 0 && options.strict_blogroll) {
      report.unknown_endpoints_skipped += unknown;
      return;
    }
    for (int i = 0; i < 2; ++i) {
      if (ends[i] && ds.in_domain_users.contains(*ends[i])) continue;
      if (ends[i] && ds.out_domain_users.contains(*ends[i])) {
        throw ParseError(line, "blogroll endpoint '" + *labels[i] + "' is an out-of-domain user");
      }
      ends[i] = ds.users.intern_normalized(*labels[i]);
      ds.in_domain_users.insert(*ends[i]);
      ds.blogroll.nodes.insert(*ends[i]);
      ++report.unknown_endpoints_interned;
    }
    if (ds.blogroll.edges.insert({*ends[0], *ends[1]})) {
      ++report.added;
    } else {
      ++report.duplicates;
    }
  });
  return report;
}

std::string external_user_label(const Dataset& ds, UserId user, const IngestOptions& options) {
  const std::string& label = ds.users.label(user);
  if (ds.out_domain_users.contains(user) && label.starts_with(options.out_domain_prefix)) {
    return label.substr(options.out_domain_prefix.size());
  }
  return label;
}

void write_posts(std::ostream& out, const Dataset& ds) {
  for (const PostTuple& p : ds.posts) {
    out << "{\"user\":" << json_string(ds.users.label(p.user))
        << ",\"resource\":" << json_string(ds.resources.label(p.resource)) << "}\n";
  }
}

void write_blogroll(std::ostream& out, const Dataset& ds) {
  for (const Edge& e : ds.blogroll.edges) {
    out << "{\"source\":" << json_string(ds.users.label(e.source))
        << ",\"target\":" << json_string(ds.users.label(e.target)) << "}\n";
  }
}

void write_assignments(std::ostream& out, const Dataset& ds,
                       std::span<const TagAssignment> relation, const IngestOptions& options) {
  for (const TagAssignment& a : relation) {
    out << "{\"user\":" << json_string(external_user_label(ds, a.user, options))
        << ",\"tag\":" << json_string(ds.tags.label(a.tag))
        << ",\"resource\":" << json_string(ds.resources.label(a.resource)) << "}\n";
  }
}

}  // namespace osn
