#include "osn/pipeline.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "osn/enrich.h"
#include "osn/graphstats.h"
#include "osn/json_out.h"

namespace osn {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("cannot write " + path.string());
  out << text;
}

std::ifstream open_in(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) throw PipelineError(fmt::format("{} not found: {}", what, path.string()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError(fmt::format("cannot read {}: {}", what, path.string()));
  return in;
}

const fs::path& require(const std::optional<fs::path>& p, const char* flag) {
  if (!p) throw PipelineError(fmt::format("{} is required", flag));
  return *p;
}

// Parses one JSONL file, calling fn(line_number, record) per data line.
template <typename Fn>
void read_jsonl(const fs::path& path, const std::string& what, Fn&& fn) {
  auto in = open_in(path, what);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line.front() == '#') continue;
    try {
      fn(number, json::parse(line));
    } catch (const json::exception& e) {
      throw PipelineError(fmt::format("{}:{}: {}", path.string(), number, e.what()));
    }
  }
}

ordered_json load_report_json(const LoadReport& r) {
  return {{"records", r.records},
          {"added", r.added},
          {"duplicates", r.duplicates},
          {"skipped_empty_field", r.skipped_empty_field},
          {"skipped_not_in_dictionary", r.skipped_not_in_dictionary},
          {"self_loops", r.self_loops},
          {"unknown_endpoints_interned", r.unknown_endpoints_interned},
          {"unknown_endpoints_skipped", r.unknown_endpoints_skipped}};
}

std::string jsonl(const std::vector<ordered_json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += dump_fixed(r);
    out += '\n';
  }
  return out;
}

std::vector<UserId> in_domain(const Dataset& ds) {
  const auto& v = ds.in_domain_users.in_order();
  return {v.begin(), v.end()};
}

void write_profiles(const fs::path& dir, const Dataset& ds, const ProfileMatrix& m,
                    const char* profiles_name, const char* vocabulary_name) {
  auto item_label = [&](std::uint32_t item) -> const std::string& {
    return m.vocabulary.kind == ProfileKind::kTrack ? ds.resources.label(ResourceId{item})
                                                   : ds.tags.label(TagId{item});
  };
  std::vector<ordered_json> vocab;
  for (std::size_t i = 0; i < m.vocabulary.size(); ++i) {
    vocab.push_back({{"item", item_label(m.vocabulary.items[i])}, {"count", m.vocabulary.counts[i]}});
  }
  write_text(dir / vocabulary_name, jsonl(vocab));

  std::vector<ordered_json> rows;
  for (const UserProfile& p : m.rows) {
    ordered_json items = ordered_json::array();
    for (std::uint32_t i : p.indices) items.push_back(item_label(m.vocabulary.items[i]));
    rows.push_back({{"user", ds.users.label(p.user)}, {"kind", to_string(p.kind)}, {"items", items}});
  }
  write_text(dir / profiles_name, jsonl(rows));
}

struct Scored {
  StoredProfiles track;
  StoredProfiles tag;
};

Scored read_both_profiles(const fs::path& dir) {
  Scored s{read_profiles(dir / files::kTrackProfiles, dir / files::kTrackVocabulary,
                         ProfileKind::kTrack),
           read_profiles(dir / files::kTagProfiles, dir / files::kTagVocabulary,
                         ProfileKind::kTag)};
  if (s.track.users.labels() != s.tag.users.labels()) {
    throw PipelineError("track and tag profiles cover different users");
  }
  return s;
}

// Blogroll mapped onto the user numbering of stored profiles.
BlogrollGraph blogroll_for(const RunConfig& config, const Interner<UserId>& users) {
  Dataset ds;
  for (const std::string& label : users.labels()) {
    UserId u = ds.users.intern_normalized(label);
    ds.in_domain_users.insert(u);
    ds.blogroll.nodes.insert(u);
  }
  const fs::path& path = require(config.blogroll, "--blogroll");
  auto in = open_in(path, "blogroll");
  IngestOptions options;
  options.strict_blogroll = config.strict;
  try {
    load_blogroll(in, ds, options);
  } catch (const ParseError& e) {
    throw PipelineError(path.string() + ": " + e.what());
  }
  if (ds.users.size() != users.size()) {
    throw PipelineError(fmt::format(
        "blogroll user '{}' has no profile; rebuild profiles with the same --blogroll",
        ds.users.label(UserId{static_cast<std::uint32_t>(users.size())})));
  }
  return std::move(ds.blogroll);
}

ordered_json optional_number(const std::optional<double>& x) {
  return x ? ordered_json(*x) : ordered_json(nullptr);
}

ordered_json histogram_json(const HistogramPair& h) {
  ordered_json lower = ordered_json::array();
  for (std::size_t i = 0; i < h.explicit_rolls.frequency.size(); ++i) {
    lower.push_back(static_cast<double>(i) * h.explicit_rolls.bin_width);
  }
  return {{"bin_lower", lower},
          {"explicit_frequency", h.explicit_rolls.frequency},
          {"explicit_cumulative", h.explicit_rolls.cumulative},
          {"optimal_frequency", h.optimal_rolls.frequency},
          {"optimal_cumulative", h.optimal_rolls.cumulative}};
}

std::string histogram_csv(const HistogramPair& h) {
  std::string out =
      "bin_lower,bin_upper,explicit_frequency,explicit_cumulative,optimal_frequency,"
      "optimal_cumulative\n";
  const double w = h.explicit_rolls.bin_width;
  for (std::size_t i = 0; i < h.explicit_rolls.frequency.size(); ++i) {
    out += fmt::format("{:.6f},{:.6f},{},{},{},{}\n", static_cast<double>(i) * w,
                       static_cast<double>(i + 1) * w, h.explicit_rolls.frequency[i],
                       h.explicit_rolls.cumulative[i], h.optimal_rolls.frequency[i],
                       h.optimal_rolls.cumulative[i]);
  }
  return out;
}

ordered_json quality_json(const BlogrollQualityReport& q, const HistogramPair& h,
                          std::size_t empty_profiles) {
  return {{"avg_sim_explicit", q.avg_sim_explicit},
          {"avg_sim_optimal", q.avg_sim_optimal},
          {"improvement_percent", optional_number(q.improvement_percent)},
          {"users_with_explicit", q.users_with_explicit},
          {"users_with_optimal", q.users_with_optimal},
          {"empty_profiles", empty_profiles},
          {"users_with_overlap", q.users_with_overlap},
          {"overlap_mean", q.overlap_mean},
          {"overlap_probability", q.overlap_probability},
          {"overlap_probability_all_users", q.overlap_probability_all_users},
          {"explicit_fraction_from_half", h.explicit_rolls.fraction_from_half()},
          {"optimal_fraction_from_half", h.optimal_rolls.fraction_from_half()},
          {"histogram", histogram_json(h)}};
}

}  // namespace

void RunConfig::validate() const {
  if (k < 1) throw PipelineError("--k must be >= 1");
  if (tag_cap < 1) throw PipelineError("--tag-cap must be >= 1");
  if (workers < 1) throw PipelineError("--workers must be >= 1");
  if (!(bin_width > 0.0 && bin_width <= 1.0)) throw PipelineError("--bin-width must be in (0, 1]");
  double n = std::round(1.0 / bin_width);
  if (std::abs(n * bin_width - 1.0) > 1e-9) {
    throw PipelineError("--bin-width: 1/bin-width must be an integer");
  }
}

LoadedInputs load_inputs(const RunConfig& config, bool need_posts, bool need_assignments,
                         bool need_blogroll) {
  if (need_posts) require(config.posts, "--posts");
  if (need_assignments) require(config.assignments, "--assignments");
  if (need_blogroll) require(config.blogroll, "--blogroll");

  LoadedInputs li;
  IngestOptions options;
  options.strict_blogroll = config.strict;
  auto guarded = [](const fs::path& path, auto&& load) {
    try {
      return load();
    } catch (const ParseError& e) {
      throw PipelineError(path.string() + ": " + e.what());
    }
  };

  std::optional<ResourceDictionary> dictionary;
  if (config.dictionary) {
    auto in = open_in(*config.dictionary, "dictionary");
    dictionary = load_dictionary(in, li.dataset.resources.policy());
  }
  if (config.posts) {
    auto in = open_in(*config.posts, "posts");
    li.posts = guarded(*config.posts, [&] {
      return load_posts(in, li.dataset, dictionary ? &*dictionary : nullptr);
    });
  }
  if (config.blogroll) {
    auto in = open_in(*config.blogroll, "blogroll");
    li.blogroll = guarded(*config.blogroll, [&] { return load_blogroll(in, li.dataset, options); });
  }
  if (config.assignments) {
    auto in = open_in(*config.assignments, "assignments");
    li.assignments =
        guarded(*config.assignments, [&] { return load_assignments(in, li.dataset, options); });
  }
  auto violations = validate(li.dataset);
  if (!violations.empty()) {
    throw PipelineError("inconsistent dataset: " + violations.front().kind + ": " +
                        violations.front().detail);
  }
  return li;
}

StoredProfiles read_profiles(const fs::path& profiles_file, const fs::path& vocabulary_file,
                             ProfileKind kind) {
  StoredProfiles s;
  s.matrix.vocabulary.kind = kind;
  std::unordered_map<std::string, std::uint32_t> position;
  read_jsonl(vocabulary_file, "profile vocabulary", [&](std::size_t, const json& r) {
    auto label = r.at("item").get<std::string>();
    auto dim = static_cast<std::uint32_t>(s.items.size());
    if (!position.emplace(label, dim).second) {
      throw PipelineError("duplicate vocabulary item '" + label + "' in " + vocabulary_file.string());
    }
    s.items.push_back(label);
    s.matrix.vocabulary.items.push_back(dim);
    s.matrix.vocabulary.counts.push_back(r.at("count").get<std::size_t>());
  });
  read_jsonl(profiles_file, "profiles", [&](std::size_t line, const json& r) {
    if (profile_kind_from_string(r.at("kind").get<std::string>()) != kind) {
      throw PipelineError(fmt::format("{}:{}: unexpected profile kind", profiles_file.string(), line));
    }
    UserProfile p;
    p.user = s.users.intern_normalized(r.at("user").get<std::string>());
    if (p.user.index() + 1 != s.users.size()) {
      throw PipelineError(fmt::format("{}:{}: duplicate user", profiles_file.string(), line));
    }
    p.kind = kind;
    p.dimension = s.items.size();
    for (const auto& item : r.at("items")) {
      auto it = position.find(item.get<std::string>());
      if (it == position.end()) {
        throw PipelineError(fmt::format("{}:{}: item '{}' is not in the vocabulary",
                                        profiles_file.string(), line, item.get<std::string>()));
      }
      p.indices.push_back(it->second);
    }
    std::sort(p.indices.begin(), p.indices.end());
    p.indices.erase(std::unique(p.indices.begin(), p.indices.end()), p.indices.end());
    s.matrix.rows.push_back(std::move(p));
  });
  return s;
}

ordered_json neighbors_record(const NeighborSet& set, const Interner<UserId>& users) {
  ordered_json members = ordered_json::array();
  for (const Neighbor& m : set.members) {
    members.push_back({{"label", users.label(m.user)}, {"score", m.score}});
  }
  return {{"user", users.label(set.owner)}, {"members", members}};
}

std::vector<NeighborSet> read_neighbors(const fs::path& file, const Interner<UserId>& users) {
  std::vector<NeighborSet> out;
  auto lookup = [&](const std::string& label, std::size_t line) {
    auto id = users.find_normalized(label);
    if (!id) {
      throw PipelineError(fmt::format("{}:{}: unknown user '{}'", file.string(), line, label));
    }
    return *id;
  };
  read_jsonl(file, "similarity output", [&](std::size_t line, const json& r) {
    NeighborSet set{lookup(r.at("user").get<std::string>(), line), {}};
    for (const auto& m : r.at("members")) {
      set.members.push_back({lookup(m.at("label").get<std::string>(), line),
                             m.at("score").get<double>()});
    }
    out.push_back(std::move(set));
  });
  if (out.size() != users.size()) {
    throw PipelineError(file.string() + ": neighbor sets do not cover the profiled users");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].owner.index() != i) {
      throw PipelineError(file.string() + ": neighbor sets are not in profile order");
    }
  }
  return out;
}

ordered_json run_enrich(const RunConfig& config) {
  config.validate();
  LoadedInputs li = load_inputs(config, true, true, false);
  const Dataset& ds = li.dataset;
  EnrichedRelation e = enrich(ds.posts.in_order(), ds.assignments.in_order());
  fs::create_directories(config.out);
  std::ostringstream enriched;
  write_assignments(enriched, ds, e.assignments);
  write_text(config.out / files::kEnriched, enriched.str());

  ordered_json report = {
      {"enriched_assignments", e.assignments.size()},
      {"joined_resources", e.joined_resources},
      {"unmatched_in_domain_resources", e.unmatched_in_domain_resources},
      {"unmatched_out_domain_resources", e.unmatched_out_domain_resources},
      {"out_domain_assignments", e.out_domain_assignments},
      {"out_domain_distinct_tags", e.out_domain_distinct_tags},
      {"load", {{"posts", load_report_json(li.posts)},
                {"assignments", load_report_json(li.assignments)}}}};
  write_text(config.out / files::kEnrichReport, dump_fixed(report, 2) + "\n");
  return report;
}

ordered_json run_profiles(const RunConfig& config) {
  config.validate();
  LoadedInputs li = load_inputs(config, true, true, false);
  const Dataset& ds = li.dataset;
  std::vector<UserId> users = in_domain(ds);
  EnrichedRelation e = enrich(ds.posts.in_order(), ds.assignments.in_order());
  ProfileMatrix track = build_track_profiles(users, ds.posts.in_order());
  Vocabulary tag_vocab = build_tag_vocabulary(ds.assignments.in_order(), ds.tags, config.tag_cap);
  ProfileMatrix tag = build_tag_profiles(users, e, tag_vocab);

  fs::create_directories(config.out);
  write_profiles(config.out, ds, track, files::kTrackProfiles, files::kTrackVocabulary);
  write_profiles(config.out, ds, tag, files::kTagProfiles, files::kTagVocabulary);

  ordered_json report = {{"users", users.size()},
                         {"track_vocabulary", track.vocabulary.size()},
                         {"tag_vocabulary", tag.vocabulary.size()},
                         {"tag_cap", config.tag_cap},
                         {"empty_track_profiles", track.empty_profiles()},
                         {"empty_tag_profiles", tag.empty_profiles()},
                         {"enriched_assignments", e.assignments.size()}};
  write_text(config.out / files::kProfilesReport, dump_fixed(report, 2) + "\n");
  return report;
}

ordered_json run_similarity(const RunConfig& config) {
  config.validate();
  Scored p = read_both_profiles(config.out);
  ordered_json report = {{"k", config.k}, {"users", p.track.users.size()}};
  for (const StoredProfiles* s : {&p.track, &p.tag}) {
    SimilarityMatrix m = similarity_matrix(s->matrix, config.workers);
    std::vector<ordered_json> records;
    for (const NeighborSet& set : optimal_blogrolls(m, config.k)) {
      records.push_back(neighbors_record(set, s->users));
    }
    bool is_track = s->matrix.vocabulary.kind == ProfileKind::kTrack;
    write_text(config.out / (is_track ? files::kTrackNeighbors : files::kTagNeighbors),
               jsonl(records));
    report[is_track ? "track_pairs" : "tag_pairs"] = m.pair_count();
  }
  return report;
}

ordered_json run_evaluate(const RunConfig& config) {
  config.validate();
  require(config.blogroll, "--blogroll");
  for (const char* name : {files::kTrackNeighbors, files::kTagNeighbors}) {
    if (!fs::exists(config.out / name)) {
      throw PipelineError("similarity output not found: " + (config.out / name).string() +
                          " (run the similarity stage first)");
    }
  }
  Scored p = read_both_profiles(config.out);
  BlogrollGraph roll = blogroll_for(config, p.track.users);

  ordered_json report = {
      {"k", config.k},
      {"bin_width", config.bin_width},
      {"users", p.track.users.size()},
      {"conventions",
       {{"avg_sim", "mean over users whose respective blogroll is nonempty"},
        {"overlap_mean", "mean |B ∩ B*| over users with a nonempty intersection"},
        {"overlap_probability", "users with nonempty |B ∩ B*| / users with nonempty B"},
        {"fraction_from_half", "share of users in similarity bins starting at 0.5 or above"},
        {"empty_profile_similarity", "0"}}}};

  std::vector<NeighborSet> optimal[2];
  int slot = 0;
  for (const StoredProfiles* s : {&p.track, &p.tag}) {
    bool is_track = s->matrix.vocabulary.kind == ProfileKind::kTrack;
    SimilarityMatrix m = similarity_matrix(s->matrix, config.workers);
    optimal[slot] = read_neighbors(
        config.out / (is_track ? files::kTrackNeighbors : files::kTagNeighbors), s->users);
    BlogrollQualityReport q = quality_report(roll, optimal[slot], m);
    HistogramPair h = similarity_histograms(q, config.bin_width);
    report[is_track ? "track" : "tag"] = quality_json(q, h, s->matrix.empty_profiles());
    write_text(config.out / (is_track ? files::kTrackHistogram : files::kTagHistogram),
               histogram_csv(h));
    ++slot;
  }
  IntersectionDistribution d = blogroll_agreement(optimal[0], optimal[1]);
  report["agreement"] = {{"counts", d.counts},
                         {"agreement", d.agreement},
                         {"mean_size", d.mean_size}};
  write_text(config.out / files::kEvaluation, dump_fixed(report, 2) + "\n");
  return report;
}

ordered_json run_stats(const RunConfig& config) {
  config.validate();
  LoadedInputs li = load_inputs(config, false, false, true);
  GraphReport g = graph_report(li.dataset.blogroll);
  const GraphSummary& s = g.summary;
  ordered_json components = ordered_json::array();
  for (const ComponentReport& c : g.components) {
    components.push_back({{"id", c.id},
                          {"nodes", c.nodes},
                          {"edges", c.edges},
                          {"clustering", c.clustering},
                          {"shortest_average_distance", c.distances.shortest},
                          {"longest_average_distance", c.distances.longest},
                          {"reciprocal_pairs", c.reciprocal_pairs}});
  }
  ordered_json report = {
      {"summary",
       {{"nodes", s.nodes},
        {"edges", s.edges},
        {"weak_components", s.weak_components},
        {"average_component_size", s.average_component_size},
        {"max_component_size", s.max_component_size},
        {"min_component_size", s.min_component_size},
        {"reciprocal_pairs", s.reciprocal_pairs},
        {"reciprocal_edges", s.reciprocal_edges}}},
      {"components", components},
      {"load", {{"blogroll", load_report_json(li.blogroll)}}}};
  fs::create_directories(config.out);
  write_text(config.out / files::kGraphStats, dump_fixed(report, 2) + "\n");
  return report;
}

ordered_json run_export_bundle(const RunConfig& config) {
  config.validate();
  require(config.blogroll, "--blogroll");
  Scored p = read_both_profiles(config.out);
  const Interner<UserId>& users = p.track.users;
  auto track_sets = read_neighbors(config.out / files::kTrackNeighbors, users);
  auto tag_sets = read_neighbors(config.out / files::kTagNeighbors, p.tag.users);
  auto metrics_in = open_in(config.out / files::kEvaluation, "evaluation report");
  ordered_json metrics = ordered_json::parse(metrics_in);
  BlogrollGraph roll = blogroll_for(config, users);

  ordered_json nodes = ordered_json::array();
  for (std::size_t r = 0; r < users.size(); ++r) {
    const UserProfile& tp = p.track.matrix.rows[r];
    std::vector<std::uint32_t> tracks = tp.indices;
    const auto& pop = p.track.matrix.vocabulary.counts;
    std::stable_sort(tracks.begin(), tracks.end(), [&](std::uint32_t a, std::uint32_t b) {
      return pop[a] > pop[b];
    });
    ordered_json track_list = ordered_json::array();
    for (std::uint32_t t : tracks) {
      track_list.push_back({{"label", p.track.items[t]}, {"popularity", pop[t]}});
    }
    ordered_json tag_list = ordered_json::array();
    for (std::uint32_t t : p.tag.matrix.rows[r].indices) tag_list.push_back(p.tag.items[t]);
    nodes.push_back({{"id", users.labels()[r]}, {"tracks", track_list}, {"tags", tag_list}});
  }

  auto layer = [&users](const std::vector<NeighborSet>& sets) {
    ordered_json edges = ordered_json::array();
    for (const NeighborSet& set : sets) {
      for (const Neighbor& m : set.members) {
        edges.push_back({{"source", users.label(set.owner)},
                         {"target", users.label(m.user)},
                         {"score", m.score}});
      }
    }
    return edges;
  };
  ordered_json explicit_edges = ordered_json::array();
  for (const Edge& e : roll.edges) {
    explicit_edges.push_back({{"source", users.label(e.source)}, {"target", users.label(e.target)}});
  }
  ordered_json tag_vocab = ordered_json::array();
  for (std::size_t i = 0; i < p.tag.items.size(); ++i) {
    tag_vocab.push_back({{"tag", p.tag.items[i]}, {"count", p.tag.matrix.vocabulary.counts[i]}});
  }

  ordered_json bundle = {{"format_version", kBundleFormatVersion},
                         {"k", config.k},
                         {"nodes", nodes},
                         {"edges",
                          {{"explicit", explicit_edges},
                           {"optimal_track", layer(track_sets)},
                           {"optimal_tag", layer(tag_sets)}}},
                         {"tag_vocabulary", tag_vocab},
                         {"metrics", metrics}};
  write_text(config.out / files::kBundle, dump_fixed(bundle) + "\n");
  return {{"nodes", nodes.size()},
          {"explicit_edges", explicit_edges.size()},
          {"optimal_track_edges", bundle["edges"]["optimal_track"].size()},
          {"optimal_tag_edges", bundle["edges"]["optimal_tag"].size()}};
}

ordered_json run_all(const RunConfig& config) {
  config.validate();
  require(config.blogroll, "--blogroll");
  ordered_json summary;
  summary["enrich"] = run_enrich(config);
  summary["profiles"] = run_profiles(config);
  summary["similarity"] = run_similarity(config);
  summary["evaluate"] = run_evaluate(config);
  summary["stats"] = run_stats(config);
  summary["bundle"] = run_export_bundle(config);
  return summary;
}

}  // namespace osn
