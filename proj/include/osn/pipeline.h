#pragma once

// File-level pipeline stages. Each stage reads the raw inputs named in the
// RunConfig and/or earlier stage outputs from the output directory, and
// writes its own outputs there. Given identical inputs every stage writes
// byte-identical files.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "osn/core.h"
#include "osn/evaluate.h"
#include "osn/ingest.h"
#include "osn/profiles.h"
#include "osn/similarity.h"

namespace osn {

namespace fs = std::filesystem;

// Raised for anything the user must fix: bad configuration, missing or
// inconsistent inputs. The message names the offending field or path.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace files {
inline constexpr const char* kEnriched = "enriched.jsonl";
inline constexpr const char* kEnrichReport = "enrich_report.json";
inline constexpr const char* kTrackVocabulary = "track_vocabulary.jsonl";
inline constexpr const char* kTagVocabulary = "tag_vocabulary.jsonl";
inline constexpr const char* kTrackProfiles = "track_profiles.jsonl";
inline constexpr const char* kTagProfiles = "tag_profiles.jsonl";
inline constexpr const char* kProfilesReport = "profiles_report.json";
inline constexpr const char* kTrackNeighbors = "neighbors_track.jsonl";
inline constexpr const char* kTagNeighbors = "neighbors_tag.jsonl";
inline constexpr const char* kEvaluation = "evaluation.json";
inline constexpr const char* kTrackHistogram = "histogram_track.csv";
inline constexpr const char* kTagHistogram = "histogram_tag.csv";
inline constexpr const char* kGraphStats = "graph_stats.json";
inline constexpr const char* kBundle = "bundle.json";
}  // namespace files

inline constexpr int kBundleFormatVersion = 1;

struct RunConfig {
  std::optional<fs::path> posts;
  std::optional<fs::path> assignments;
  std::optional<fs::path> blogroll;
  std::optional<fs::path> dictionary;
  std::size_t tag_cap = kDefaultTagCap;
  std::size_t k = kDefaultNeighbors;
  double bin_width = kDefaultBinWidth;
  fs::path out = ".";
  bool strict = false;
  unsigned workers = 1;

  // Throws PipelineError naming the first invalid field.
  void validate() const;
};

struct LoadedInputs {
  Dataset dataset;
  LoadReport posts;
  LoadReport blogroll;
  LoadReport assignments;
};

// Loads posts, then blogroll, then assignments (whichever are configured).
// Inputs listed in `required` must be configured and exist.
LoadedInputs load_inputs(const RunConfig& config, bool need_posts, bool need_assignments,
                         bool need_blogroll);

// Profiles read back from a profiles-stage output directory. Users are
// numbered in file order, which is ascending handle order of the run that
// wrote them.
struct StoredProfiles {
  Interner<UserId> users;
  std::vector<std::string> items;  // label per vocabulary dimension
  ProfileMatrix matrix;
};

StoredProfiles read_profiles(const fs::path& profiles_file, const fs::path& vocabulary_file,
                             ProfileKind kind);
std::vector<NeighborSet> read_neighbors(const fs::path& file, const Interner<UserId>& users);

nlohmann::ordered_json neighbors_record(const NeighborSet& set, const Interner<UserId>& users);

// Stage runners; each returns a short JSON summary of what it did.
nlohmann::ordered_json run_enrich(const RunConfig& config);
nlohmann::ordered_json run_profiles(const RunConfig& config);
nlohmann::ordered_json run_similarity(const RunConfig& config);
nlohmann::ordered_json run_evaluate(const RunConfig& config);
nlohmann::ordered_json run_stats(const RunConfig& config);
nlohmann::ordered_json run_export_bundle(const RunConfig& config);
// enrich, profiles, similarity, evaluate, stats, bundle. Requires a blogroll.
nlohmann::ordered_json run_all(const RunConfig& config);

}  // namespace osn
