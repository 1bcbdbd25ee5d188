#pragma once

// Synthetic two-site datasets with planted genre structure. Each community
// is a genre with its own tracks and tags: bloggers mostly write about their
// own genre's tracks and link to bloggers of the same community, while
// listeners tag tracks of their genre with that genre's tags.
//
// Random numbers come from std::mt19937_64, whose output sequence is fixed
// by the C++ standard; uniform reals are formed from the top 53 bits of each
// draw, so a seed reproduces the same files on every conforming platform.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace osn {

struct SynthConfig {
  std::uint64_t seed = 20090601;
  std::size_t communities = 4;
  std::size_t bloggers_per_community = 25;
  std::size_t tracks_per_community = 40;
  double mention_within = 0.15;  // blogger writes about an own-genre track
  double mention_across = 0.01;  // ... about another genre's track
  std::size_t listeners = 200;   // assigned to genres round robin
  std::size_t tags_per_genre = 8;
  double genre_tag_probability = 0.02;  // per (listener, own-genre track, genre tag)
  double blogroll_within = 0.1;  // per ordered same-community blogger pair
  double blogroll_random = 0.02; // per ordered blogger pair, any community

  void validate() const;  // throws std::invalid_argument naming the field
};

nlohmann::ordered_json to_json(const SynthConfig& config);
// Missing fields keep their defaults; unknown fields are rejected.
SynthConfig synth_config_from_json(const nlohmann::json& j);

struct SynthDataset {
  struct Post { std::string user, resource; };
  struct Assignment { std::string user, tag, resource; };
  struct Link { std::string source, target; };

  std::vector<Post> posts;
  std::vector<Assignment> assignments;
  std::vector<Link> blogroll;
  std::vector<std::string> dictionary;  // every generated track
  std::vector<std::string> bloggers;
};

// Every blogger gets at least one post (an own-genre track if the draws gave
// none), so all of them appear in the loaded dataset.
SynthDataset generate(const SynthConfig& config);

struct SynthFiles {
  std::filesystem::path posts, assignments, blogroll, dictionary, manifest;
};

// Writes posts.jsonl, assignments.jsonl, blogroll.jsonl, dictionary.txt and
// manifest.json into `dir` (created if missing).
SynthFiles write_synth(const SynthConfig& config, const std::filesystem::path& dir);

}  // namespace osn
