#include "osn/synth.h"

#include <fstream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace osn {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

std::string blogger_label(std::size_t c, std::size_t i) { return fmt::format("blogger-{}-{:03}", c, i); }
std::string track_label(std::size_t c, std::size_t j) { return fmt::format("track-{}-{:03}", c, j); }
std::string tag_label(std::size_t c, std::size_t t) { return fmt::format("genre{}-tag{}", c, t); }

void check_probability(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(fmt::format("synth config: {} must be in [0, 1], got {}", field, p));
  }
}

std::string json_line(const nlohmann::ordered_json& j) { return j.dump() + "\n"; }

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  check_probability(mention_within, "mention_within");
  check_probability(mention_across, "mention_across");
  check_probability(genre_tag_probability, "genre_tag_probability");
  check_probability(blogroll_within, "blogroll_within");
  check_probability(blogroll_random, "blogroll_random");
  // Every blogger is guaranteed an own-genre post, so a genre needs tracks.
  if (communities == 0) throw std::invalid_argument("communities must be >= 1");
  if (tracks_per_community == 0) throw std::invalid_argument("tracks_per_community must be >= 1");
}

nlohmann::ordered_json to_json(const SynthConfig& c) {
  return {{"seed", c.seed},
          {"communities", c.communities},
          {"bloggers_per_community", c.bloggers_per_community},
          {"tracks_per_community", c.tracks_per_community},
          {"mention_within", c.mention_within},
          {"mention_across", c.mention_across},
          {"listeners", c.listeners},
          {"tags_per_genre", c.tags_per_genre},
          {"genre_tag_probability", c.genre_tag_probability},
          {"blogroll_within", c.blogroll_within},
          {"blogroll_random", c.blogroll_random}};
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("synth config must be a JSON object");
  SynthConfig c;
  auto defaults = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) throw std::invalid_argument("synth config: unknown field " + key);
  }
  auto get = [&j](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string("synth config: bad value for ") + key);
    }
  };
  get("seed", c.seed);
  get("communities", c.communities);
  get("bloggers_per_community", c.bloggers_per_community);
  get("tracks_per_community", c.tracks_per_community);
  get("mention_within", c.mention_within);
  get("mention_across", c.mention_across);
  get("listeners", c.listeners);
  get("tags_per_genre", c.tags_per_genre);
  get("genre_tag_probability", c.genre_tag_probability);
  get("blogroll_within", c.blogroll_within);
  get("blogroll_random", c.blogroll_random);
  c.validate();
  return c;
}

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthDataset out;
  const std::size_t communities = config.communities;
  const std::size_t per = config.bloggers_per_community;
  const std::size_t tracks = config.tracks_per_community;

  for (std::size_t c = 0; c < communities; ++c) {
    for (std::size_t j = 0; j < tracks; ++j) out.dictionary.push_back(track_label(c, j));
  }

  // Posts.
  for (std::size_t c = 0; c < communities; ++c) {
    for (std::size_t i = 0; i < per; ++i) {
      std::string blogger = blogger_label(c, i);
      out.bloggers.push_back(blogger);
      std::size_t mentioned = 0;
      for (std::size_t g = 0; g < communities; ++g) {
        double p = g == c ? config.mention_within : config.mention_across;
        for (std::size_t j = 0; j < tracks; ++j) {
          if (rng.bernoulli(p)) {
            out.posts.push_back({blogger, track_label(g, j)});
            ++mentioned;
          }
        }
      }
      if (mentioned == 0 && tracks > 0) {
        out.posts.push_back({blogger, track_label(c, rng.below(tracks))});
      }
    }
  }

  // Out-of-domain tagging.
  for (std::size_t l = 0; l < config.listeners && communities > 0; ++l) {
    std::size_t genre = l % communities;
    std::string listener = fmt::format("listener-{:04}", l);
    for (std::size_t j = 0; j < tracks; ++j) {
      for (std::size_t t = 0; t < config.tags_per_genre; ++t) {
        if (rng.bernoulli(config.genre_tag_probability)) {
          out.assignments.push_back({listener, tag_label(genre, t), track_label(genre, j)});
        }
      }
    }
  }

  // Explicit blogrolls.
  const std::size_t n = communities * per;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      bool same = a / per == b / per;
      bool link = same && rng.bernoulli(config.blogroll_within);
      if (rng.bernoulli(config.blogroll_random)) link = true;
      if (link) out.blogroll.push_back({out.bloggers[a], out.bloggers[b]});
    }
  }
  return out;
}

SynthFiles write_synth(const SynthConfig& config, const std::filesystem::path& dir) {
  SynthDataset data = generate(config);
  std::filesystem::create_directories(dir);
  SynthFiles files{dir / "posts.jsonl", dir / "assignments.jsonl", dir / "blogroll.jsonl",
                   dir / "dictionary.txt", dir / "manifest.json"};
  {
    auto out = open_out(files.posts);
    for (const auto& p : data.posts) {
      out << json_line({{"user", p.user}, {"resource", p.resource}});
    }
  }
  {
    auto out = open_out(files.assignments);
    for (const auto& a : data.assignments) {
      out << json_line({{"user", a.user}, {"tag", a.tag}, {"resource", a.resource}});
    }
  }
  {
    auto out = open_out(files.blogroll);
    for (const auto& e : data.blogroll) {
      out << json_line({{"source", e.source}, {"target", e.target}});
    }
  }
  {
    auto out = open_out(files.dictionary);
    for (const auto& d : data.dictionary) out << d << "\n";
  }
  {
    auto out = open_out(files.manifest);
    nlohmann::ordered_json manifest = {
        {"generator", "osn-synth"},
        {"config", to_json(config)},
        {"files", {{"posts", "posts.jsonl"},
                   {"assignments", "assignments.jsonl"},
                   {"blogroll", "blogroll.jsonl"},
                   {"dictionary", "dictionary.txt"}}},
        {"counts", {{"bloggers", data.bloggers.size()},
                    {"posts", data.posts.size()},
                    {"assignments", data.assignments.size()},
                    {"blogroll_edges", data.blogroll.size()}}}};
    out << manifest.dump(2) << "\n";
  }
  return files;
}

}  // namespace osn
