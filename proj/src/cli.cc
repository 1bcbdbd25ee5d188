#include "osn/cli.h"

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "osn/json_out.h"
#include "osn/pipeline.h"
#include "osn/serve.h"
#include "osn/synth.h"

namespace osn {
namespace {

struct Options {
  RunConfig run;
  std::string posts, assignments, blogroll, dictionary;
  std::optional<std::uint64_t> seed;
  std::string synth_config;
  std::string bundle;
  std::string assets;
  std::string host = "127.0.0.1";
  int port = 8080;

  RunConfig resolved() const {
    RunConfig c = run;
    auto set = [](std::optional<fs::path>& dst, const std::string& src) {
      if (!src.empty()) dst = src;
    };
    set(c.posts, posts);
    set(c.assignments, assignments);
    set(c.blogroll, blogroll);
    set(c.dictionary, dictionary);
    return c;
  }
};

void add_inputs(CLI::App* cmd, Options& o, bool posts, bool assignments, bool blogroll,
                bool dictionary) {
  if (posts) cmd->add_option("--posts", o.posts, "In-domain posts (JSONL: user, resource)");
  if (assignments) {
    cmd->add_option("--assignments", o.assignments,
                    "Out-of-domain tag assignments (JSONL: user, tag, resource)");
  }
  if (blogroll) cmd->add_option("--blogroll", o.blogroll, "Blogroll edges (JSONL: source, target)");
  if (dictionary) {
    cmd->add_option("--dictionary", o.dictionary, "Resource dictionary, one label per line");
  }
  if (blogroll) {
    cmd->add_flag("--strict", o.run.strict,
                  "Skip blogroll edges naming users without posts instead of adding them");
  }
}

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.run.out, "Output directory")->capture_default_str();
}

void add_k(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.run.k, "Optimal blogroll size")->capture_default_str();
}

void add_workers(CLI::App* cmd, Options& o) {
  cmd->add_option("--workers", o.run.workers, "Similarity worker threads")->capture_default_str();
}

int serve(const Options& o, std::ostream& out) {
  fs::path bundle_path = o.bundle.empty() ? o.run.out / files::kBundle : fs::path(o.bundle);
  if (!fs::exists(bundle_path)) throw PipelineError("bundle not found: " + bundle_path.string());
  std::ifstream in(bundle_path, std::ios::binary);
  std::stringstream bytes;
  bytes << in.rdbuf();
  std::optional<fs::path> assets;
  if (!o.assets.empty()) assets = o.assets;
  BundleServer server(bytes.str(), assets);
  if (!server.bind(o.host, o.port)) {
    throw PipelineError("cannot listen on " + o.host + ":" + std::to_string(o.port) +
                        " (port in use?)");
  }
  out << "serving " << bundle_path.string() << " at http://" << o.host << ":" << server.port()
      << "/" << std::endl;
  server.listen();
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-site blogger profile mining: enrichment, profiles, optimal blogrolls"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic two-site dataset");
  add_out(synth, o);
  synth->add_option("--seed", o.seed, "Random seed (default: fixture seed)");
  synth->add_option("--config", o.synth_config, "JSON generator configuration");

  auto* enrich = app.add_subcommand("enrich", "Project out-of-domain tags onto bloggers");
  add_inputs(enrich, o, true, true, false, true);
  add_out(enrich, o);

  auto* profiles = app.add_subcommand("profiles", "Build track and tag profiles");
  add_inputs(profiles, o, true, true, true, true);
  add_out(profiles, o);
  profiles->add_option("--tag-cap", o.run.tag_cap, "Tag vocabulary size")->capture_default_str();

  auto* similarity = app.add_subcommand("similarity", "Compute optimal blogrolls from profiles");
  add_out(similarity, o);
  add_k(similarity, o);
  add_workers(similarity, o);

  auto* evaluate = app.add_subcommand("evaluate", "Score explicit against optimal blogrolls");
  add_inputs(evaluate, o, false, false, true, false);
  add_out(evaluate, o);
  add_k(evaluate, o);
  add_workers(evaluate, o);
  evaluate->add_option("--bin-width", o.run.bin_width, "Similarity histogram bin width")
      ->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Blogroll network statistics");
  add_inputs(stats, o, true, false, true, true);
  add_out(stats, o);

  auto* bundle = app.add_subcommand("export-bundle", "Write the explorer bundle");
  add_inputs(bundle, o, false, false, true, false);
  add_out(bundle, o);
  add_k(bundle, o);

  auto* run = app.add_subcommand("run", "Run every stage end to end");
  add_inputs(run, o, true, true, true, true);
  add_out(run, o);
  add_k(run, o);
  add_workers(run, o);
  run->add_option("--tag-cap", o.run.tag_cap, "Tag vocabulary size")->capture_default_str();
  run->add_option("--bin-width", o.run.bin_width, "Similarity histogram bin width")
      ->capture_default_str();

  auto* serve_cmd = app.add_subcommand("serve", "Serve a bundle and the explorer over HTTP");
  add_out(serve_cmd, o);
  serve_cmd->add_option("--bundle", o.bundle, "Bundle file (default: <out>/bundle.json)");
  serve_cmd->add_option("--port", o.port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--assets", o.assets, "Directory of explorer static assets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    RunConfig config = o.resolved();
    nlohmann::ordered_json summary;
    if (*synth) {
      SynthConfig sc;
      if (!o.synth_config.empty()) {
        std::ifstream in(o.synth_config);
        if (!in) throw PipelineError("synth config not found: " + o.synth_config);
        sc = synth_config_from_json(nlohmann::json::parse(in));
      }
      if (o.seed) sc.seed = *o.seed;
      write_synth(sc, config.out);
      summary = {{"out", config.out.string()}, {"config", to_json(sc)}};
    } else if (*enrich) {
      summary = run_enrich(config);
    } else if (*profiles) {
      summary = run_profiles(config);
    } else if (*similarity) {
      summary = run_similarity(config);
    } else if (*evaluate) {
      summary = run_evaluate(config);
    } else if (*stats) {
      summary = run_stats(config);
    } else if (*bundle) {
      summary = run_export_bundle(config);
    } else if (*run) {
      summary = run_all(config);
    } else if (*serve_cmd) {
      return serve(o, out);
    }
    out << dump_fixed(summary, 2) << "\n";
    return 0;
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace osn
