#include "osn/serve.h"

#include <stdexcept>

#include <httplib.h>

namespace osn {

const std::string& builtin_explorer_page() {
  static const std::string page = R"(<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>Blogroll explorer</title>
<style>
body { font-family: sans-serif; margin: 2em; }
table { border-collapse: collapse; }
td, th { padding: 2px 8px; text-align: left; }
</style>
</head>
<body>
<h1>Blogroll explorer</h1>
<p id="status">Loading bundle&hellip;</p>
<table id="summary"></table>
<script>
fetch('/bundle').then(r => r.json()).then(b => {
  if (b.format_version !== 1) {
    document.getElementById('status').textContent =
        'Unsupported bundle format_version ' + b.format_version;
    return;
  }
  document.getElementById('status').textContent = 'Bundle loaded.';
  const rows = [
    ['bloggers', b.nodes.length],
    ['explicit edges', b.edges.explicit.length],
    ['optimal track edges', b.edges.optimal_track.length],
    ['optimal tag edges', b.edges.optimal_tag.length],
    ['tags', b.tag_vocabulary.length],
  ];
  const t = document.getElementById('summary');
  for (const [k, v] of rows) {
    const tr = t.insertRow();
    tr.insertCell().textContent = k;
    tr.insertCell().textContent = v;
  }
}).catch(e => {
  document.getElementById('status').textContent = 'Malformed bundle: ' + e;
});
</script>
</body>
</html>
)";
  return page;
}

BundleServer::BundleServer(std::string bundle, std::optional<std::filesystem::path> assets)
    : bundle_(std::move(bundle)), server_(std::make_unique<httplib::Server>()) {
  // The library default adds SO_REUSEPORT, which would let a second server
  // share a port that is already taken instead of failing to bind.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server_->Get("/bundle", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(bundle_, "application/json");
  });
  if (assets) {
    if (!server_->set_mount_point("/", assets->string())) {
      throw std::invalid_argument("asset directory not found: " + assets->string());
    }
  } else {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(builtin_explorer_page(), "text/html; charset=utf-8");
    });
  }
}

BundleServer::~BundleServer() { stop(); }

bool BundleServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  return port_ > 0;
}

void BundleServer::listen() { server_->listen_after_bind(); }

void BundleServer::stop() {
  if (server_) server_->stop();
}

}  // namespace osn
