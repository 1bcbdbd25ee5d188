#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace osn {

// Read-only HTTP front end for a bundle document:
//   GET /bundle  the bundle bytes, application/json
//   GET /        the explorer page (from `assets` when given, else a
//                minimal built-in page)
// Anything else is 404.
class BundleServer {
 public:
  BundleServer(std::string bundle, std::optional<std::filesystem::path> assets = std::nullopt);
  ~BundleServer();
  BundleServer(const BundleServer&) = delete;
  BundleServer& operator=(const BundleServer&) = delete;

  // Port 0 picks a free port. Returns false if the address cannot be bound.
  bool bind(const std::string& host, int port);
  int port() const { return port_; }
  // Blocks until stop() is called from another thread.
  void listen();
  void stop();

 private:
  std::string bundle_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
};

// Built-in explorer placeholder served at "/" when no asset directory is given.
const std::string& builtin_explorer_page();

}  // namespace osn
