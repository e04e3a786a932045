#pragma once

// Content-addressed JSON cache. Each entry is <root>/<key>.json holding the
// payload and an FNV-1a checksum of its serialization; an entry whose
// checksum does not match is reported and treated as missing.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "genuslab/graph.hpp"
#include "genuslab/hash.hpp"

namespace genuslab {

class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path root) : root_(std::move(root)) {}

  /// GENUSLAB_CACHE if set, else .genuslab-cache/ under the working directory.
  static std::filesystem::path default_root() {
    if (const char* env = std::getenv("GENUSLAB_CACHE"); env && *env) return env;
    return ".genuslab-cache";
  }

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path_for(const std::string& key) const { return root_ / (key + ".json"); }

  std::optional<nlohmann::json> read(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto path = path_for(key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      nlohmann::json doc = nlohmann::json::parse(in);
      const auto& payload = doc.at("payload");
      if (doc.at("key").get<std::string>() != key || doc.at("checksum").get<std::string>() != fnv1a_hex(payload.dump()))
        throw Error("checksum mismatch");
      return payload;
    } catch (const std::exception& e) {
      std::cerr << "warning: cache entry " << path.string() << " is corrupted (" << e.what() << "); recomputing\n";
      return std::nullopt;
    }
  }

  void write(const std::string& key, const nlohmann::json& payload) const {
    std::lock_guard lock(mu_);
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw Error("cannot create cache directory " + root_.string() + ": " + ec.message());
    nlohmann::json doc{{"schema", 1}, {"key", key}, {"payload", payload}, {"checksum", fnv1a_hex(payload.dump())}};
    auto path = path_for(key);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw Error("cannot write cache file " + tmp.string());
      out << doc.dump() << '\n';
      if (!out) throw Error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot move cache file into place at " + path.string() + ": " + ec.message());
  }

  /// Removes the entry; true if it existed.
  bool invalidate(const std::string& key) const {
    std::lock_guard lock(mu_);
    std::error_code ec;
    bool removed = std::filesystem::remove(path_for(key), ec);
    if (ec) throw Error("cannot remove cache file " + path_for(key).string() + ": " + ec.message());
    return removed;
  }

 private:
  std::filesystem::path root_;
  mutable std::mutex mu_;
};

}  // namespace genuslab
