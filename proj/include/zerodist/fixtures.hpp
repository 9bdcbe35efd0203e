#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zerodist {

struct FixtureInfo {
  std::string name;
  std::string filename;
  std::string sha256;  // lowercase hex
  std::size_t zero_count = 0;
  std::string description;
};

const std::vector<FixtureInfo>& fixture_registry();
const FixtureInfo& find_fixture(const std::string& name);

// $ZERODIST_CACHE, else $HOME/.cache/zerodist, else ./.zerodist-cache.
std::filesystem::path fixture_cache_dir();

// Directory holding the vendored copies that act as the default source.
std::filesystem::path bundled_data_dir();

std::string sha256_file(const std::filesystem::path& path);

struct FetchResult {
  std::filesystem::path path;
  bool cache_hit = false;
};

// Returns a SHA-256-verified local copy of the fixture. `source` may be a
// local path or an http(s) URL; by default the bundled data directory is
// used. A cached file whose hash does not match is a hard failure.
FetchResult fetch_fixture(const std::string& name,
                          const std::optional<std::string>& source = std::nullopt);

}  // namespace zerodist
