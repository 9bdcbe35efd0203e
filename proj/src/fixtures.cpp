#include "zerodist/fixtures.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>

#include "zerodist/common.hpp"

#ifndef ZERODIST_DATA_DIR
#define ZERODIST_DATA_DIR "data"
#endif

namespace zerodist {

namespace fs = std::filesystem;

const std::vector<FixtureInfo>& fixture_registry() {
  static const std::vector<FixtureInfo> registry = {
      {"delta_mini", "delta_mini.zeros",
       "fa75bd53bf2e13dbbeff4c67d4b72bace2bcf98867c33e80e5103cbd25bb97ac", 10000,
       "first 10^4 zeros of L(s, Delta)"},
      {"delta_200k", "delta_200k.zeros",
       "7c8b04d77c70fe90ddf383a0f3a7d7dba875546109e319f273bdcbb1ca3b8cfb", 200000,
       "first 2*10^5 zeros of L(s, Delta), up to T = 74920.77"},
  };
  return registry;
}

const FixtureInfo& find_fixture(const std::string& name) {
  for (const auto& f : fixture_registry())
    if (f.name == name) return f;
  throw Error(Errc::invalid_argument, "unknown fixture '" + name + "'");
}

fs::path fixture_cache_dir() {
  if (const char* env = std::getenv("ZERODIST_CACHE"); env && *env) return fs::path(env);
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "zerodist";
  return fs::path(".zerodist-cache");
}

fs::path bundled_data_dir() { return fs::path(ZERODIST_DATA_DIR); }

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error(Errc::io, "sha256 initialization failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

namespace {

bool is_url(const std::string& s) {
  return s.rfind("http://", 0) == 0 || s.rfind("https://", 0) == 0;
}

std::size_t write_cb(char* ptr, std::size_t size, std::size_t nmemb, void* user) {
  auto* out = static_cast<std::ofstream*>(user);
  out->write(ptr, static_cast<std::streamsize>(size * nmemb));
  return out->good() ? size * nmemb : 0;
}

void download(const std::string& url, const fs::path& dest) {
  std::ofstream out(dest, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + dest.string());
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) throw Error(Errc::io, "curl initialization failed");
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, write_cb);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &out);
  CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK)
    throw Error(Errc::io, "download of " + url + " failed: " + curl_easy_strerror(rc));
}

}  // namespace

FetchResult fetch_fixture(const std::string& name, const std::optional<std::string>& source) {
  const FixtureInfo& info = find_fixture(name);
  const fs::path cache = fixture_cache_dir();
  const fs::path target = cache / info.filename;

  if (fs::exists(target)) {
    const auto digest = sha256_file(target);
    if (digest != info.sha256)
      throw Error(Errc::integrity, "cached fixture " + target.string() + " has sha256 " + digest +
                                       ", expected " + info.sha256 + "; remove it and fetch again");
    return {target, true};
  }

  std::error_code ec;
  fs::create_directories(cache, ec);
  if (ec) throw Error(Errc::io, "cannot create cache directory " + cache.string());
  const fs::path partial = target.string() + ".partial";

  const std::string from = source.value_or((bundled_data_dir() / "zeros" / info.filename).string());
  if (is_url(from)) {
    download(from, partial);
  } else {
    fs::copy_file(from, partial, fs::copy_options::overwrite_existing, ec);
    if (ec) throw Error(Errc::io, "cannot copy fixture from " + from + ": " + ec.message());
  }
  const auto digest = sha256_file(partial);
  if (digest != info.sha256) {
    fs::remove(partial, ec);
    throw Error(Errc::integrity, "fixture '" + name + "' from " + from + " has sha256 " + digest +
                                     ", expected " + info.sha256);
  }
  fs::rename(partial, target, ec);
  if (ec) throw Error(Errc::io, "cannot move fixture into cache: " + ec.message());
  return {target, false};
}

}  // namespace zerodist
