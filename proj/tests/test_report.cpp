#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>

#include "support.hpp"
#include "zerodist/fixtures.hpp"
#include "zerodist/report.hpp"

using namespace zerodist;
namespace fs = std::filesystem;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected zerodist::Error");
  return Errc::invalid_argument;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::set<std::string> cell_fills(const std::string& svg) {
  std::set<std::string> out;
  std::regex cell(R"re(<rect x="[0-9.]+" y="[0-9.]+" width="[0-9.]+" height="[0-9.]+" fill="(#[0-9a-f]{6})"/>)re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), cell); it != std::sregex_iterator(); ++it)
    out.insert((*it)[1]);
  return out;
}

// Points ZERODIST_CACHE at a fresh directory for the lifetime of the object.
struct ScopedCache {
  fs::path dir;
  std::string previous;
  bool had_previous = false;
  ScopedCache() {
    dir = fs::temp_directory_path() / ("zerodist_cache_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    if (const char* p = std::getenv("ZERODIST_CACHE")) {
      previous = p;
      had_previous = true;
    }
    ::setenv("ZERODIST_CACHE", dir.c_str(), 1);
  }
  ~ScopedCache() {
    if (had_previous)
      ::setenv("ZERODIST_CACHE", previous.c_str(), 1);
    else
      ::unsetenv("ZERODIST_CACHE");
    fs::remove_all(dir);
  }
};

}  // namespace

TEST_SUITE("report") {

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("single-cell heatmap") {
  std::vector<double> one{3.5};
  auto svg = render_heatmap(one, 1, 1, "one");
  CHECK(cell_fills(svg).size() == 1);
  CHECK(count(svg, "fill=\"#ffffff\"/>") == 1);
  CHECK(svg.find("<svg") == 0);
}

TEST_CASE("constant grid has one colour and a single legend value") {
  std::vector<double> grid(36, 2.25);
  auto svg = render_heatmap(grid, 6, 6, "flat");
  CHECK(cell_fills(svg) == std::set<std::string>{"#ffffff"});
  CHECK(count(svg, ">2.25</text>") == 1);
}

TEST_CASE("diverging scale is centred at the mean") {
  std::vector<double> grid{-1.0, 0.0, 0.0, 1.0};
  auto svg = render_heatmap(grid, 2, 2, "a < b & c");
  auto fills = cell_fills(svg);
  CHECK(fills.count("#0000ff") == 1);
  CHECK(fills.count("#ff0000") == 1);
  CHECK(fills.count("#ffffff") == 1);
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(render_heatmap(grid, 2, 2, "x") == render_heatmap(grid, 2, 2, "x"));
  CHECK(code_of([&] { render_heatmap(grid, 3, 2, "x"); }) == Errc::invalid_argument);
}

}

TEST_SUITE("fixtures") {

TEST_CASE("registry") {
  CHECK(find_fixture("delta_mini").zero_count == 10000);
  CHECK(find_fixture("delta_200k").zero_count == 200000);
  CHECK(code_of([] { find_fixture("zeta"); }) == Errc::invalid_argument);
  for (const auto& f : fixture_registry()) CHECK(f.sha256.size() == 64);
}

TEST_CASE("sha256 of a known string") {
  auto path = fs::temp_directory_path() / "zerodist_abc.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "abc";
  }
  CHECK(sha256_file(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove(path);
}

TEST_CASE("fetching the mini fixture, then hitting the cache") {
  ScopedCache cache;
  auto first = fetch_fixture("delta_mini");
  CHECK_FALSE(first.cache_hit);
  CHECK(first.path == cache.dir / "delta_mini.zeros");
  auto second = fetch_fixture("delta_mini");
  CHECK(second.cache_hit);
  CHECK(sha256_file(second.path) == find_fixture("delta_mini").sha256);
}

TEST_CASE("corrupted fixtures are rejected") {
  ScopedCache cache;
  auto got = fetch_fixture("delta_mini");
  {
    std::ofstream out(got.path, std::ios::app);
    out << "1e9\n";
  }
  CHECK(code_of([] { fetch_fixture("delta_mini"); }) == Errc::integrity);
  fs::remove(got.path);
  auto bogus = cache.dir / "bogus.zeros";
  {
    std::ofstream out(bogus);
    out << "1.0\n";
  }
  CHECK(code_of([&] { fetch_fixture("delta_mini", bogus.string()); }) == Errc::integrity);
  CHECK_FALSE(fs::exists(got.path));
  CHECK(code_of([&] { fetch_fixture("delta_mini", (cache.dir / "missing").string()); }) == Errc::io);
}

}
