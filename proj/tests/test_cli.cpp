#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out, err;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("zerodist_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(ZERODIST_CLI) + " " + args + " 2>" + err.string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& rel) { return std::string(ZERODIST_TEST_DATA_DIR) + "/" + rel; }

std::string error_code(const Run& r) { return nlohmann::json::parse(r.err)["error"]["code"].get<std::string>(); }

const std::string delta = "--form " + data("forms/delta.json");
const std::string two_primes = "--alpha " + data("alpha/log2_log3.json");

}  // namespace

TEST_CASE("usage errors exit with 2 and a JSON message") {
  auto r = run("density --bogus 1");
  CHECK(r.status == 2);
  CHECK(error_code(r) == "usage_error");
  r = run("");
  CHECK(r.status == 2);
  r = run("density " + delta + " " + two_primes + " --out result.txt");
  CHECK(r.status == 2);
  r = run("counts " + delta + " --out svg");
  CHECK(r.status == 2);
  CHECK(r.out.empty());
}

TEST_CASE("data errors exit with 1 and carry the status name") {
  auto r = run("density --form /nonexistent/form.json " + two_primes);
  CHECK(r.status == 1);
  CHECK(error_code(r) == "io_error");
  r = run("landau " + delta + " --x 2 --T 1e7");
  CHECK(r.status == 1);
  CHECK(error_code(r) == "range_error");
}

TEST_CASE("density and histogram output is byte-identical across runs") {
  for (const std::string fmt : {"csv", "json"}) {
    const auto a = run("density " + delta + " " + two_primes + " --grid 12 --out " + fmt);
    const auto b = run("density " + delta + " " + two_primes + " --grid 12 --out " + fmt);
    REQUIRE(a.status == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
  const fs::path p1 = scratch() / "h1.json", p2 = scratch() / "h2.json";
  REQUIRE(run("hist " + delta + " " + two_primes + " --grid 10 --out " + p1.string()).status == 0);
  REQUIRE(run("hist " + delta + " " + two_primes + " --grid 10 --out " + p2.string()).status == 0);
  CHECK(slurp(p1) == slurp(p2));
  const auto j = nlohmann::json::parse(slurp(p1));
  CHECK(j["counts"].size() == 100);
  CHECK(j["total"] == 20000);
}

TEST_CASE("csv layout") {
  const auto r = run("density " + delta + " --alpha " + data("alpha/log2.json") + " --grid 4");
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,x,g");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("config files supply defaults and flags override them") {
  const fs::path cfg = scratch() / "cfg.json";
  {
    std::ofstream out(cfg);
    out << nlohmann::json{{"subcommand", "density"},
                          {"form", data("forms/delta.json")},
                          {"alpha", data("alpha/log2.json")},
                          {"grid", 5},
                          {"out", "json"}}
               .dump();
  }
  auto r = run("density --config " + cfg.string());
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["G"] == 5);
  r = run("density --config " + cfg.string() + " --grid 7");
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["G"] == 7);
  r = run("counts --config " + cfg.string());
  CHECK(r.status == 2);
  {
    std::ofstream out(cfg);
    out << R"({"unknown": 1})";
  }
  r = run("density --config " + cfg.string());
  CHECK(r.status == 2);
}

TEST_CASE("histogram heatmaps come as an empirical and a predicted file") {
  const fs::path svg = scratch() / "map.svg";
  REQUIRE(run("hist " + delta + " " + two_primes + " --grid 8 --out " + svg.string()).status == 0);
  const fs::path predicted = scratch() / "map_predicted.svg";
  REQUIRE(fs::exists(svg));
  REQUIRE(fs::exists(predicted));
  CHECK(slurp(svg).find("empirical counts") != std::string::npos);
  CHECK(slurp(predicted).find("predicted counts") != std::string::npos);
}

TEST_CASE("mollifier check and landau sums") {
  auto r = run("mollifier " + delta + " --T 1e5 --varpi 0.2 --check");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["length"] == 10);
  CHECK(j["check_passed"] == true);
  r = run("landau " + delta + " --x 2,6 --out json");
  REQUIRE(r.status == 0);
  CHECK(!nlohmann::json::parse(r.out).empty());
}

TEST_CASE("race census through the command line") {
  auto r = run("race --f1 " + data("forms/delta.json") + " --f2 " + data("forms/delta_e4.json") +
               " --X 1000 --mode census");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["primes"] == 168);
}
