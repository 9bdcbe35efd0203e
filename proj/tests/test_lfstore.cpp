#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "zerodist/lfunction.hpp"
#include "zerodist/primes.hpp"
#include "zerodist/qexpansion.hpp"

using namespace zerodist;
using testsupport::BigInt;

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

void check_hecke_exact(const QExpansion& s, std::uint64_t N) {
  const long k = s.weight();
  for (std::uint64_t m = 2; m <= N; ++m)
    for (std::uint64_t n = m + 1; m * n <= N; ++n)
      if (gcd_u64(m, n) == 1) REQUIRE(s[m * n] == s[m] * s[n]);
  for (std::uint64_t p : primes_up_to(N)) {
    BigInt pk1;
    mpz_ui_pow_ui(pk1.get_mpz_t(), p, k - 1);
    for (std::uint64_t pe = p; pe * p <= N; pe *= p) {
      BigInt prev = pe == p ? BigInt(1) : s[pe / p];
      REQUIRE(s[pe * p] == s[p] * s[pe] - pk1 * prev);
    }
  }
}

}  // namespace

TEST_SUITE("lfstore") {

TEST_CASE("parse_zeros reads ascending ordinates") {
  std::istringstream in("9.22\n13.90\n17.44");
  auto z = parse_zeros(in);
  REQUIRE(z.ordinates.size() == 3);
  CHECK(z.ordinates[0] == 9.22);
  CHECK(z.ordinates[1] == 13.90);
  CHECK(z.ordinates[2] == 17.44);
  CHECK(z.t_max == 17.44);
}

TEST_CASE("empty zero file gives an empty list and downstream stats refuse it") {
  std::istringstream in("");
  auto z = parse_zeros(in);
  CHECK(z.ordinates.empty());
  CHECK(z.t_max == 0.0);
}

TEST_CASE("malformed and unordered zero files are rejected with line numbers") {
  std::istringstream bad("9.22\nabc\n");
  try {
    parse_zeros(bad, std::nullopt, "z.txt");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("z.txt:2") != std::string::npos);
  }
  std::istringstream unordered("9.22\n9.0\n");
  CHECK(code_of([&] { parse_zeros(unordered); }) == Errc::validation);
  std::istringstream negative("-1.0\n");
  CHECK(code_of([&] { parse_zeros(negative); }) == Errc::validation);
  CHECK(code_of([] { parse_zeros(std::filesystem::path("/nonexistent/z.zeros")); }) == Errc::io);
}

TEST_CASE("comments, blank lines and the limit are honoured") {
  std::istringstream in("# header\n\n1.5\n  2.5  \n3.5\n");
  auto z = parse_zeros(in, 2);
  REQUIRE(z.ordinates.size() == 2);
  CHECK(z.t_max == 2.5);
}

TEST_CASE("write_zeros round-trips bit-exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> step(1e-6, 3.0);
  std::vector<double> g;
  double t = 0.0;
  for (int i = 0; i < 2000; ++i) g.push_back(t += step(rng));
  std::ostringstream out;
  write_zeros(out, g);
  std::istringstream in(out.str());
  auto z = parse_zeros(in);
  REQUIRE(z.ordinates.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(z.ordinates[i] == g[i]);
  std::ostringstream again;
  write_zeros(again, z.ordinates);
  CHECK(again.str() == out.str());
}

TEST_CASE("the mini fixture starts at the first zero of L(s, Delta)") {
  auto f = testsupport::delta_form();
  REQUIRE(f->zeros().size() == 10000);
  CHECK(std::abs(f->zeros()[0] - 9.22238) < 5e-6);
}

TEST_CASE("tau expansion matches the naive eta^24 product exactly") {
  CHECK(tau_expansion(1).count() == 1);
  CHECK(tau_expansion(1)[1] == 1);
  auto oracle = testsupport::naive_tau(201);
  auto s = tau_expansion(200);
  for (std::size_t n = 1; n <= 200; ++n) REQUIRE(s[n] == oracle[n]);
  CHECK(s[2] == -24);
  CHECK(s[3] == 252);
  CHECK(s[6] == -6048);
  CHECK(s[6] == s[2] * s[3]);
}

TEST_CASE("weight 16 eigenform matches the schoolbook Delta * E4 product") {
  auto oracle = testsupport::naive_delta_e4(120);
  auto s = weight16_eigenform(120);
  CHECK(s.weight() == 16);
  CHECK(s[1] == 1);
  CHECK(s[2] == 216);
  for (std::size_t n = 1; n <= 120; ++n) REQUIRE(s[n] == oracle[n]);
  CHECK(s[2] * s[3] == s[6]);
}

TEST_CASE("Hecke relations hold exactly up to 1000 for both forms") {
  check_hecke_exact(tau_expansion(1000), 1000);
  check_hecke_exact(weight16_eigenform(1000), 1000);
}

TEST_CASE("unknown generator name is rejected") {
  CHECK(code_of([] { qexpansion_by_name("eta", 10); }) == Errc::invalid_argument);
}

TEST_CASE("Satake power sums for Delta at 2") {
  auto f = testsupport::delta_form();
  auto s = satake_power_sums(*f, 2, 2);
  const double s1 = -24.0 / std::pow(2.0, 5.5);
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0] - s1) < 1e-15);
  CHECK(std::abs(s[0] - -0.5303301) < 1e-7);
  CHECK(std::abs(s[1] - -1.71875) < 1e-15);
}

TEST_CASE("power sums with lambda(p) = 0 give s_2 = -2") {
  LFunctionData f("trivial", 1, 12, {0, 1}, testsupport::trivial_lambda(100), {});
  CHECK(satake_power_sums(f, 7, 2)[1] == -2.0);
}

TEST_CASE("Satake parameters stay on the unit circle") {
  auto f = testsupport::delta_form();
  for (std::uint64_t p : primes_up_to(1000)) {
    auto s = satake_power_sums(*f, p, 30);
    for (double v : s) REQUIRE(std::abs(v) <= 2.0 + 1e-9);
  }
}

TEST_CASE("von Mangoldt coefficients of Delta") {
  auto f = testsupport::delta_form();
  CHECK(std::abs(von_mangoldt(*f, 2, 1) - -24.0 / std::pow(2.0, 5.5) * std::log(2.0)) < 1e-15);
  CHECK(std::abs(von_mangoldt(*f, 2, 1) - -0.3675972) < 5e-7);
  CHECK(std::abs(von_mangoldt(*f, 2, 2) - -1.71875 * std::log(2.0)) < 1e-14);
  CHECK(std::abs(von_mangoldt(*f, 2, 2) - -1.1913468) < 1e-7);
  CHECK(von_mangoldt_at(*f, 6) == 0.0);
  CHECK(von_mangoldt_at(*f, 1) == 0.0);
  CHECK(von_mangoldt_at(*f, 8) == von_mangoldt(*f, 2, 3));
  const double lam3 = f->lambda(3);
  CHECK(std::abs(von_mangoldt_at(*f, 243) - testsupport::oracle_lambda_pp(lam3, 3, 5)) < 1e-13);
}

TEST_CASE("form validation") {
  auto lam = testsupport::trivial_lambda(100);
  CHECK(code_of([&] { LFunctionData("x", 1, 11, {0, 1}, lam, {}); }) == Errc::validation);
  CHECK(code_of([&] { LFunctionData("x", 1, 12, {1, 8}, lam, {}); }) == Errc::validation);
  CHECK(code_of([&] { LFunctionData("x", 0, 12, {0, 1}, lam, {}); }) == Errc::validation);
  auto big = lam;
  big[3] = 2.5;
  CHECK(code_of([&] { LFunctionData("x", 1, 12, {0, 1}, big, {}); }) == Errc::validation);
  auto nonmult = lam;
  nonmult[6] = 0.5;
  CHECK(code_of([&] { LFunctionData("x", 1, 12, {0, 1}, nonmult, {}); }) == Errc::validation);
  CHECK(code_of([&] { LFunctionData("x", 1, 12, {0, 1}, lam, {3.0, 2.0}); }) == Errc::validation);
  LFunctionData ok("x", 1, 12, {7, 64}, lam, {});
  CHECK(code_of([&] { ok.lambda(101); }) == Errc::data);
}

TEST_CASE("coefficient files round-trip through write_coefficients") {
  auto dir = std::filesystem::temp_directory_path() / "zerodist_lfstore";
  std::filesystem::create_directories(dir);
  auto series = tau_expansion(500);
  {
    std::ofstream out(dir / "delta.ap");
    write_coefficients(out, series);
  }
  auto lam = load_coefficients(dir / "delta.ap", 12, 1);
  auto ref = series.normalized();
  REQUIRE(lam.size() == ref.size());
  for (std::size_t n = 1; n < lam.size(); ++n) REQUIRE(std::abs(lam[n] - ref[n]) < 1e-13);

  {
    std::ofstream out(dir / "primes.lambda");
    out << "format: lambda\n";
    out.precision(17);
    for (std::uint64_t p : primes_up_to(500)) out << p << ' ' << ref[p] << '\n';
  }
  auto filled = load_coefficients(dir / "primes.lambda", 12, 1);
  REQUIRE(filled.size() == 500);  // largest listed prime is 499
  for (std::size_t n = 1; n < filled.size(); ++n) {
    INFO("n = ", n);
    REQUIRE(std::abs(filled[n] - ref[n]) < 1e-9);
  }

  {
    std::ofstream out(dir / "gap.lambda");
    out << "format: lambda\n2 0.1\n4 0.2\n";
  }
  CHECK(code_of([&] { load_coefficients(dir / "gap.lambda", 12, 1); }) == Errc::data);
  {
    std::ofstream out(dir / "noheader.lambda");
    out << "2 0.1\n";
  }
  CHECK(code_of([&] { load_coefficients(dir / "noheader.lambda", 12, 1); }) == Errc::parse);
}

TEST_CASE("manifests resolve relative coefficient and zero paths") {
  auto dir = std::filesystem::temp_directory_path() / "zerodist_manifest";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "delta.ap");
    write_coefficients(out, tau_expansion(300));
  }
  {
    std::ofstream out(dir / "z.zeros");
    out << "9.2223793999\n13.9075498864\n";
  }
  {
    std::ofstream out(dir / "form.json");
    out << R"({"label": "D", "level": 1, "weight": 12, "coeff_path": "delta.ap", "zeros_path": "z.zeros"})";
  }
  auto f = load_form(dir / "form.json");
  CHECK(f.coefficient_limit() == 300);
  CHECK(f.zeros().size() == 2);
  CHECK(code_of([&] { load_form(dir / "form.json", LoadOptions{1000, std::nullopt}); }) == Errc::data);
  {
    std::ofstream out(dir / "broken.json");
    out << "{\"label\": ";
  }
  CHECK(code_of([&] { load_form(dir / "broken.json"); }) == Errc::parse);
}

}
