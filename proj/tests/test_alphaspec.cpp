#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "support.hpp"
#include "zerodist/alphaspec.hpp"

using namespace zerodist;

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected zerodist::Error");
  return Errc::invalid_argument;
}

// Full-cube scan (both m and -m) in extended precision.
std::pair<long double, IntVector> brute_min_ratio(const std::vector<double>& alpha, int B) {
  const int n = static_cast<int>(alpha.size());
  IntVector m(n, -B);
  long double best = std::numeric_limits<long double>::infinity();
  IntVector arg;
  while (true) {
    bool zero = true;
    long double dot = 0.0L, norm2 = 0.0L;
    for (int i = 0; i < n; ++i) {
      zero = zero && m[i] == 0;
      dot += static_cast<long double>(m[i]) * alpha[i];
      norm2 += static_cast<long double>(m[i]) * m[i];
    }
    if (!zero) {
      long double r = std::fabs(dot) * std::exp(std::sqrt(norm2));
      if (r < best) {
        best = r;
        arg = m;
      }
    }
    int i = n - 1;
    while (i >= 0 && m[i] == B) m[i--] = -B;
    if (i < 0) break;
    ++m[i];
  }
  return {best, arg};
}

// Every mode with 0 < ||m||_2 <= J whose e^{2 pi m.alpha} is within 1e-9 of an
// integer and at most 1e8, by direct exponentiation.
std::set<IntVector> brute_integer_modes(const std::vector<double>& alpha, double J) {
  const int n = static_cast<int>(alpha.size());
  const int B = static_cast<int>(std::floor(J));
  std::set<IntVector> out;
  IntVector m(n, -B);
  while (true) {
    long double norm2 = 0.0L, dot = 0.0L;
    for (int i = 0; i < n; ++i) {
      norm2 += static_cast<long double>(m[i]) * m[i];
      dot += static_cast<long double>(m[i]) * alpha[i];
    }
    if (norm2 > 0 && norm2 <= static_cast<long double>(J) * J) {
      long double x = std::exp(kTwoPiL * dot);
      if (x <= 1e8L && x >= 0.5L && std::fabs(x - std::nearbyint(x)) <= 1e-9L) out.insert(m);
    }
    int i = n - 1;
    while (i >= 0 && m[i] == B) m[i--] = -B;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

std::set<IntVector> found_modes(const ModeClassification& c) {
  std::set<IntVector> s;
  for (const auto& e : c.witnessed) s.insert(e.m);
  for (const auto& e : c.ambiguous) s.insert(e.m);
  return s;
}

}  // namespace

TEST_SUITE("alphaspec") {

TEST_CASE("two-prime solve matches the closed form and back-substitutes") {
  auto s = AlphaSpec::solve({{1, 1}, {1, 2}}, {{1, 1}, {1, 1}}, {2, 3});
  const long double l2 = std::log(2.0L), l3 = std::log(3.0L);
  CHECK(std::fabs(s.alpha()[0] - (2 * l2 - l3) / kTwoPiL) < 1e-16L);
  CHECK(std::fabs(s.alpha()[1] - (l3 - l2) / kTwoPiL) < 1e-16L);
  CHECK(std::abs(s.alpha()[0] - 0.0457859) < 5e-7);
  CHECK(std::abs(s.alpha()[1] - 0.0645317) < 5e-7);
  CHECK(s.residual() <= 1e-15);
}

TEST_CASE("one-dimensional log 2 solve") {
  auto s = AlphaSpec::solve({{1}}, {{1, 1}}, {2});
  CHECK(std::fabs(s.alpha()[0] - std::log(2.0L) / kTwoPiL) < 1e-17L);
  CHECK(std::abs(s.alpha()[0] - 0.1103178) < 1e-7);
}

TEST_CASE("underdetermined solve fills free components in column order") {
  auto s = AlphaSpec::solve({{0, 1, 1}}, {{1, 1}}, {5}, {0.25, 0.125});
  CHECK(s.alpha()[0] == 0.25);
  CHECK(s.alpha()[2] == 0.125);
  CHECK(std::fabs(s.alpha()[1] + s.alpha()[2] - std::log(5.0L) / kTwoPiL) < 1e-16L);
  CHECK(code_of([] { AlphaSpec::solve({{0, 1, 1}}, {{1, 1}}, {5}, {0.25}); }) == Errc::invalid_argument);
}

TEST_CASE("certificate validation") {
  CHECK(code_of([] { AlphaSpec::solve({{2, 2}}, {{1, 1}}, {2}); }) == Errc::validation);
  CHECK(code_of([] { AlphaSpec::solve({{1, 1}, {2, 2}}, {{1, 1}, {1, 1}}, {2, 3}); }) == Errc::validation);
  CHECK(code_of([] { AlphaSpec::solve({{1, 0}, {0, 1}}, {{1, 1}, {1, 1}}, {2, 2}); }) == Errc::validation);
  CHECK(code_of([] { AlphaSpec::solve({{1}}, {{2, 4}}, {2}); }) == Errc::validation);
  CHECK(code_of([] { AlphaSpec::solve({{1}}, {{1, 1}}, {4}); }) == Errc::validation);
  CHECK(code_of([] { AlphaSpec({0.5}, {{{1}, 1, 1, 2}}); }) == Errc::validation);
  CHECK(code_of([] { AlphaSpec({}, {}); }) == Errc::validation);
}

TEST_CASE("negative exponents are canonicalized") {
  auto s = AlphaSpec::solve({{1}}, {{-1, 2}}, {3});
  CHECK(s.alpha()[0] < 0);
  auto rows = s.canonical_rows();
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].a == 1);
  CHECK(rows[0].b == IntVector{-1});
}

TEST_CASE("condition check is positive for log 2") {
  auto s = AlphaSpec::solve({{1}}, {{1, 1}}, {2});
  auto rep = verify_condition(s, 100);
  CHECK(rep.min_ratio > 0.0);
  CHECK(rep.modes_checked == 100);
}

TEST_CASE("equal components give the (1,-1) relation a zero ratio") {
  AlphaSpec s({0.3, 0.3}, {});
  auto rep = verify_condition(s, 5);
  CHECK(rep.min_ratio == 0.0);
  CHECK(rep.argmin == IntVector{1, -1});
  CHECK_FALSE(rep.plausible);
}

TEST_CASE("two-prime condition ratio at B = 50 equals the full-cube scan") {
  auto s = *testsupport::section_spec();
  auto rep = verify_condition(s, 50);
  auto [best, arg] = brute_min_ratio(s.alpha(), 50);
  CHECK(std::fabs(rep.min_ratio - best) <= 1e-9L * best);
  IntVector neg(arg.size());
  for (std::size_t i = 0; i < arg.size(); ++i) neg[i] = -arg[i];
  CHECK((rep.argmin == arg || rep.argmin == neg));
  CHECK(rep.modes_checked == (101 * 101 - 1) / 2);
}

TEST_CASE("condition enumeration respects the budget") {
  AlphaSpec s({0.1, 0.2, 0.3}, {});
  CHECK(code_of([&] { verify_condition(s, 300); }) == Errc::budget);
  CHECK(code_of([&] { verify_condition(s, 0); }) == Errc::invalid_argument);
}

TEST_CASE("integer modes of the two-prime spec carry certificate witnesses") {
  auto s = *testsupport::section_spec();
  auto c = classify_integer_modes(s, 5.0);
  auto find = [&](const IntVector& m) -> const IntegerMode* {
    for (const auto& e : c.witnessed)
      if (e.m == m) return &e;
    return nullptr;
  };
  const auto* m11 = find({1, 1});
  REQUIRE(m11);
  CHECK(m11->row == 0);
  CHECK(m11->multiple == 1);
  CHECK(std::abs(m11->x - 2.0) < 1e-12);
  const auto* m12 = find({1, 2});
  REQUIRE(m12);
  CHECK(m12->row == 1);
  CHECK(m12->multiple == 1);
  CHECK(std::abs(m12->x - 3.0) < 1e-12);
  const auto* m22 = find({2, 2});
  REQUIRE(m22);
  CHECK(m22->multiple == 2);
  CHECK(find({1, 0}) == nullptr);
  const long double x10 = std::exp(kTwoPiL * s.alpha()[0]);
  CHECK(std::fabs(x10 - std::nearbyint(x10)) > 1e-9L);
  // x = 6 and x = 12 are integers but not prime powers
  std::set<IntVector> amb;
  for (const auto& e : c.ambiguous) amb.insert(e.m);
  CHECK(amb == std::set<IntVector>{{2, 3}, {3, 4}});
  CHECK(found_modes(c) == brute_integer_modes(s.alpha(), 5.0));
}

TEST_CASE("integer modes agree with direct exponentiation at J = 20") {
  auto s = *testsupport::section_spec();
  auto c = classify_integer_modes(s, 20.0);
  CHECK(found_modes(c) == brute_integer_modes(s.alpha(), 20.0));
  for (const auto& e : c.witnessed) CHECK(e.row >= 0);
}

TEST_CASE("integer mode set does not depend on how the certificate is written") {
  auto a = AlphaSpec::solve({{1, 1}, {1, 2}}, {{1, 1}, {1, 1}}, {2, 3});
  auto b = AlphaSpec::solve({{1, 2}, {1, 1}}, {{1, 1}, {1, 1}}, {3, 2});
  auto c = AlphaSpec::solve({{-1, -1}, {1, 2}}, {{-1, 1}, {1, 1}}, {2, 3});
  auto ma = found_modes(classify_integer_modes(a, 12.0));
  CHECK(ma == found_modes(classify_integer_modes(b, 12.0)));
  CHECK(ma == found_modes(classify_integer_modes(c, 12.0)));
}

TEST_CASE("without relations no mode is integral") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    AlphaSpec s({u(rng), u(rng)}, {});
    auto c = classify_integer_modes(s, 20.0);
    CHECK(c.witnessed.empty());
    CHECK(c.ambiguous.empty());
  }
}

TEST_CASE("alpha JSON round trip") {
  auto s = *testsupport::section_spec();
  auto t = parse_alpha_json(alpha_to_json(s));
  CHECK(t.alpha() == s.alpha());
  CHECK(t.c_alpha() == s.c_alpha());
  REQUIRE(t.rows().size() == 2);
  CHECK(t.rows()[1].b == s.rows()[1].b);
  CHECK(code_of([] { parse_alpha_json("{\"n\": 1"); }) == Errc::parse);
}

}
