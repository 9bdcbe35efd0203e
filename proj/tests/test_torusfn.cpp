#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "zerodist/torusfn.hpp"

using namespace zerodist;

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

double fejer_kernel(int K, double x) {
  const double s = std::sin(kPi * x);
  if (std::abs(s) < 1e-14) return K + 1.0;
  const double r = std::sin(kPi * (K + 1) * x) / s;
  return r * r / (K + 1.0);
}

// Complex evaluation over every stored mode and its mirror.
Complex full_eval(const FourierPoly& h, const std::vector<double>& t) {
  Complex s = 0.0;
  for (const auto& [m, c] : h.stored_modes()) {
    double phase = 0.0;
    bool zero = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      phase += static_cast<double>(m[i]) * t[i];
      zero = zero && m[i] == 0;
    }
    s += c * std::polar(1.0, kTwoPi * phase);
    if (!zero) s += std::conj(c) * std::polar(1.0, -kTwoPi * phase);
  }
  return s;
}

bool inside(const Box& b, const std::vector<double>& t, double grow) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    // distance on the torus from t to the side, signed by inclusion
    double lo = b[i].lo - grow, hi = b[i].hi + grow;
    double x = t[i];
    while (x < lo) x += 1.0;
    while (x >= lo + 1.0) x -= 1.0;
    if (!(x < hi)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("torusfn") {

TEST_CASE("constant and cosine evaluation") {
  auto one = FourierPoly::constant(1, 1.0);
  for (double t : {0.0, 0.3, 0.77}) CHECK(one.eval(std::vector<double>{t}) == 1.0);
  auto h = FourierPoly::constant(1, 1.0) + FourierPoly::cosine({1});
  CHECK(std::abs(h.eval(std::vector<double>{0.0}) - 2.0) < 1e-15);
  CHECK(std::abs(h.eval(std::vector<double>{0.5})) < 1e-15);
}

TEST_CASE("integrals and k_h") {
  CHECK(FourierPoly::constant(1, 1.0).integral() == 1.0);
  CHECK(FourierPoly::cosine({1}).integral() == 0.0);
  CHECK(k_h(FourierPoly::cosine({1})) == 0.5);
  CHECK(k_h(FourierPoly::constant(1, 1.0)) == 0.0);
  CHECK(k_h(FourierPoly::constant(1, 1.0) + FourierPoly::cosine({1})) == 0.5);
  CHECK(code_of([] { k_h(FourierPoly::constant(2, 1.0)); }) == Errc::invalid_argument);
  auto sb = smoothed_box({{0.2, 0.7}}, 0.05);
  CHECK(std::abs(sb.h.integral() - 0.5) < 1e-15);
}

TEST_CASE("reality is enforced on input modes") {
  using M = std::vector<std::pair<IntVector, Complex>>;
  CHECK_NOTHROW(FourierPoly::from_modes(1, M{{{1}, {0.5, 0.25}}, {{-1}, {0.5, -0.25}}}));
  CHECK(code_of([] { FourierPoly::from_modes(1, M{{{1}, {0.5, 0.25}}, {{-1}, {0.5, 0.25}}}); }) ==
        Errc::validation);
  CHECK(code_of([] { FourierPoly::from_modes(1, M{{{0}, {1.0, 0.1}}}); }) == Errc::validation);
  CHECK(code_of([] { FourierPoly::from_modes(2, M{{{1}, {1.0, 0.0}}}); }) != Errc{});
  auto h = FourierPoly::from_modes(1, M{{{-2}, {0.3, 0.4}}});
  CHECK(h.coefficient({2}) == Complex(0.3, -0.4));
  CHECK(h.coefficient({-2}) == Complex(0.3, 0.4));
}

TEST_CASE("evaluation of a real polynomial has no imaginary part") {
  auto sb = smoothed_box({{0.1, 0.45}, {0.3, 0.9}}, 0.1, 12.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> t{u(rng), u(rng)};
    auto z = full_eval(sb.h, t);
    CHECK(std::abs(z.imag()) < 1e-12);
    CHECK(std::abs(z.real() - sb.h.eval(t)) < 1e-12);
  }
}

TEST_CASE("smoothed box at its centre equals the Fejer convolution integral") {
  const Interval side{0.2, 0.6};
  const double eps = 0.1;
  auto sb = smoothed_box({side}, eps, 20.0);
  CHECK(sb.fejer_order == 9);
  CHECK(sb.dropped_l1 == 0.0);
  const double c = 0.4;
  double oracle = testsupport::gauss_legendre([&](double y) { return fejer_kernel(9, c - y); }, side.lo,
                                              side.hi, 400);
  CHECK(std::abs(sb.h.eval(std::vector<double>{c}) - oracle) < 1e-10);
}

TEST_CASE("full torus box is identically one") {
  for (double eps : {0.3, 0.05}) {
    auto sb = smoothed_box({{0.0, 1.0}, {0.25, 1.25}}, eps, 20.0);
    CHECK(sb.h.mode_count() == 1);
    CHECK(sb.h.eval(std::vector<double>{0.13, 0.71}) == 1.0);
  }
}

TEST_CASE("half-interval coefficient has modulus 1/pi") {
  const Interval side{0.0, 0.5};
  auto c1 = interval_coefficient(1, side);
  CHECK(std::abs(std::abs(c1) - 1.0 / kPi) < 1e-15);
  double re = testsupport::gauss_legendre([](double x) { return std::cos(kTwoPi * x); }, 0.0, 0.5, 50);
  double im = testsupport::gauss_legendre([](double x) { return -std::sin(kTwoPi * x); }, 0.0, 0.5, 50);
  CHECK(std::abs(c1.real() - re) < 1e-14);
  CHECK(std::abs(c1.imag() - im) < 1e-14);
  auto sb = smoothed_box({side}, 0.1);
  CHECK(sb.h.coefficient({0}).real() == 0.5);
}

TEST_CASE("smoothed box argument checks") {
  CHECK(code_of([] { smoothed_box({{0.0, 0.1}}, 0.06); }) == Errc::invalid_argument);
  CHECK(code_of([] { smoothed_box({{0.0, 0.5}}, 0.0); }) == Errc::invalid_argument);
  CHECK(code_of([] { smoothed_box({}, 0.1); }) == Errc::invalid_argument);
  CHECK(code_of([] { smoothed_box({{0.0, 0.5}, {0.0, 0.5}, {0.0, 0.5}, {0.0, 0.5}}, 0.001); }) == Errc::budget);
}

TEST_CASE("Parseval on a 2048-point grid") {
  auto sb = smoothed_box({{0.15, 0.55}}, 0.05, 20.0);
  double s = 0.0;
  for (int i = 0; i < 2048; ++i) {
    double v = sb.h.eval(std::vector<double>{i / 2048.0});
    s += v * v;
  }
  CHECK(std::abs(s / 2048.0 - sb.h.l2_norm_squared()) < 1e-12);

  auto h2 = FourierPoly::constant(2, 0.5) + FourierPoly::cosine({1, 2}, 0.7) + FourierPoly::cosine({3, -1}, 0.2);
  double s2 = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      double v = h2.eval(std::vector<double>{i / 64.0, j / 64.0});
      s2 += v * v;
    }
  CHECK(std::abs(s2 / 4096.0 - h2.l2_norm_squared()) < 1e-12);
  CHECK(std::abs(h2.l2_norm_squared() - (0.25 + 2 * 0.35 * 0.35 + 2 * 0.1 * 0.1)) < 1e-15);
}

TEST_CASE("smoothed box is sandwiched between shrunk and grown indicators") {
  for (double J : {20.0, 6.0}) {
    const Box b{{0.2, 0.6}};
    const double eps = 0.05;
    auto sb = smoothed_box(b, eps, J);
    const double slack = sb.sandwich_slack();
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> t{(i + 0.5) / 1000.0};
      double v = sb.h.eval(t);
      double lower = (inside({{b[0].lo + eps, b[0].hi - eps}}, t, 0.0) ? 1.0 : 0.0) - slack;
      double upper = (inside(b, t, eps) ? 1.0 : 0.0) + slack;
      REQUIRE(v >= lower - 1e-12);
      REQUIRE(v <= upper + 1e-12);
    }
  }
  const Box b2{{0.1, 0.6}, {0.5, 1.2}};
  auto sb2 = smoothed_box(b2, 0.1, 10.0);
  const double slack2 = sb2.sandwich_slack();
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) {
      std::vector<double> t{(i + 0.5) / 40.0, (j + 0.5) / 40.0};
      double v = sb2.h.eval(t);
      double lower = (inside({{0.2, 0.5}, {0.6, 1.1}}, t, 0.0) ? 1.0 : 0.0) - slack2;
      double upper = (inside(b2, t, 0.1) ? 1.0 : 0.0) + slack2;
      REQUIRE(v >= lower - 1e-12);
      REQUIRE(v <= upper + 1e-12);
    }
}

TEST_CASE("smoothed box coefficients are bounded by the Fejer-weighted box transform") {
  const Box b{{0.1, 0.4}, {0.3, 0.8}};
  auto sb = smoothed_box(b, 0.1, 20.0);
  for (const auto& [m, c] : sb.h.stored_modes()) {
    double bound = 1.0;
    for (std::size_t i = 0; i < 2; ++i) {
      bound *= fejer_weight(sb.fejer_order, m[i]) *
               (m[i] == 0 ? b[i].length() : 1.0 / (kPi * std::abs(static_cast<double>(m[i]))));
    }
    CHECK(std::abs(c) <= bound + 1e-15);
  }
}

TEST_CASE("JSON round trip and norms") {
  auto h = FourierPoly::constant(1, 1.0) + FourierPoly::cosine({1}) + FourierPoly::cosine({3}, -0.25);
  auto back = parse_fourier_json(fourier_to_json(h));
  CHECK(back.stored_modes() == h.stored_modes());
  CHECK(h.max_norm2() == 3.0);
  CHECK(h.l1_norm() == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(h.mode_count() == 5);
  CHECK(h.scaled(2.0).integral() == 2.0);
  CHECK(code_of([] { parse_fourier_json("[1,2"); }) == Errc::parse);
}

}
