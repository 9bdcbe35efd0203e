#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "zerodist/alphaspec.hpp"
#include "zerodist/fixtures.hpp"
#include "zerodist/lfunction.hpp"
#include "zerodist/qexpansion.hpp"
#include "zerodist/satotate.hpp"
#include "zerodist/torusfn.hpp"

namespace testsupport {

using zerodist::BigInt;

inline std::filesystem::path data_dir() { return std::filesystem::path(ZERODIST_TEST_DATA_DIR); }

// Coefficients of q prod_{n>=1} (1 - q^n)^24 up to q^N by repeated
// multiplication with (1 - q^n), one factor at a time.
inline std::vector<BigInt> naive_tau(std::size_t N) {
  std::vector<BigInt> p(N, 0);  // p[k] = coefficient of q^k in the product
  p[0] = 1;
  for (std::size_t n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t k = N - 1; k >= n; --k) p[k] -= p[k - n];
  std::vector<BigInt> tau(N + 1, 0);
  for (std::size_t k = 0; k < N; ++k) tau[k + 1] = p[k];
  return tau;
}

inline BigInt sigma3(std::uint64_t n) {
  BigInt s = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += BigInt(d) * d * d;
  return s;
}

// Delta * E_4 with E_4 = 1 + 240 sum sigma_3(n) q^n, schoolbook product.
inline std::vector<BigInt> naive_delta_e4(std::size_t N) {
  auto tau = naive_tau(N);
  std::vector<BigInt> e4(N + 1, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) e4[n] = 240 * sigma3(n);
  std::vector<BigInt> out(N + 1, 0);
  for (std::size_t i = 1; i <= N; ++i)
    for (std::size_t j = 0; i + j <= N; ++j) out[i + j] += tau[i] * e4[j];
  return out;
}

// Shared forms: Delta with the mini zero fixture, and Delta * E_4 without
// zeros. Built once per process.
inline std::shared_ptr<const zerodist::LFunctionData> delta_form() {
  static auto f = std::make_shared<const zerodist::LFunctionData>(
      zerodist::load_form(data_dir() / "forms" / "delta.json"));
  return f;
}

inline std::shared_ptr<const zerodist::LFunctionData> delta_e4_form() {
  static auto f = std::make_shared<const zerodist::LFunctionData>(
      zerodist::load_form(data_dir() / "forms" / "delta_e4.json"));
  return f;
}

// lambda(n) = 0 for n > 1 on a table of the given size.
inline std::vector<double> trivial_lambda(std::size_t N) {
  std::vector<double> l(N + 1, 0.0);
  l[1] = 1.0;
  return l;
}

inline std::shared_ptr<const zerodist::AlphaSpec> log_p_spec(std::uint64_t p, std::int64_t a = 1,
                                                             std::int64_t q = 1) {
  return std::make_shared<const zerodist::AlphaSpec>(zerodist::AlphaSpec::solve(
      {{1}}, {zerodist::Rational{a, q}}, {p}));
}

inline std::shared_ptr<const zerodist::AlphaSpec> section_spec() {
  return std::make_shared<const zerodist::AlphaSpec>(zerodist::load_alpha(data_dir() / "alpha" / "log2_log3.json"));
}

// Satake power sums by the two-term recursion, computed locally.
inline double oracle_lambda_pp(double lambda_p, std::uint64_t p, int m) {
  double s0 = 2.0, s1 = lambda_p;
  if (m == 0) return 0.0;
  for (int k = 2; k <= m; ++k) {
    double s2 = lambda_p * s1 - s0;
    s0 = s1;
    s1 = s2;
  }
  return s1 * std::log(static_cast<double>(p));
}

// Composite Gauss-Legendre rule on [a, b] with `panels` panels of 16 nodes.
template <class F>
double gauss_legendre(F&& f, double a, double b, int panels) {
  static const double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                              0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  static const double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                              0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  double h = (b - a) / panels, total = 0.0;
  for (int k = 0; k < panels; ++k) {
    double c = a + (k + 0.5) * h, r = 0.5 * h;
    for (int i = 0; i < 8; ++i) total += r * w[i] * (f(c - r * x[i]) + f(c + r * x[i]));
  }
  return total;
}

// Semicircle mass of [a, b] by tanh-sinh quadrature of the density.
inline double quad_mu(double a, double b) {
  a = std::max(a, -2.0);
  b = std::min(b, 2.0);
  if (b <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([](double t) { return std::sqrt(std::max(0.0, 4.0 - t * t)) / (2.0 * std::acos(-1.0)); }, a, b);
}

struct Sandwich {
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
};

// Bounds for mu_ST x mu_ST({x - y in I}) from a 400 x 400 grid of squares of
// side 0.01: the lower bound keeps squares whose difference range lies in I,
// the upper bound those whose range meets I. The estimate spreads each
// square's mass uniformly, so x - y follows a triangular law on [d - w, d + w].
inline Sandwich rectangle_sandwich(zerodist::Interval I) {
  constexpr int N = 400;
  const double w = 4.0 / N;
  std::vector<double> mass(N);
  for (int i = 0; i < N; ++i) mass[i] = zerodist::mu_st({-2.0 + i * w, -2.0 + (i + 1) * w});
  Sandwich s;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double d = (i - j) * w;
      const double lo = d - w, hi = d + w;
      const double m = mass[i] * mass[j];
      if (lo >= I.lo && hi <= I.hi) s.lower += m;
      if (hi > I.lo && lo < I.hi) s.upper += m;
      auto cdf = [&](double x) {
        const double t = std::clamp((x - lo) / w, 0.0, 2.0);
        return t <= 1.0 ? 0.5 * t * t : 1.0 - 0.5 * (2.0 - t) * (2.0 - t);
      };
      s.estimate += m * (cdf(I.hi) - cdf(I.lo));
    }
  return s;
}

// Largest |residual(t)| over t in [a, b] for the running weighted sum. Between
// consecutive ordinates S and N are constant, so the extremes sit at the
// one-sided limits at each ordinate and at the window ends.
inline double window_sup_residual(const zerodist::LFunctionData& f, const zerodist::AlphaSpec& spec,
                                  const zerodist::FourierPoly& h, double pairing, double a, double b) {
  const auto zeros = f.zeros();
  const double alpha = spec.alpha()[0];
  const double ih = h.integral();
  zerodist::CompensatedSum S;
  double N = 0.0, best = 0.0;
  auto res = [&](double t) { return std::abs((S.value() - N * ih - t * pairing) / t); };
  for (double g : zeros) {
    if (g > b) break;
    if (g >= a) best = std::max(best, res(g));
    S.add(h.eval(std::vector<double>{zerodist::frac(g * alpha)}));
    S.add(h.eval(std::vector<double>{zerodist::frac(-g * alpha)}));
    N += 2.0;
    if (g >= a) best = std::max(best, res(g));
  }
  return std::max(best, res(b));
}

}  // namespace testsupport
