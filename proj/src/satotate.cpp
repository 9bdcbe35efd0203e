#include "zerodist/satotate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "zerodist/primes.hpp"

namespace zerodist {

double st_density(double t) {
  if (t <= -2.0 || t >= 2.0) return 0.0;
  return std::sqrt(4.0 - t * t) / kTwoPi;
}

double st_cdf_primitive(double t) {
  t = std::clamp(t, -2.0, 2.0);
  return (t * std::sqrt(std::max(0.0, 4.0 - t * t)) / 2.0 + 2.0 * std::asin(t / 2.0)) / kTwoPi;
}

double mu_st(Interval I) {
  const double lo = std::clamp(I.lo, -2.0, 2.0);
  const double hi = std::clamp(I.hi, -2.0, 2.0);
  if (hi <= lo) return 0.0;
  return st_cdf_primitive(hi) - st_cdf_primitive(lo);
}

NuResult nu(Interval I, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  const double lo = std::clamp(I.lo, -4.0, 4.0);
  const double hi = std::clamp(I.hi, -4.0, 4.0);
  if (hi <= lo) return {0.0, 0.0};
  // x = 2 sin(phi): rho(x) dx = (2/pi) cos^2(phi) dphi.
  auto integrand = [&](double phi) {
    const double x = 2.0 * std::sin(phi);
    const double c = std::cos(phi);
    return 2.0 / kPi * c * c * mu_st({x - hi, x - lo});
  };
  // Split where x - lo or x - hi crosses +-2.
  std::vector<double> cuts{-kPi / 2.0, kPi / 2.0};
  for (double b : {lo - 2.0, lo + 2.0, hi - 2.0, hi + 2.0})
    if (b > -2.0 && b < 2.0) cuts.push_back(std::asin(b / 2.0));
  std::sort(cuts.begin(), cuts.end());
  NuResult out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    double err = 0.0;
    out.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, cuts[i], cuts[i + 1], 20, tol / 10.0, &err);
    out.error += err;
  }
  if (out.error > tol)
    throw Error(Errc::numeric, "nu quadrature reached only " + std::to_string(out.error));
  return out;
}

std::array<double, 3> st_quartiles() {
  std::array<double, 3> q{};
  for (int k = 1; k <= 3; ++k) {
    const double target = k / 4.0;
    auto fn = [&](double t) { return mu_st({-2.0, t}) - target; };
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(fn, -2.0, 2.0, boost::math::tools::eps_tolerance<double>(52),
                                                    iters);
    q[static_cast<std::size_t>(k - 1)] = (a + b) / 2.0;
  }
  q[1] = 0.0;
  return q;
}

std::array<Interval, 4> st_quartile_intervals() {
  const auto q = st_quartiles();
  return {Interval{-2.0, q[0]}, Interval{q[0], q[1]}, Interval{q[1], q[2]}, Interval{q[2], 2.0}};
}

namespace {

bool contains(const Interval& I, double x) {
  if (x < I.lo) return false;
  return x < I.hi || (I.hi >= 2.0 && x <= I.hi);
}

}  // namespace

JointCount empirical_joint(const LFunctionData& f1, const LFunctionData& f2, double X, Interval I1, Interval I2) {
  if (!(X >= 2.0)) throw Error(Errc::invalid_argument, "X must be at least 2");
  const auto limit = static_cast<std::uint64_t>(std::floor(X));
  if (limit > f1.coefficient_limit() || limit > f2.coefficient_limit())
    throw Error(Errc::data, "coefficient data does not reach X = " + std::to_string(limit));
  JointCount out;
  for (auto p : primes_up_to(limit)) {
    ++out.primes;
    if (contains(I1, f1.lambda(p)) && contains(I2, f2.lambda(p))) ++out.hits;
  }
  return out;
}

double effective_bound(double k1, double k2, double q1, double q2, double log_x, double c) {
  if (!(c > 0.0)) throw Error(Errc::invalid_argument, "c must be positive");
  if (!(k1 > 0 && k2 > 0 && q1 > 0 && q2 > 0)) throw Error(Errc::invalid_argument, "weights and levels must be positive");
  if (!(log_x > std::numbers::e)) throw Error(Errc::range, "X must exceed e^e");
  const double inner = std::log(k1 * k2 * q1 * q2 * log_x);
  return c * std::log(inner) / std::sqrt(std::log(log_x));
}

double epsilon_from_log(double log_x) {
  if (!(log_x >= std::numbers::e)) throw Error(Errc::range, "X must be at least e^e");
  const double l2 = std::log(log_x);
  const double l3 = std::max(0.0, std::log(l2));
  return std::pow(l3, 0.25) / std::pow(l2, 0.125);
}

}  // namespace zerodist
