#include "zerodist/races.hpp"

#include <algorithm>
#include <cmath>

#include "zerodist/primes.hpp"
#include "zerodist/satotate.hpp"

namespace zerodist {

namespace {

constexpr int kNonnegativityGrid = 1000;

double criterion_rhs(const FourierPoly& h, std::uint64_t p) {
  const double sp = std::sqrt(static_cast<double>(p));
  return 4.0 * h.integral() / (sp * (1.0 - 1.0 / sp));
}

void require_coefficients(const LFunctionData& f, std::uint64_t X) {
  if (X > f.coefficient_limit())
    throw Error(Errc::data, "coefficients of " + f.label() + " stop at " + std::to_string(f.coefficient_limit()) +
                                ", below X = " + std::to_string(X));
}

}  // namespace

double h_value(const FormPtr& f1, const FormPtr& f2, const FourierPoly& h,
               const std::shared_ptr<const AlphaSpec>& spec) {
  if (!spec || spec->dimension() != 1) throw Error(Errc::invalid_argument, "races use a one-dimensional alpha");
  if (h.dimension() != 1) throw Error(Errc::invalid_argument, "races use a test function on T^1");
  return DensityModel(f1, spec).pair(h) - DensityModel(f2, spec).pair(h);
}

void check_race_test_function(const FourierPoly& h) {
  if (h.dimension() != 1) throw Error(Errc::invalid_argument, "races use a test function on T^1");
  double max_value = 0.0;
  for (int i = 0; i < kNonnegativityGrid; ++i) {
    const double t = static_cast<double>(i) / kNonnegativityGrid;
    const double v = h.eval(std::span(&t, 1));
    if (v < -kRealityTolerance)
      throw Error(Errc::validation, "test function is negative at t = " + std::to_string(t));
    max_value = std::max(max_value, v);
  }
  if (max_value <= kRealityTolerance) throw Error(Errc::validation, "test function vanishes identically");
}

CriterionResult winner_criterion(const LFunctionData& f1, const LFunctionData& f2, const FourierPoly& h,
                                 std::uint64_t p) {
  check_race_test_function(h);
  if (!is_prime(p)) throw Error(Errc::invalid_argument, std::to_string(p) + " is not prime");
  CriterionResult out;
  out.lhs = (f2.lambda(p) - f1.lambda(p)) * k_h(h);
  out.rhs = criterion_rhs(h, p);
  out.holds = out.lhs > out.rhs;
  return out;
}

const char* winner_name(Winner w) {
  switch (w) {
    case Winner::f1: return "f1";
    case Winner::f2: return "f2";
    case Winner::undecided: return "undecided";
  }
  return "undecided";
}

RaceReport race_census(const LFunctionData& f1, const LFunctionData& f2, const FourierPoly& h, std::uint64_t X,
                       bool keep_records) {
  check_race_test_function(h);
  require_coefficients(f1, X);
  require_coefficients(f2, X);
  const double kh = k_h(h);
  RaceReport report;
  report.X = X;
  report.equal_levels = f1.level() == f2.level();
  for (auto p : primes_up_to(X)) {
    const double diff = f2.lambda(p) - f1.lambda(p);
    RaceRecord rec{p, diff * kh, criterion_rhs(h, p), Winner::undecided};
    if (rec.lhs > rec.rhs) {
      rec.winner = Winner::f1;
      ++report.f1_wins;
    } else if (-rec.lhs > rec.rhs) {
      rec.winner = Winner::f2;
      ++report.f2_wins;
    } else {
      ++report.undecided;
    }
    ++report.primes;
    if (keep_records) report.records.push_back(rec);
  }
  return report;
}

std::uint64_t finite_prime_bound(std::uint64_t q1, std::uint64_t q2) {
  if (q2 < 1 || q1 <= q2) throw Error(Errc::invalid_argument, "finite prime bound needs q1 > q2 >= 1");
  const double target = std::log(static_cast<double>(q1) / static_cast<double>(q2));
  auto rhs = [](double p) { return 2.0 * std::log(p) / (std::sqrt(p) - 1.0); };
  if (rhs(2.0) < target) return 1;
  // rhs decreases on [2, inf); bracket the crossing, then bisect.
  double lo = 2.0, hi = 4.0;
  while (rhs(hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e18) throw Error(Errc::budget, "q1/q2 too close to 1 for the prime scan");
  }
  for (int it = 0; it < 200 && hi - lo > 0.5; ++it) {
    const double mid = (lo + hi) / 2.0;
    (rhs(mid) >= target ? lo : hi) = mid;
  }
  auto p = static_cast<std::uint64_t>(std::floor(hi));
  while (p >= 2 && !(is_prime(p) && rhs(static_cast<double>(p)) >= target)) --p;
  return p < 2 ? 1 : p;
}

LocalInequality local_sufficient(const LFunctionData& f1, const LFunctionData& f2, std::uint64_t p, double t0) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, std::to_string(p) + " is not prime");
  const double pd = static_cast<double>(p);
  const double logp = std::log(pd);
  const double shift = std::log1p(1.0 / std::sqrt(static_cast<double>(f1.level())));
  const double l1 = f1.lambda(p);
  const double l2 = f2.lambda(p);
  const double t = frac(t0);
  LocalInequality out;
  if (t == 0.25 || t == 0.75) {
    out.lhs = pd / (2.0 * logp) * shift;
    out.rhs = (l1 * l1 - l2 * l2) - 4.0 / (std::pow(pd, 1.5) * (1.0 - 1.0 / std::sqrt(pd)));
  } else {
    out.lhs = std::sqrt(pd) / (2.0 * logp) * shift;
    out.rhs = std::cos(kTwoPi * t) * (l2 - l1) - 4.0 / (std::sqrt(pd) * (1.0 - 1.0 / std::sqrt(pd)));
  }
  out.holds = out.lhs < out.rhs;
  return out;
}

LocalRaceResult local_race(const FormPtr& f1, const FormPtr& f2, const std::shared_ptr<const AlphaSpec>& spec,
                           double t0) {
  if (!spec || spec->dimension() != 1) throw Error(Errc::invalid_argument, "local races use a one-dimensional alpha");
  const double t = frac(t0);
  LocalRaceResult out;
  out.g1 = DensityModel(f1, spec).eval(std::span(&t, 1)).value;
  out.g2 = DensityModel(f2, spec).eval(std::span(&t, 1)).value;
  out.margin = (out.g1 + std::log(static_cast<double>(f1->level())) / kTwoPi) -
               (out.g2 + std::log(static_cast<double>(f2->level())) / kTwoPi);
  out.holds = out.margin > 0.0;
  // alpha = log p / 2pi exactly when the certificate is the single row (1; 1/1; p).
  const auto rows = spec->canonical_rows();
  if (rows.size() == 1 && rows[0].b == IntVector{1} && rows[0].a == 1 && rows[0].q == 1)
    out.sufficient = local_sufficient(*f1, *f2, rows[0].p, t);
  return out;
}

std::optional<std::uint64_t> local_race_search(const LFunctionData& f1, const LFunctionData& f2, double t0,
                                               std::uint64_t Y, std::uint64_t X) {
  if (X <= Y) return std::nullopt;
  require_coefficients(f1, X - 1);
  require_coefficients(f2, X - 1);
  for (auto p : primes_in_range(Y, X - 1))
    if (local_sufficient(f1, f2, p, t0).holds) return p;
  return std::nullopt;
}

std::vector<Interval> h_bins(double kh, int G) {
  if (G < 1) throw Error(Errc::invalid_argument, "bin count must be >= 1");
  const double scale = 2.0 * std::abs(kh) / kPi;
  std::vector<Interval> out;
  for (int i = 0; i < G; ++i)
    out.push_back({scale * (-4.0 + 8.0 * i / G), scale * (-4.0 + 8.0 * (i + 1) / G)});
  return out;
}

HDistribution h_distribution(const LFunctionData& f1, const LFunctionData& f2, const FourierPoly& h, double X,
                             const std::vector<Interval>& intervals) {
  check_race_test_function(h);
  const double kh = k_h(h);
  if (kh == 0.0) throw Error(Errc::invalid_argument, "k_h must be nonzero");
  if (!(X > std::exp(std::numbers::e))) throw Error(Errc::range, "X must exceed e^e");
  HDistribution out;
  out.X = X;
  out.k_h = kh;
  const double logx = std::log(X);
  out.epsilon = epsilon_from_log(logx);
  out.window_lo = static_cast<std::uint64_t>(std::ceil((1.0 - out.epsilon) * X));
  out.window_hi = static_cast<std::uint64_t>(std::floor(X));
  require_coefficients(f1, out.window_hi);
  require_coefficients(f2, out.window_hi);
  const auto primes = primes_in_range(out.window_lo, out.window_hi);
  if (primes.empty()) throw Error(Errc::range, "the eps_X window around X contains no primes");
  out.primes = primes.size();
  std::vector<double> values;
  values.reserve(primes.size());
  const double scale = std::sqrt(X) / logx * 2.0 * kh / kPi;
  for (auto p : primes) {
    const double pd = static_cast<double>(p);
    values.push_back(scale * std::log(pd) * (f2.lambda(p) - f1.lambda(p)) / std::sqrt(pd));
  }
  const double to_nu = kPi / (2.0 * kh);
  for (const auto& I : intervals) {
    HBin bin;
    bin.scaled = I;
    std::uint64_t hits = 0;
    for (double v : values)
      if (v >= I.lo && v < I.hi) ++hits;
    bin.fraction = static_cast<double>(hits) / static_cast<double>(values.size());
    double a = to_nu * I.lo, b = to_nu * I.hi;
    if (a > b) std::swap(a, b);
    bin.nu = nu({a, b}).value;
    out.bins.push_back(bin);
  }
  return out;
}

}  // namespace zerodist
