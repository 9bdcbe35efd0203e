#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "zerodist/alphaspec.hpp"
#include "zerodist/density.hpp"
#include "zerodist/lfunction.hpp"
#include "zerodist/torusfn.hpp"

namespace zerodist {

using FormPtr = std::shared_ptr<const LFunctionData>;

// int h (g_1 - g_2) for a shared one-dimensional alpha.
double h_value(const FormPtr& f1, const FormPtr& f2, const FourierPoly& h,
               const std::shared_ptr<const AlphaSpec>& spec);

// Rejects h that is not one-dimensional, is negative on the 10^3 grid
// beyond rounding, or vanishes there identically.
void check_race_test_function(const FourierPoly& h);

struct CriterionResult {
  bool holds = false;
  double lhs = 0.0;  // (lambda_2(p) - lambda_1(p)) k_h
  double rhs = 0.0;  // 4 int h / (sqrt p (1 - p^{-1/2}))
};

CriterionResult winner_criterion(const LFunctionData& f1, const LFunctionData& f2, const FourierPoly& h,
                                 std::uint64_t p);

enum class Winner { f1, f2, undecided };
const char* winner_name(Winner w);

struct RaceRecord {
  std::uint64_t p = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  Winner winner = Winner::undecided;
};

struct RaceReport {
  std::uint64_t X = 0;
  std::uint64_t primes = 0;
  std::uint64_t f1_wins = 0;
  std::uint64_t f2_wins = 0;
  std::uint64_t undecided = 0;
  bool equal_levels = true;
  std::vector<RaceRecord> records;  // ascending p
  double f1_fraction() const { return primes ? static_cast<double>(f1_wins) / static_cast<double>(primes) : 0.0; }
  double f2_fraction() const { return primes ? static_cast<double>(f2_wins) / static_cast<double>(primes) : 0.0; }
  double undecided_fraction() const {
    return primes ? static_cast<double>(undecided) / static_cast<double>(primes) : 0.0;
  }
};

RaceReport race_census(const LFunctionData& f1, const LFunctionData& f2, const FourierPoly& h, std::uint64_t X,
                       bool keep_records = true);

// Largest prime p with log(q1/q2) <= 2 log p / (sqrt p - 1); 1 when no
// prime qualifies. Requires q1 > q2 >= 1.
std::uint64_t finite_prime_bound(std::uint64_t q1, std::uint64_t q2);

struct LocalInequality {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct LocalRaceResult {
  bool holds = false;
  double margin = 0.0;  // (g_1(t0) + log q1 / 2pi) - (g_2(t0) + log q2 / 2pi)
  double g1 = 0.0;
  double g2 = 0.0;
  // Sufficient prime-level inequality, evaluated when alpha = log p / 2pi.
  std::optional<LocalInequality> sufficient;
};

LocalRaceResult local_race(const FormPtr& f1, const FormPtr& f2, const std::shared_ptr<const AlphaSpec>& spec,
                           double t0);

// For t0 away from 1/4, 3/4:
//   sqrt p / (2 log p) log(1 + q1^{-1/2})
//     < cos(2 pi t0)(lambda_2(p) - lambda_1(p)) - 4 / (p^{1/2}(1 - p^{-1/2}))
// and at t0 in {1/4, 3/4}:
//   p / (2 log p) log(1 + q1^{-1/2})
//     < (lambda_1(p)^2 - lambda_2(p)^2) - 4 / (p^{3/2}(1 - p^{-1/2}))
LocalInequality local_sufficient(const LFunctionData& f1, const LFunctionData& f2, std::uint64_t p, double t0);

// First prime p in [Y, X) satisfying local_sufficient, if any.
std::optional<std::uint64_t> local_race_search(const LFunctionData& f1, const LFunctionData& f2, double t0,
                                               std::uint64_t Y, std::uint64_t X);

struct HBin {
  Interval scaled;       // interval for (sqrt X / log X) H
  double fraction = 0.0;
  double nu = 0.0;       // nu((pi / 2 k_h) I)
};

struct HDistribution {
  double X = 0.0;
  double epsilon = 0.0;
  std::uint64_t window_lo = 0;
  std::uint64_t window_hi = 0;
  std::uint64_t primes = 0;
  double k_h = 0.0;
  std::vector<HBin> bins;
};

// Scaled main term (sqrt X / log X)(2 k_h / pi) log p (lambda_2 - lambda_1) / sqrt p
// over primes in [(1 - eps_X) X, X], binned into the given intervals.
HDistribution h_distribution(const LFunctionData& f1, const LFunctionData& f2, const FourierPoly& h, double X,
                             const std::vector<Interval>& intervals);

// G equal bins covering (2 k_h / pi)[-4, 4].
std::vector<Interval> h_bins(double kh, int G);

}  // namespace zerodist
