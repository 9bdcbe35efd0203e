#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zerodist/alphaspec.hpp"
#include "zerodist/density.hpp"
#include "zerodist/lfunction.hpp"
#include "zerodist/torusfn.hpp"

namespace zerodist {

// Number of zeros with |gamma| <= T, both signs. Errc::range when T > T_max.
std::uint64_t count_zeros(const LFunctionData& f, double T);

// (T/pi) log(q (T / 2 pi e)^2)
double rvm_main(double q, double T);

struct ZeroCountReport {
  double T = 0.0;
  std::uint64_t n_emp = 0;
  double n_main = 0.0;
  double error = 0.0;  // n_emp - n_main
};

struct ZeroCountScan {
  std::vector<ZeroCountReport> samples;
  double c_fit = 0.0;     // max |error| / log(T + 3) over every jump of N_emp
  double t_worst = 0.0;   // T attaining c_fit
  std::uint64_t points = 0;
};

ZeroCountReport zero_count_report(const LFunctionData& f, double T);

// Scans both one-sided limits at every ordinate in [first zero, T_max];
// keeps every stride-th sample for reporting.
ZeroCountScan scan_zero_counts(const LFunctionData& f, std::size_t stride = 1000);

// Points {gamma alpha} and {-gamma alpha} for 0 < gamma <= T, flattened
// n values per point, + before - for each ordinate.
std::vector<double> fractional_parts(const LFunctionData& f, const AlphaSpec& spec, double T);

struct GridHistogram {
  int n = 0;
  int G = 0;
  std::vector<std::uint64_t> counts;  // G^n cells, first coordinate slowest
  double T = 0.0;
  std::uint64_t total = 0;
};

std::size_t cell_index(std::span<const double> point, int G);
GridHistogram grid_histogram(std::span<const double> points, int n, int G, double T = 0.0);

// vol(cell) N_T + T integral of g over the cell.
std::vector<double> predicted_cell_counts(const DensityModel& model, double n_t, double T, int G,
                                          double tol = 1e-12);

struct WeightedSum {
  double S = 0.0;
  std::uint64_t n_emp = 0;
  double pairing = 0.0;
  double residual = 0.0;  // (S - N_emp int h - T pairing) / T
};

WeightedSum weighted_sum(const DensityModel& model, const FourierPoly& h, double T);

struct LandauSum {
  double x = 0.0;
  double T = 0.0;
  double S = 0.0;             // sum over |gamma| <= T of x^{i gamma}
  std::uint64_t nearest = 0;  // closest integer to x
  double prediction = 0.0;    // -(Lambda(<x>) / (pi sqrt<x>)) sin(T d) / d, d = log(x/<x>)
  double envelope = 0.0;      // x^{1/2+theta}(log 2x + log T) + log T / (sqrt x log x)
};

LandauSum landau_sum(const LFunctionData& f, double x, double T);

inline constexpr double kDiscrepancyBudget = 2e9;

// max over grid-aligned boxes of |count / total - vol|.
double discrepancy(const GridHistogram& hist);
double discrepancy(const LFunctionData& f, const AlphaSpec& spec, double T, int G);

// (T / N) max over grid-aligned boxes of |int_B g|.
double discrepancy_lower_bound(const DensityModel& model, double n_emp, double T, int G,
                               double tol = 1e-12);

struct ZeroDensityReport {
  std::uint64_t count = 0;
  double bound = 0.0;  // T^{1 - c(sigma - 1/2)} log T
};

inline constexpr double kZeroDensityExponent = 25.0 / 128.0;

ZeroDensityReport zero_density_count(const LFunctionData& f, double sigma, double T,
                                     double c = kZeroDensityExponent);

}  // namespace zerodist
