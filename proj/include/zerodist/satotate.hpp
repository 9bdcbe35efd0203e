#pragma once

#include <array>
#include <cstdint>

#include "zerodist/common.hpp"
#include "zerodist/lfunction.hpp"

namespace zerodist {

// Semicircle density (1/2pi) sqrt(4 - t^2) on [-2, 2].
double st_density(double t);
// Antiderivative (1/2pi)[t sqrt(4-t^2)/2 + 2 arcsin(t/2)], clamped to [-2, 2].
double st_cdf_primitive(double t);
// mu_ST(I) with I clamped to [-2, 2].
double mu_st(Interval I);

struct NuResult {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate
};

// nu(I) = mu_ST x mu_ST({(x, y) : x - y in I}), I clamped to [-4, 4].
NuResult nu(Interval I, double tol = 1e-8);

// The three interior mu_ST quartile boundaries.
std::array<double, 3> st_quartiles();
// [-2, q1], [q1, q2], [q2, q3], [q3, 2]
std::array<Interval, 4> st_quartile_intervals();

struct JointCount {
  std::uint64_t hits = 0;
  std::uint64_t primes = 0;
  double fraction() const { return primes ? static_cast<double>(hits) / static_cast<double>(primes) : 0.0; }
};

// #{p <= X : lambda_1(p) in I1, lambda_2(p) in I2} / pi(X). Intervals are
// half-open except that hi = 2 is included.
JointCount empirical_joint(const LFunctionData& f1, const LFunctionData& f2, double X, Interval I1,
                           Interval I2);

// c loglog(k1 k2 q1 q2 log X) / sqrt(loglog X); takes log X so that
// astronomically large X stay representable. Requires log X >= e.
double effective_bound(double k1, double k2, double q1, double q2, double log_x, double c = 1.0);

// (logloglog X)^{1/4} / (loglog X)^{1/8}, from log X >= e.
double epsilon_from_log(double log_x);

}  // namespace zerodist
