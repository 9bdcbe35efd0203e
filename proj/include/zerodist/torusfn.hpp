#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zerodist/alphaspec.hpp"
#include "zerodist/common.hpp"

namespace zerodist {

using Complex = std::complex<double>;

// h(t) = sum_m c_m e^{2 pi i m.t} on T^n, real-valued. Only modes with
// m >= 0 in lexicographic order are stored; c_{-m} = conj(c_m).
class FourierPoly {
 public:
  explicit FourierPoly(int n);

  // Accepts any mix of m and -m. When both are given they must be
  // conjugate to within 1e-12; c_0 must be real to the same tolerance.
  static FourierPoly from_modes(int n, const std::vector<std::pair<IntVector, Complex>>& modes);
  static FourierPoly constant(int n, double value);
  // amplitude * cos(2 pi m.t)
  static FourierPoly cosine(const IntVector& m, double amplitude = 1.0);

  int dimension() const { return n_; }
  const std::map<IntVector, Complex>& stored_modes() const { return modes_; }
  Complex coefficient(const IntVector& m) const;

  double eval(std::span<const double> t) const;
  double integral() const;
  double max_norm2() const;                // J_max
  double l1_norm() const;                  // sum over all m of |c_m|
  double l2_norm_squared() const;          // sum over all m of |c_m|^2
  std::size_t mode_count() const;          // including mirrors

  FourierPoly operator+(const FourierPoly& other) const;
  FourierPoly scaled(double factor) const;

 private:
  void add(const IntVector& m, Complex c);

  int n_;
  std::map<IntVector, Complex> modes_;
};

inline constexpr double kRealityTolerance = 1e-12;

// int_0^1 h(t) cos(2 pi t) dt = Re c_1. Requires n = 1.
double k_h(const FourierPoly& h);

// int_u^v e^{-2 pi i c x} dx
Complex interval_coefficient(std::int64_t c, const Interval& side);

// Fejer weight 1 - |m|/(K+1), zero for |m| > K.
double fejer_weight(int K, std::int64_t m);

struct SmoothedBox {
  FourierPoly h;
  int fejer_order = 0;        // K per coordinate
  double kernel_slack = 0.0;  // n * Fejer mass outside [-eps, eps]
  double dropped_l1 = 0.0;    // l1 mass of modes cut by ||m||_2 > J
  // 1_{B shrunk by eps} - slack <= h <= 1_{B grown by eps} + slack
  double sandwich_slack() const { return kernel_slack + dropped_l1; }
};

inline constexpr double kSmoothedBoxBudget = 1e7;

// Fejer-product mollification of the indicator of B, K + 1 = ceil(1/eps),
// truncated to ||m||_2 <= J.
SmoothedBox smoothed_box(const Box& box, double eps, double J = 20.0);

// {n, modes: [{m, re, im}]}
FourierPoly parse_fourier_json(const std::string& text);
FourierPoly load_fourier(const std::string& path);
std::string fourier_to_json(const FourierPoly& h);

}  // namespace zerodist
