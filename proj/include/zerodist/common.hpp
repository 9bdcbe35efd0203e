#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace zerodist {

enum class Errc {
  invalid_argument = 1,
  parse,
  validation,
  range,
  data,
  io,
  budget,
  numeric,
  integrity,
};

const char* errc_name(Errc code) noexcept;

// Every failure in the library surfaces as this exception; the C API maps
// the code onto zd_status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Half-open interval [lo, hi) on the real line or the torus.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

using Box = std::vector<Interval>;

inline double box_volume(const Box& box) {
  double v = 1.0;
  for (const auto& side : box) v *= side.length();
  return v;
}

// Fractional part in [0, 1); values that round up to 1.0 wrap to 0.0.
inline double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

// Neumaier compensated summation. Order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace zerodist
