#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "zerodist/lfunction.hpp"

namespace zerodist {

// Dirichlet inverse of lambda: mu(p) = -lambda(p), mu(p^2) = chi(p),
// mu(p^k) = 0 for k >= 3, multiplicative. Index 0 is unused.
std::vector<double> mu_table(const LFunctionData& f, std::uint64_t N);

// sum_{d | n} mu(d) lambda(n/d) for n = 1..N (index 0 unused).
std::vector<double> dirichlet_check(const LFunctionData& f, const std::vector<double>& mu);

// 1 on [0, T^{varpi/2}], 2(1 - log t / log T^varpi) up to T^varpi, 0 beyond.
double taper(double t, double T, double varpi);

class MollifierData {
 public:
  // Requires 0 < varpi < 1/4 - theta/2.
  MollifierData(std::shared_ptr<const LFunctionData> form, double T, double varpi);

  const LFunctionData& form() const { return *form_; }
  double T() const { return T_; }
  double varpi() const { return varpi_; }
  std::uint64_t length() const { return length_; }  // floor(T^varpi)
  const std::vector<double>& mu() const { return mu_; }

  // sum_{n <= T^varpi} mu(n) P(n) n^{-s}
  std::complex<double> value(std::complex<double> s) const;

  // max_{n <= min(length, 10^4)} |sum_{d|n} mu(d) lambda(n/d) - [n = 1]|
  double convolution_defect() const;

 private:
  std::shared_ptr<const LFunctionData> form_;
  double T_;
  double varpi_;
  std::uint64_t length_;
  std::vector<double> mu_;
};

}  // namespace zerodist
