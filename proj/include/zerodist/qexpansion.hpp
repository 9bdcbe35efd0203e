#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace zerodist {

using BigInt = mpz_class;

// Exact Fourier coefficients a(1..count) of a level-1 cusp form; index 0 is
// unused and holds 0.
class QExpansion {
 public:
  QExpansion() = default;
  QExpansion(std::vector<BigInt> coeffs, int weight);

  std::size_t count() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  int weight() const { return weight_; }
  const BigInt& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  // lambda(n) = a(n) / n^{(k-1)/2}, index 0 holds 0.
  std::vector<double> normalized() const;

 private:
  std::vector<BigInt> coeffs_;
  int weight_ = 0;
};

// Ramanujan tau(1..count) from q * prod (1 - q^n)^24.
QExpansion tau_expansion(std::size_t count);

// Normalized weight-16 level-1 eigenform Delta * E_4.
QExpansion weight16_eigenform(std::size_t count);

// Named generator: "delta" or "delta_e4".
QExpansion qexpansion_by_name(const std::string& name, std::size_t count);

}  // namespace zerodist
