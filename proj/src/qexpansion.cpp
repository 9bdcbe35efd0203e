#include "zerodist/qexpansion.hpp"

#include <cmath>

#include "ntt.hpp"
#include "zerodist/common.hpp"

namespace zerodist {

using detail::NttPrime;

QExpansion::QExpansion(std::vector<BigInt> coeffs, int weight)
    : coeffs_(std::move(coeffs)), weight_(weight) {}

std::vector<double> QExpansion::normalized() const {
  std::vector<double> out(coeffs_.size(), 0.0);
  const double half_exp = (weight_ - 1) / 2.0;
  for (std::size_t n = 1; n < coeffs_.size(); ++n) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, coeffs_[n].get_mpz_t());
    // mant * 2^exp2 / n^half_exp, combined in the log domain to avoid overflow
    // for large weights.
    double scale = std::exp2(static_cast<double>(exp2) - half_exp * std::log2(static_cast<double>(n)));
    out[n] = mant * scale;
  }
  return out;
}

namespace {

// |a(n)| <= d(n) n^{(k-1)/2} <= 2 n^{k/2} for a level-1 eigenform (Deligne).
std::size_t primes_needed(std::size_t count, int weight) {
  const double bound_bits = 0.5 * weight * std::log2(static_cast<double>(count) + 1.0) + 3.0;
  double bits = 0.0;
  std::size_t k = 0;
  for (const auto& prime : detail::ntt_primes()) {
    bits += std::log2(static_cast<double>(prime.modulus));
    ++k;
    if (bits > bound_bits + 2.0) return k;
  }
  throw Error(Errc::budget, "q-expansion coefficients exceed multimodular capacity");
}


// prod_{n>=1} (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}, truncated to len.
std::vector<std::uint32_t> eta_cubed(std::size_t len, std::uint32_t mod) {
  std::vector<std::uint32_t> s(len, 0);
  for (std::uint64_t k = 0;; ++k) {
    std::uint64_t e = k * (k + 1) / 2;
    if (e >= len) break;
    std::uint64_t c = (2 * k + 1) % mod;
    s[e] = static_cast<std::uint32_t>(k % 2 == 0 ? c : (mod - c) % mod);
  }
  return s;
}

// 1 + 240 sum sigma_3(n) q^n, truncated to len.
std::vector<std::uint32_t> eisenstein_e4(std::size_t len, std::uint32_t mod) {
  std::vector<std::uint32_t> s(len, 0);
  if (len == 0) return s;
  for (std::uint64_t d = 1; d < len; ++d) {
    std::uint64_t d3 = d % mod * (d % mod) % mod * (d % mod) % mod;
    for (std::uint64_t m = d; m < len; m += d) {
      std::uint64_t v = s[m] + d3;
      s[m] = static_cast<std::uint32_t>(v >= mod ? v - mod : v);
    }
  }
  for (std::size_t n = 1; n < len; ++n) s[n] = static_cast<std::uint32_t>(240ull * s[n] % mod);
  s[0] = 1;
  return s;
}

// prod (1 - q^n)^24 mod (q^len, prime).
std::vector<std::uint32_t> eta24(std::size_t len, const NttPrime& prime) {
  auto s = eta_cubed(len, prime.modulus);
  for (int i = 0; i < 3; ++i) s = detail::multiply_mod(s, s, len, prime);
  return s;
}

// Garner reconstruction of signed integers from residues.
std::vector<BigInt> reconstruct(const std::vector<std::vector<std::uint32_t>>& residues,
                                std::span<const NttPrime> primes) {
  const std::size_t k = residues.size();
  const std::size_t len = residues.front().size();
  // inv[i][j] = p_i^{-1} mod p_j for i < j
  std::vector<std::vector<std::uint32_t>> inv(k, std::vector<std::uint32_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      inv[i][j] = detail::pow_mod(primes[i].modulus, primes[j].modulus - 2, primes[j].modulus);

  BigInt product = 1;
  for (std::size_t i = 0; i < k; ++i) product *= primes[i].modulus;
  const BigInt half = product / 2;

  std::vector<BigInt> out(len);
  std::vector<std::uint64_t> digit(k);
  for (std::size_t n = 0; n < len; ++n) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t pj = primes[j].modulus;
      std::uint64_t x = residues[j][n];
      for (std::size_t i = 0; i < j; ++i) {
        x = (x + pj - digit[i] % pj) % pj;
        x = x * inv[i][j] % pj;
      }
      digit[j] = x;
    }
    BigInt value = static_cast<unsigned long>(digit[k - 1]);
    for (std::size_t i = k - 1; i-- > 0;) {
      value *= static_cast<unsigned long>(primes[i].modulus);
      value += static_cast<unsigned long>(digit[i]);
    }
    if (value > half) value -= product;
    out[n] = std::move(value);
  }
  return out;
}

template <typename SeriesFn>
QExpansion build(std::size_t count, int weight, SeriesFn series_mod) {
  if (count == 0) throw Error(Errc::invalid_argument, "q-expansion count must be >= 1");
  const auto all = detail::ntt_primes();
  const std::size_t k = primes_needed(count, weight);
  const auto primes = all.first(k);
  std::vector<std::vector<std::uint32_t>> residues;
  residues.reserve(k);
  // f = q * series, so a(n) is the coefficient of q^{n-1} in series.
  for (const auto& prime : primes) residues.push_back(series_mod(count, prime));
  auto values = reconstruct(residues, primes);
  std::vector<BigInt> coeffs(count + 1);
  coeffs[0] = 0;
  for (std::size_t n = 1; n <= count; ++n) coeffs[n] = std::move(values[n - 1]);
  return QExpansion(std::move(coeffs), weight);
}

}  // namespace

QExpansion tau_expansion(std::size_t count) {
  return build(count, 12, [](std::size_t len, const NttPrime& prime) { return eta24(len, prime); });
}

QExpansion weight16_eigenform(std::size_t count) {
  return build(count, 16, [](std::size_t len, const NttPrime& prime) {
    auto delta = eta24(len, prime);
    auto e4 = eisenstein_e4(len, prime.modulus);
    return detail::multiply_mod(delta, e4, len, prime);
  });
}

QExpansion qexpansion_by_name(const std::string& name, std::size_t count) {
  if (name == "delta") return tau_expansion(count);
  if (name == "delta_e4") return weight16_eigenform(count);
  throw Error(Errc::invalid_argument, "unknown q-expansion generator '" + name + "'");
}

}  // namespace zerodist
