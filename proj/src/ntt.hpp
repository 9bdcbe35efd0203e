#pragma once

// Number-theoretic transforms over word-sized NTT-friendly primes. Internal to
// the q-expansion engine.

#include <cstdint>
#include <span>
#include <vector>

namespace zerodist::detail {

struct NttPrime {
  std::uint32_t modulus;
  std::uint32_t root;  // primitive root mod modulus
  int two_adicity;     // largest e with 2^e | modulus - 1
};

// Fixed table of primes p < 2^31 with 2^23 | p - 1, largest first.
std::span<const NttPrime> ntt_primes();

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t mod);

// Truncated product (a * b) mod x^len, coefficients reduced mod prime.
std::vector<std::uint32_t> multiply_mod(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b,
                                        std::size_t len, const NttPrime& prime);

}  // namespace zerodist::detail
