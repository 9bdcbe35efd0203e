#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace zerodist {

// All primes p <= limit (Eratosthenes, odd-only).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Primes in [lo, hi], segmented so memory is O(sqrt(hi) + segment).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t p = 0;
  int exponent = 0;
};

// n = p^m with m >= 1, or nullopt.
std::optional<PrimePower> as_prime_power(std::uint64_t n);

// Smallest prime factor table for 0..limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace zerodist
