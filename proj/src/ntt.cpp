#include "ntt.hpp"

#include <algorithm>
#include <array>

#include "zerodist/common.hpp"

namespace zerodist::detail {

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

namespace {

constexpr std::array<std::uint32_t, 9> kModuli = {
    2013265921u, 2113929217u, 1811939329u, 1711276033u, 1107296257u,
    998244353u,  754974721u,  469762049u,  167772161u};

std::uint32_t find_primitive_root(std::uint32_t p) {
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](std::uint64_t f) { return pow_mod(g, (p - 1) / f, p) != 1; });
    if (ok) return g;
  }
  throw Error(Errc::numeric, "no primitive root found");
}

std::vector<NttPrime> build_table() {
  std::vector<NttPrime> table;
  for (auto p : kModuli) {
    int e = 0;
    while (((p - 1) >> (e + 1)) << (e + 1) == p - 1) ++e;
    table.push_back({p, find_primitive_root(p), e});
  }
  return table;
}

void transform(std::vector<std::uint32_t>& a, bool inverse, const NttPrime& prime) {
  const std::uint32_t mod = prime.modulus;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w_len = pow_mod(prime.root, (mod - 1) / len, mod);
    if (inverse) w_len = pow_mod(w_len, mod - 2, mod);
    const std::size_t half = len / 2;
    std::vector<std::uint32_t> w(half);
    w[0] = 1;
    for (std::size_t k = 1; k < half; ++k) w[k] = static_cast<std::uint32_t>(w[k - 1] * w_len % mod);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::uint32_t u = a[i + k];
        std::uint32_t v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i + k + half]) * w[k] % mod);
        std::uint32_t s = u + v;
        a[i + k] = s >= mod ? s - mod : s;
        a[i + k + half] = u >= v ? u - v : u + mod - v;
      }
    }
  }
  if (inverse) {
    std::uint64_t n_inv = pow_mod(n, mod - 2, mod);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * n_inv % mod);
  }
}

}  // namespace

std::span<const NttPrime> ntt_primes() {
  static const std::vector<NttPrime> table = build_table();
  return table;
}

std::vector<std::uint32_t> multiply_mod(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b,
                                        std::size_t len, const NttPrime& prime) {
  const std::size_t la = std::min(a.size(), len);
  const std::size_t lb = std::min(b.size(), len);
  if (la == 0 || lb == 0) return std::vector<std::uint32_t>(len, 0);
  std::size_t size = 1;
  while (size < la + lb - 1) size <<= 1;
  if (size > (std::size_t{1} << prime.two_adicity))
    throw Error(Errc::budget, "q-expansion length exceeds NTT capacity");
  std::vector<std::uint32_t> fa(a.begin(), a.begin() + la);
  fa.resize(size, 0);
  const bool square = (&a == &b);
  std::vector<std::uint32_t> fb;
  transform(fa, false, prime);
  if (!square) {
    fb.assign(b.begin(), b.begin() + lb);
    fb.resize(size, 0);
    transform(fb, false, prime);
  }
  const auto& rhs = square ? fa : fb;
  for (std::size_t i = 0; i < size; ++i)
    fa[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(fa[i]) * rhs[i] % prime.modulus);
  transform(fa, true, prime);
  fa.resize(len, 0);
  return fa;
}

}  // namespace zerodist::detail
