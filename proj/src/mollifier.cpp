#include "zerodist/mollifier.hpp"

#include <algorithm>
#include <cmath>

#include "zerodist/primes.hpp"

namespace zerodist {

std::vector<double> mu_table(const LFunctionData& f, std::uint64_t N) {
  if (N > f.coefficient_limit())
    throw Error(Errc::data, "coefficients of " + f.label() + " stop below n = " + std::to_string(N));
  if (N > 0xffffffffULL) throw Error(Errc::budget, "mollifier length exceeds 2^32");
  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(N));
  std::vector<double> mu(N + 1, 0.0);
  if (N >= 1) mu[1] = 1.0;
  for (std::uint64_t n = 2; n <= N; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t rest = n / p;
    int k = 1;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    double local = 0.0;
    if (k == 1) local = -f.lambda(p);
    else if (k == 2) local = f.chi(p);
    mu[n] = local * mu[rest];
  }
  return mu;
}

std::vector<double> dirichlet_check(const LFunctionData& f, const std::vector<double>& mu) {
  const std::uint64_t N = mu.empty() ? 0 : mu.size() - 1;
  std::vector<double> out(N + 1, 0.0);
  for (std::uint64_t d = 1; d <= N; ++d) {
    if (mu[d] == 0.0) continue;
    for (std::uint64_t m = 1; d * m <= N; ++m) out[d * m] += mu[d] * f.lambda(m);
  }
  return out;
}

double taper(double t, double T, double varpi) {
  if (!(T > 1.0) || !(varpi > 0.0)) throw Error(Errc::invalid_argument, "taper needs T > 1 and varpi > 0");
  if (t < 0.0) throw Error(Errc::invalid_argument, "taper needs t >= 0");
  const double log_len = varpi * std::log(T);
  if (t <= std::exp(log_len / 2.0)) return 1.0;
  if (t > std::exp(log_len)) return 0.0;
  return 2.0 * (1.0 - std::log(t) / log_len);
}

MollifierData::MollifierData(std::shared_ptr<const LFunctionData> form, double T, double varpi)
    : form_(std::move(form)), T_(T), varpi_(varpi) {
  if (!form_) throw Error(Errc::invalid_argument, "mollifier needs a form");
  if (!(T > 1.0)) throw Error(Errc::invalid_argument, "T must exceed 1");
  const double cap = 0.25 - form_->theta() / 2.0;
  if (!(varpi > 0.0) || !(varpi < cap))
    throw Error(Errc::invalid_argument, "varpi must lie in (0, " + std::to_string(cap) + ")");
  const double len = std::exp(varpi * std::log(T));
  length_ = static_cast<std::uint64_t>(std::floor(len * (1.0 + 1e-12)));
  mu_ = mu_table(*form_, length_);
}

std::complex<double> MollifierData::value(std::complex<double> s) const {
  std::complex<double> total = 0.0;
  for (std::uint64_t n = 1; n <= length_; ++n) {
    if (mu_[n] == 0.0) continue;
    const double w = taper(static_cast<double>(n), T_, varpi_);
    if (w == 0.0) continue;
    total += mu_[n] * w * std::exp(-s * std::log(static_cast<double>(n)));
  }
  return total;
}

double MollifierData::convolution_defect() const {
  const std::uint64_t N = std::min<std::uint64_t>(length_, 10000);
  std::vector<double> mu(mu_.begin(), mu_.begin() + static_cast<std::ptrdiff_t>(N + 1));
  const auto conv = dirichlet_check(*form_, mu);
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) worst = std::max(worst, std::abs(conv[n] - (n == 1 ? 1.0 : 0.0)));
  return worst;
}

}  // namespace zerodist
