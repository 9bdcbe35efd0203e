#include "zerodist/density.hpp"

#include <algorithm>
#include <cmath>

namespace zerodist {

DensityModel::DensityModel(std::shared_ptr<const LFunctionData> form,
                           std::shared_ptr<const AlphaSpec> spec)
    : form_(std::move(form)), spec_(std::move(spec)) {
  if (!form_ || !spec_) throw Error(Errc::invalid_argument, "density model needs a form and an alpha spec");
  if (form_->theta() >= 0.5) throw Error(Errc::validation, "theta must be below 1/2 for the l-series to converge");
  rows_ = spec_->canonical_rows();
  const int L = [&] {
    int needed = 1;
    for (const auto& row : rows_) {
      const double a = static_cast<double>(row.a);
      const double rho = std::pow(static_cast<double>(row.p), form_->theta() * a - a / 2.0);
      rho_.push_back(rho);
      // 2 log p rho^{L+1} / (1 - rho) <= kMinDensityTolerance / r
      const double budget = kMinDensityTolerance * (1.0 - rho) /
                            (2.0 * std::log(static_cast<double>(row.p)) * static_cast<double>(rows_.size()));
      needed = std::max(needed, static_cast<int>(std::ceil(std::log(budget) / std::log(rho))));
    }
    return std::min(needed, kMaxDensityTerms);
  }();
  for (const auto& row : rows_) {
    const auto max_exp = static_cast<int>(row.a) * L;
    const auto sums = satake_power_sums(*form_, row.p, max_exp);
    const double logp = std::log(static_cast<double>(row.p));
    std::vector<double> amps;
    amps.reserve(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l) {
      const int m = static_cast<int>(row.a) * l;
      amps.push_back(sums[static_cast<std::size_t>(m - 1)] * logp *
                     std::pow(static_cast<double>(row.p), -m / 2.0));
    }
    amplitudes_.push_back(std::move(amps));
  }
  tails_.reserve(static_cast<std::size_t>(max_terms()) + 1);
  for (int l = 0; l <= max_terms(); ++l) tails_.push_back(tail_bound(l));
}

double DensityModel::amplitude(std::size_t row, int l) const {
  if (row >= amplitudes_.size() || l < 1 || l > max_terms())
    throw Error(Errc::range, "density term out of range");
  return amplitudes_[row][static_cast<std::size_t>(l - 1)];
}

IntVector DensityModel::mode(std::size_t row, int l) const {
  if (row >= rows_.size()) throw Error(Errc::range, "density row out of range");
  IntVector m = rows_[row].b;
  for (auto& v : m) v *= rows_[row].q * l;
  return m;
}

int DensityModel::max_terms() const {
  return amplitudes_.empty() ? 0 : static_cast<int>(amplitudes_.front().size());
}

double DensityModel::tail_bound(int L) const {
  if (L < 0) throw Error(Errc::invalid_argument, "L must be nonnegative");
  double total = 0.0;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const double logp = std::log(static_cast<double>(rows_[j].p));
    total += 2.0 * logp * std::pow(rho_[j], L + 1) / (1.0 - rho_[j]);
  }
  return total;
}

int DensityModel::terms_for(double tol) const {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (rows_.empty()) return 0;
  const auto it = std::partition_point(tails_.begin(), tails_.end(), [&](double t) { return t > tol; });
  if (it == tails_.end())
    throw Error(Errc::numeric, "tolerance " + std::to_string(tol) + " is below the attainable tail " +
                                   std::to_string(tails_.back()));
  return static_cast<int>(it - tails_.begin());
}

DensityValue DensityModel::eval(std::span<const double> t, double tol) const {
  if (t.size() != static_cast<std::size_t>(dimension()))
    throw Error(Errc::invalid_argument, "evaluation point has wrong dimension");
  if (rows_.empty()) return {0.0, 0.0};
  const int L = terms_for(tol);
  CompensatedSum sum;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    double bt = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) bt += static_cast<double>(rows_[j].b[k]) * t[k];
    bt = frac(bt);
    for (int l = 1; l <= L; ++l) {
      const double phase = frac(static_cast<double>(rows_[j].q * l) * bt);
      sum.add(amplitudes_[j][static_cast<std::size_t>(l - 1)] * std::cos(kTwoPi * phase));
    }
  }
  return {-2.0 / kPi * sum.value(), tails_[static_cast<std::size_t>(L)]};
}

double DensityModel::integrate_box(const Box& box, double tol) const {
  if (box.size() != static_cast<std::size_t>(dimension()))
    throw Error(Errc::invalid_argument, "box has wrong dimension");
  for (const auto& side : box)
    if (side.hi < side.lo) throw Error(Errc::invalid_argument, "box side has hi < lo");
  if (rows_.empty()) return 0.0;
  const int L = terms_for(tol);
  CompensatedSum sum;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    for (int l = 1; l <= L; ++l) {
      Complex prod = 1.0;
      for (std::size_t k = 0; k < box.size(); ++k)
        prod *= interval_coefficient(rows_[j].q * l * rows_[j].b[k], box[k]);
      const Complex term = amplitudes_[j][static_cast<std::size_t>(l - 1)] * prod;
      sum.add(term.real());
    }
  }
  return -2.0 / kPi * sum.value();
}

double DensityModel::pair(const FourierPoly& h) const {
  if (h.dimension() != dimension()) throw Error(Errc::invalid_argument, "test function has wrong dimension");
  const double jmax = h.max_norm2();
  CompensatedSum sum;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    double step = 0.0;
    for (auto v : rows_[j].b) step += static_cast<double>(v * v);
    step = std::sqrt(step) * static_cast<double>(rows_[j].q);
    for (int l = 1; l <= max_terms() && step * l <= jmax + 0.5; ++l) {
      const Complex c = h.coefficient(mode(j, l));
      sum.add(amplitudes_[j][static_cast<std::size_t>(l - 1)] * c.real());
    }
  }
  return -2.0 / kPi * sum.value();
}

std::vector<double> DensityModel::sample_grid(int G, double tol) const {
  if (G < 1) throw Error(Errc::invalid_argument, "grid size must be >= 1");
  const int n = dimension();
  const double cells = std::pow(static_cast<double>(G), n);
  if (cells > 1e8) throw Error(Errc::budget, "grid has more than 1e8 cells");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cells));
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> t(static_cast<std::size_t>(n));
  while (true) {
    for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = (idx[static_cast<std::size_t>(k)] + 0.5) / G;
    out.push_back(eval(t, tol).value);
    int k = n - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == G - 1) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
  }
  return out;
}

double truncation_envelope(std::uint64_t p, int a) {
  const double pd = static_cast<double>(p);
  return 4.0 * std::log(pd) / (kPi * std::pow(pd, a) * (1.0 - std::pow(pd, -a / 2.0)));
}

}  // namespace zerodist
