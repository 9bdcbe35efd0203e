#include "zerodist/zerostats.hpp"

#include <algorithm>
#include <cmath>

namespace zerodist {

namespace {

std::size_t zeros_up_to(const LFunctionData& f, double T) {
  if (!f.has_zeros()) throw Error(Errc::range, "form " + f.label() + " has no zero data");
  if (T > f.t_max())
    throw Error(Errc::range, "T = " + std::to_string(T) + " exceeds the zero data height " +
                                 std::to_string(f.t_max()));
  const auto zeros = f.zeros();
  return static_cast<std::size_t>(std::upper_bound(zeros.begin(), zeros.end(), T) - zeros.begin());
}

std::size_t power(int G, int n) {
  std::size_t v = 1;
  for (int k = 0; k < n; ++k) v *= static_cast<std::size_t>(G);
  return v;
}

// Inclusive prefix sums over a G^n array, stored on a (G+1)^n table.
std::vector<double> prefix_table(std::span<const double> cells, int n, int G) {
  const std::size_t side = static_cast<std::size_t>(G) + 1;
  std::vector<double> table(power(G + 1, n), 0.0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  // Copy cells into the shifted table.
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::size_t rem = c, pos = 0, stride = 1;
    for (int k = n - 1; k >= 0; --k) {
      pos += (rem % static_cast<std::size_t>(G) + 1) * stride;
      rem /= static_cast<std::size_t>(G);
      stride *= side;
    }
    table[pos] = cells[c];
  }
  std::size_t stride = 1;
  for (int k = n - 1; k >= 0; --k) {
    for (std::size_t pos = 0; pos < table.size(); ++pos)
      if ((pos / stride) % side != 0) table[pos] += table[pos - stride];
    stride *= side;
  }
  return table;
}

// max over grid-aligned boxes of |box_sum(prefix) * scale - vol * vol_weight|.
double max_over_boxes(const std::vector<double>& table, int n, int G, double scale, double vol_weight) {
  const double boxes = std::pow(G * (G + 1) / 2.0, n);
  if (boxes > kDiscrepancyBudget) throw Error(Errc::budget, "too many grid-aligned boxes; lower G");
  const std::size_t side = static_cast<std::size_t>(G) + 1;
  std::vector<std::size_t> strides(static_cast<std::size_t>(n));
  std::size_t s = 1;
  for (int k = n - 1; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = s;
    s *= side;
  }
  std::vector<int> lo(static_cast<std::size_t>(n), 0), hi(static_cast<std::size_t>(n), 1);
  double best = 0.0;
  const double inv_g = 1.0 / G;
  const std::size_t corners = std::size_t{1} << n;
  while (true) {
    double sum = 0.0;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      std::size_t pos = 0;
      int sign = 1;
      for (int k = 0; k < n; ++k) {
        const bool use_lo = (mask >> k) & 1U;
        pos += static_cast<std::size_t>(use_lo ? lo[static_cast<std::size_t>(k)] : hi[static_cast<std::size_t>(k)]) *
               strides[static_cast<std::size_t>(k)];
        if (use_lo) sign = -sign;
      }
      sum += sign * table[pos];
    }
    double vol = 1.0;
    for (int k = 0; k < n; ++k) vol *= (hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)]) * inv_g;
    best = std::max(best, std::abs(sum * scale - vol * vol_weight));
    // Next (lo, hi) pair, last axis fastest.
    int k = n - 1;
    for (; k >= 0; --k) {
      auto& l = lo[static_cast<std::size_t>(k)];
      auto& h = hi[static_cast<std::size_t>(k)];
      if (h < G) {
        ++h;
        break;
      }
      if (l + 1 < G) {
        ++l;
        h = l + 1;
        break;
      }
      l = 0;
      h = 1;
    }
    if (k < 0) break;
  }
  return best;
}

}  // namespace

std::uint64_t count_zeros(const LFunctionData& f, double T) {
  return 2 * static_cast<std::uint64_t>(zeros_up_to(f, T));
}

double rvm_main(double q, double T) {
  if (!(q > 0.0) || !(T > 0.0)) throw Error(Errc::invalid_argument, "q and T must be positive");
  const long double ratio = static_cast<long double>(T) / (2.0L * std::numbers::pi_v<long double> * std::numbers::e_v<long double>);
  return static_cast<double>(static_cast<long double>(T) / std::numbers::pi_v<long double> *
                             std::log(static_cast<long double>(q) * ratio * ratio));
}

ZeroCountReport zero_count_report(const LFunctionData& f, double T) {
  ZeroCountReport r;
  r.T = T;
  r.n_emp = count_zeros(f, T);
  r.n_main = rvm_main(static_cast<double>(f.level()), T);
  r.error = static_cast<double>(r.n_emp) - r.n_main;
  return r;
}

ZeroCountScan scan_zero_counts(const LFunctionData& f, std::size_t stride) {
  if (!f.has_zeros()) throw Error(Errc::range, "form " + f.label() + " has no zero data");
  if (stride == 0) stride = 1;
  ZeroCountScan scan;
  const auto zeros = f.zeros();
  const double q = static_cast<double>(f.level());
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const double T = zeros[k];
    const double main = rvm_main(q, T);
    for (std::uint64_t count : {2 * static_cast<std::uint64_t>(k), 2 * static_cast<std::uint64_t>(k + 1)}) {
      const double err = static_cast<double>(count) - main;
      const double c = std::abs(err) / std::log(T + 3.0);
      ++scan.points;
      if (c > scan.c_fit) {
        scan.c_fit = c;
        scan.t_worst = T;
      }
    }
    if ((k + 1) % stride == 0 || k + 1 == zeros.size())
      scan.samples.push_back({T, 2 * static_cast<std::uint64_t>(k + 1), main,
                              static_cast<double>(2 * (k + 1)) - main});
  }
  return scan;
}

std::vector<double> fractional_parts(const LFunctionData& f, const AlphaSpec& spec, double T) {
  const std::size_t count = f.has_zeros() ? zeros_up_to(f, T) : 0;
  const auto& alpha = spec.alpha();
  const auto zeros = f.zeros();
  std::vector<double> out;
  out.reserve(2 * count * alpha.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (double a : alpha) out.push_back(frac(zeros[i] * a));
    for (double a : alpha) out.push_back(frac(-zeros[i] * a));
  }
  return out;
}

std::size_t cell_index(std::span<const double> point, int G) {
  std::size_t idx = 0;
  for (double x : point) {
    auto a = static_cast<std::int64_t>(std::floor(frac(x) * G));
    a = std::clamp<std::int64_t>(a, 0, G - 1);
    idx = idx * static_cast<std::size_t>(G) + static_cast<std::size_t>(a);
  }
  return idx;
}

GridHistogram grid_histogram(std::span<const double> points, int n, int G, double T) {
  if (n < 1) throw Error(Errc::invalid_argument, "dimension must be >= 1");
  if (G < 1) throw Error(Errc::invalid_argument, "grid size must be >= 1");
  if (points.size() % static_cast<std::size_t>(n) != 0)
    throw Error(Errc::invalid_argument, "point array length is not a multiple of n");
  if (std::pow(static_cast<double>(G), n) > 1e8) throw Error(Errc::budget, "grid has more than 1e8 cells");
  GridHistogram hist{n, G, std::vector<std::uint64_t>(power(G, n), 0), T, 0};
  for (std::size_t i = 0; i < points.size(); i += static_cast<std::size_t>(n)) {
    ++hist.counts[cell_index(points.subspan(i, static_cast<std::size_t>(n)), G)];
    ++hist.total;
  }
  return hist;
}

std::vector<double> predicted_cell_counts(const DensityModel& model, double n_t, double T, int G, double tol) {
  if (G < 1) throw Error(Errc::invalid_argument, "grid size must be >= 1");
  const int n = model.dimension();
  const std::size_t cells = power(G, n);
  const double vol = std::pow(1.0 / G, n);
  std::vector<double> out;
  out.reserve(cells);
  Box box(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rem = c;
    for (int k = n - 1; k >= 0; --k) {
      const auto a = static_cast<double>(rem % static_cast<std::size_t>(G));
      rem /= static_cast<std::size_t>(G);
      box[static_cast<std::size_t>(k)] = {a / G, (a + 1.0) / G};
    }
    out.push_back(vol * n_t + T * model.integrate_box(box, tol));
  }
  return out;
}

WeightedSum weighted_sum(const DensityModel& model, const FourierPoly& h, double T) {
  const auto& f = model.form();
  if (h.dimension() != model.dimension()) throw Error(Errc::invalid_argument, "test function has wrong dimension");
  WeightedSum out;
  out.pairing = model.pair(h);
  if (!(T > 0.0)) throw Error(Errc::invalid_argument, "T must be positive");
  const std::size_t count = f.has_zeros() ? zeros_up_to(f, T) : 0;
  const auto points = fractional_parts(f, model.spec(), T);
  const std::size_t n = static_cast<std::size_t>(model.dimension());
  CompensatedSum sum;
  for (std::size_t i = 0; i < points.size(); i += n) sum.add(h.eval(std::span(points).subspan(i, n)));
  out.S = sum.value();
  out.n_emp = 2 * static_cast<std::uint64_t>(count);
  out.residual = (out.S - static_cast<double>(out.n_emp) * h.integral() - T * out.pairing) / T;
  return out;
}

LandauSum landau_sum(const LFunctionData& f, double x, double T) {
  if (!(x > 1.0)) throw Error(Errc::invalid_argument, "x must exceed 1");
  const std::size_t count = zeros_up_to(f, T);
  const auto zeros = f.zeros();
  const double logx = std::log(x);
  CompensatedSum sum;
  for (std::size_t i = 0; i < count; ++i) sum.add(std::cos(zeros[i] * logx));
  LandauSum out;
  out.x = x;
  out.T = T;
  out.S = 2.0 * sum.value();
  out.nearest = static_cast<std::uint64_t>(std::llround(x));
  const double n = static_cast<double>(out.nearest);
  const double lam = out.nearest >= 2 ? von_mangoldt_at(f, out.nearest) : 0.0;
  const double d = std::log(x / n);
  const double ratio = std::abs(d) < 1e-15 ? T : std::sin(T * d) / d;
  out.prediction = lam == 0.0 ? 0.0 : -lam / (kPi * std::sqrt(n)) * ratio;
  const double logT = std::log(std::max(T, 2.0));
  out.envelope = std::pow(x, 0.5 + f.theta()) * (std::log(2.0 * x) + logT) + logT / (std::sqrt(x) * logx);
  return out;
}

double discrepancy(const GridHistogram& hist) {
  if (hist.n > 3) throw Error(Errc::budget, "discrepancy supports n <= 3");
  if (hist.G > 40) throw Error(Errc::budget, "discrepancy supports G <= 40");
  if (hist.total == 0) throw Error(Errc::data, "discrepancy needs at least one point");
  std::vector<double> cells(hist.counts.begin(), hist.counts.end());
  const auto table = prefix_table(cells, hist.n, hist.G);
  return max_over_boxes(table, hist.n, hist.G, 1.0 / static_cast<double>(hist.total), 1.0);
}

double discrepancy(const LFunctionData& f, const AlphaSpec& spec, double T, int G) {
  const auto points = fractional_parts(f, spec, T);
  return discrepancy(grid_histogram(points, spec.dimension(), G, T));
}

double discrepancy_lower_bound(const DensityModel& model, double n_emp, double T, int G, double tol) {
  const int n = model.dimension();
  if (n > 3 || G > 40) throw Error(Errc::budget, "discrepancy supports n <= 3 and G <= 40");
  if (!(n_emp > 0.0)) throw Error(Errc::data, "discrepancy needs at least one zero");
  const auto cells = predicted_cell_counts(model, 0.0, 1.0, G, tol);
  const auto table = prefix_table(cells, n, G);
  return T / n_emp * max_over_boxes(table, n, G, 1.0, 0.0);
}

ZeroDensityReport zero_density_count(const LFunctionData& f, double sigma, double T, double c) {
  ZeroDensityReport out;
  out.count = sigma > 0.5 ? 0 : count_zeros(f, T);
  out.bound = std::pow(T, 1.0 - c * (sigma - 0.5)) * std::log(T);
  return out;
}

}  // namespace zerodist
