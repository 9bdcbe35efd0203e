#include "zerodist/alphaspec.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "zerodist/primes.hpp"

namespace zerodist {

namespace {

using Wide = long double;
constexpr Wide kTwoPiL = 6.283185307179586476925286766559005768L;

Wide target_value(const RelationRow& row) {
  return static_cast<Wide>(row.a) / static_cast<Wide>(row.q) *
         std::log(static_cast<Wide>(row.p)) / kTwoPiL;
}

std::string row_label(std::size_t j) { return "relation row " + std::to_string(j + 1); }

// Row-reduces an integer matrix over Q; returns pivot columns.
std::vector<int> pivot_columns(const std::vector<IntVector>& rows, std::size_t n) {
  std::vector<std::vector<mpq_class>> a;
  for (const auto& r : rows) {
    std::vector<mpq_class> qr;
    for (auto v : r) qr.emplace_back(static_cast<long>(v));
    a.push_back(std::move(qr));
  }
  std::vector<int> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      mpq_class factor = a[i][col] / a[row][col];
      for (std::size_t k = col; k < n; ++k) a[i][k] -= factor * a[row][k];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

// Exact inverse of a square integer matrix.
std::vector<std::vector<mpq_class>> inverse(const std::vector<IntVector>& m) {
  const std::size_t r = m.size();
  std::vector<std::vector<mpq_class>> a(r, std::vector<mpq_class>(2 * r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) a[i][k] = static_cast<long>(m[i][k]);
    a[i][r + i] = 1;
  }
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t sel = col;
    while (sel < r && a[sel][col] == 0) ++sel;
    if (sel == r) throw Error(Errc::validation, "relation matrix is singular");
    std::swap(a[sel], a[col]);
    mpq_class pivot = a[col][col];
    for (auto& v : a[col]) v /= pivot;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == col || a[i][col] == 0) continue;
      mpq_class factor = a[i][col];
      for (std::size_t k = 0; k < 2 * r; ++k) a[i][k] -= factor * a[col][k];
    }
  }
  std::vector<std::vector<mpq_class>> inv(r, std::vector<mpq_class>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) inv[i][k] = a[i][r + k];
  return inv;
}

void validate_rows(const std::vector<RelationRow>& rows, std::size_t n) {
  if (rows.size() > n)
    throw Error(Errc::validation, "certificate has more rows than the dimension of alpha");
  std::set<std::uint64_t> seen;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto& row = rows[j];
    if (row.b.size() != n)
      throw Error(Errc::validation, row_label(j) + " has wrong length");
    std::uint64_t g = 0;
    for (auto v : row.b) g = gcd_u64(g, static_cast<std::uint64_t>(v < 0 ? -v : v));
    if (g == 0) throw Error(Errc::validation, row_label(j) + " is zero");
    if (g != 1)
      throw Error(Errc::validation, row_label(j) + ": row gcd " + std::to_string(g) + " != 1");
    if (row.q <= 0) throw Error(Errc::validation, row_label(j) + ": q must be positive");
    if (row.a == 0) throw Error(Errc::validation, row_label(j) + ": a must be nonzero");
    if (gcd_u64(static_cast<std::uint64_t>(row.a < 0 ? -row.a : row.a), static_cast<std::uint64_t>(row.q)) != 1)
      throw Error(Errc::validation, row_label(j) + ": a/q is not fully reduced");
    if (!is_prime(row.p))
      throw Error(Errc::validation, row_label(j) + ": " + std::to_string(row.p) + " is not prime");
    if (!seen.insert(row.p).second)
      throw Error(Errc::validation, "duplicate prime " + std::to_string(row.p) + " in certificate");
  }
  std::vector<IntVector> m;
  for (const auto& row : rows) m.push_back(row.b);
  if (pivot_columns(m, n).size() != rows.size())
    throw Error(Errc::validation, "certificate rows are linearly dependent");
}

}  // namespace

AlphaSpec::AlphaSpec(std::vector<double> alpha, std::vector<RelationRow> rows, double c_alpha)
    : alpha_(std::move(alpha)), rows_(std::move(rows)), c_alpha_(c_alpha) {
  validate();
}

void AlphaSpec::validate() const {
  if (alpha_.empty()) throw Error(Errc::validation, "alpha must have dimension >= 1");
  for (double v : alpha_)
    if (!std::isfinite(v)) throw Error(Errc::validation, "alpha components must be finite");
  if (!(c_alpha_ > 0.0)) throw Error(Errc::validation, "C_alpha must be positive");
  validate_rows(rows_, alpha_.size());
  const double res = residual();
  if (res > kResidualTolerance)
    throw Error(Errc::validation, "alpha violates its certificate: residual " + std::to_string(res));
}

AlphaSpec AlphaSpec::solve(const std::vector<IntVector>& M, const std::vector<Rational>& targets,
                           const std::vector<std::uint64_t>& primes,
                           const std::vector<double>& free_components, double c_alpha) {
  if (M.empty()) throw Error(Errc::invalid_argument, "relation matrix has no rows");
  if (targets.size() != M.size() || primes.size() != M.size())
    throw Error(Errc::invalid_argument, "matrix, rationals and primes must have equal length");
  const std::size_t r = M.size();
  const std::size_t n = M.front().size();
  std::vector<RelationRow> rows;
  for (std::size_t j = 0; j < r; ++j) rows.push_back({M[j], targets[j].num, targets[j].den, primes[j]});
  validate_rows(rows, n);
  if (free_components.size() != n - r)
    throw Error(Errc::invalid_argument, "expected " + std::to_string(n - r) + " free components");

  const auto pivots = pivot_columns(M, n);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Wide> alpha(n, 0.0L);
  std::size_t next_free = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (!is_pivot[k]) alpha[k] = free_components[next_free++];

  std::vector<IntVector> square(r, IntVector(r));
  std::vector<Wide> rhs(r);
  for (std::size_t j = 0; j < r; ++j) {
    rhs[j] = target_value(rows[j]);
    for (std::size_t k = 0; k < n; ++k)
      if (!is_pivot[k]) rhs[j] -= static_cast<Wide>(M[j][k]) * alpha[k];
    for (std::size_t i = 0; i < r; ++i) square[j][i] = M[j][static_cast<std::size_t>(pivots[i])];
  }
  const auto inv = inverse(square);
  for (std::size_t i = 0; i < r; ++i) {
    Wide v = 0.0L;
    for (std::size_t j = 0; j < r; ++j) v += static_cast<Wide>(inv[i][j].get_d()) * rhs[j];
    alpha[static_cast<std::size_t>(pivots[i])] = v;
  }
  // One step of iterative refinement against rounding in the inverse.
  for (std::size_t j = 0; j < r; ++j) {
    Wide lhs = 0.0L;
    for (std::size_t k = 0; k < n; ++k) lhs += static_cast<Wide>(M[j][k]) * alpha[k];
    rhs[j] = target_value(rows[j]) - lhs;
  }
  for (std::size_t i = 0; i < r; ++i) {
    Wide v = 0.0L;
    for (std::size_t j = 0; j < r; ++j) v += static_cast<Wide>(inv[i][j].get_d()) * rhs[j];
    alpha[static_cast<std::size_t>(pivots[i])] += v;
  }
  std::vector<double> out(alpha.begin(), alpha.end());
  return AlphaSpec(std::move(out), std::move(rows), c_alpha);
}

double AlphaSpec::residual() const {
  Wide worst = 0.0L;
  for (const auto& row : rows_) {
    Wide lhs = 0.0L;
    for (std::size_t k = 0; k < alpha_.size(); ++k) lhs += static_cast<Wide>(row.b[k]) * alpha_[k];
    worst = std::max(worst, std::abs(lhs - target_value(row)));
  }
  return static_cast<double>(worst);
}

std::vector<RelationRow> AlphaSpec::canonical_rows() const {
  auto out = rows_;
  for (auto& row : out) {
    if (row.a < 0) {
      row.a = -row.a;
      for (auto& v : row.b) v = -v;
    }
  }
  return out;
}

AlphaSpec parse_alpha_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("alpha spec: ") + e.what());
  }
  try {
    const auto M = j.value("M", std::vector<IntVector>{});
    std::vector<Rational> rationals;
    for (const auto& pair : j.value("rationals", nlohmann::json::array())) {
      if (!pair.is_array() || pair.size() != 2)
        throw Error(Errc::parse, "alpha spec: rationals must be [a, q] pairs");
      rationals.push_back({pair[0].get<std::int64_t>(), pair[1].get<std::int64_t>()});
    }
    const auto primes = j.value("primes", std::vector<std::uint64_t>{});
    const double c_alpha = j.value("C_alpha", 1.0);
    if (M.size() != rationals.size() || M.size() != primes.size())
      throw Error(Errc::parse, "alpha spec: M, rationals and primes must have equal length");
    if (j.contains("alpha")) {
      auto alpha = j.at("alpha").get<std::vector<double>>();
      if (j.contains("n") && j["n"].get<std::size_t>() != alpha.size())
        throw Error(Errc::parse, "alpha spec: n does not match alpha");
      std::vector<RelationRow> rows;
      for (std::size_t i = 0; i < M.size(); ++i)
        rows.push_back({M[i], rationals[i].num, rationals[i].den, primes[i]});
      return AlphaSpec(std::move(alpha), std::move(rows), c_alpha);
    }
    const auto free = j.value("free_components", std::vector<double>{});
    if (j.contains("n") && !M.empty() && j["n"].get<std::size_t>() != M.front().size())
      throw Error(Errc::parse, "alpha spec: n does not match M");
    return AlphaSpec::solve(M, rationals, primes, free, c_alpha);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("alpha spec: ") + e.what());
  }
}

AlphaSpec load_alpha(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open alpha spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_alpha_json(ss.str());
}

std::string alpha_to_json(const AlphaSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.dimension();
  j["alpha"] = spec.alpha();
  auto M = nlohmann::json::array();
  auto rationals = nlohmann::json::array();
  auto primes = nlohmann::json::array();
  for (const auto& row : spec.rows()) {
    M.push_back(row.b);
    rationals.push_back({row.a, row.q});
    primes.push_back(row.p);
  }
  j["M"] = M;
  j["rationals"] = rationals;
  j["primes"] = primes;
  j["C_alpha"] = spec.c_alpha();
  return j.dump();
}

namespace {

// Calls fn(m) for every m in [-B, B]^n in lexicographic order.
template <typename Fn>
void for_each_in_cube(std::size_t n, std::int64_t bound, Fn&& fn) {
  IntVector m(n, -bound);
  while (true) {
    fn(m);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (m[k] < bound) {
        ++m[k];
        break;
      }
      m[k] = -bound;
      if (k == 0) return;
    }
  }
}

Wide dot(const IntVector& m, const std::vector<double>& alpha) {
  Wide s = 0.0L;
  for (std::size_t k = 0; k < m.size(); ++k) s += static_cast<Wide>(m[k]) * alpha[k];
  return s;
}

bool first_nonzero_positive(const IntVector& m) {
  for (auto v : m)
    if (v != 0) return v > 0;
  return false;
}

}  // namespace

ConditionReport verify_condition(const AlphaSpec& spec, int bound) {
  if (bound < 1) throw Error(Errc::invalid_argument, "norm bound B must be >= 1");
  const std::size_t n = spec.alpha().size();
  if (std::pow(2.0 * bound + 1.0, static_cast<double>(n)) > kEnumerationBudget)
    throw Error(Errc::budget, "(2B+1)^n exceeds 1e8 modes; lower B");
  ConditionReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for_each_in_cube(n, bound, [&](const IntVector& m) {
    if (!first_nonzero_positive(m)) return;  // |(-m).alpha| = |m.alpha|
    ++report.modes_checked;
    Wide norm2 = 0.0L;
    for (auto v : m) norm2 += static_cast<Wide>(v) * v;
    const Wide ratio = std::abs(dot(m, spec.alpha())) * std::exp(std::sqrt(norm2));
    if (ratio < report.min_ratio) {
      report.min_ratio = static_cast<double>(ratio);
      report.argmin = m;
    }
  });
  report.plausible = report.min_ratio >= spec.c_alpha();
  return report;
}

ModeClassification classify_integer_modes(const AlphaSpec& spec, double J) {
  if (!(J >= 0.0)) throw Error(Errc::invalid_argument, "J must be nonnegative");
  const std::size_t n = spec.alpha().size();
  const auto bound = static_cast<std::int64_t>(std::floor(J));
  if (std::pow(2.0 * bound + 1.0, static_cast<double>(n)) > kEnumerationBudget)
    throw Error(Errc::budget, "(2J+1)^n exceeds 1e8 modes; lower J");
  const auto rows = spec.canonical_rows();
  ModeClassification out;
  out.min_non_integer_distance = std::numeric_limits<double>::infinity();
  const Wide j2 = static_cast<Wide>(J) * J;
  for_each_in_cube(n, bound, [&](const IntVector& m) {
    Wide norm2 = 0.0L;
    bool zero = true;
    for (auto v : m) {
      norm2 += static_cast<Wide>(v) * v;
      zero = zero && v == 0;
    }
    if (zero || norm2 > j2) return;
    ++out.modes_checked;
    const Wide x = std::exp(kTwoPiL * dot(m, spec.alpha()));
    IntegerMode mode{m, static_cast<double>(x), -1, 0};
    if (x > kMaxDecidable) {
      out.unresolved.push_back(mode);
      return;
    }
    const Wide nearest = std::round(x);
    const Wide dist = std::abs(x - nearest);
    if (nearest < 1.0L || dist > kIntegerProximity) {
      out.min_non_integer_distance = std::min(out.min_non_integer_distance, static_cast<double>(dist));
      return;
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const auto& b = rows[j].b;
      // m = c b_j for an integer c?
      std::size_t k0 = 0;
      while (b[k0] == 0) ++k0;
      if (m[k0] % b[k0] != 0) continue;
      const std::int64_t c = m[k0] / b[k0];
      bool parallel = c != 0;
      for (std::size_t k = 0; k < n && parallel; ++k) parallel = m[k] == c * b[k];
      if (!parallel || c % rows[j].q != 0) continue;
      const std::int64_t l = c / rows[j].q;
      if (l < 1) continue;
      const Wide expected = std::pow(static_cast<Wide>(rows[j].p), static_cast<Wide>(rows[j].a * l));
      if (std::abs(x - expected) > kIntegerProximity * std::max<Wide>(1.0L, expected)) continue;
      mode.row = static_cast<int>(j);
      mode.multiple = l;
      break;
    }
    (mode.row >= 0 ? out.witnessed : out.ambiguous).push_back(mode);
  });
  return out;
}

}  // namespace zerodist
