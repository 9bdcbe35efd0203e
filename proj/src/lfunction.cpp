#include "zerodist/lfunction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "zerodist/fixtures.hpp"
#include "zerodist/primes.hpp"

namespace zerodist {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

}  // namespace

ZeroList parse_zeros(std::istream& in, std::optional<std::size_t> limit, std::string_view source) {
  ZeroList out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (limit && out.ordinates.size() >= *limit) break;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    double value = 0.0;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
      throw Error(Errc::parse, where(source, line_no) + ": malformed ordinate '" + std::string(line) + "'");
    if (value <= 0.0)
      throw Error(Errc::validation, where(source, line_no) + ": ordinate must be positive");
    if (!out.ordinates.empty() && value <= out.ordinates.back())
      throw Error(Errc::validation, where(source, line_no) + ": ordinates must be strictly ascending");
    out.ordinates.push_back(value);
  }
  out.t_max = out.ordinates.empty() ? 0.0 : out.ordinates.back();
  return out;
}

ZeroList parse_zeros(const fs::path& path, std::optional<std::size_t> limit) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open zeros file " + path.string());
  return parse_zeros(in, limit, path.string());
}

void write_zeros(std::ostream& out, std::span<const double> ordinates) {
  char buf[64];
  for (double g : ordinates) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, g);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

LFunctionData::LFunctionData(std::string label, std::uint64_t level, int weight, Rational theta,
                             std::vector<double> lambda, std::vector<double> zeros)
    : label_(std::move(label)),
      level_(level),
      weight_(weight),
      theta_(theta),
      lambda_(std::move(lambda)),
      zeros_(std::move(zeros)) {
  validate();
}

LFunctionData LFunctionData::from_qexpansion(std::string label, const QExpansion& series,
                                             std::vector<double> zeros) {
  return LFunctionData(std::move(label), 1, series.weight(), Rational{0, 1}, series.normalized(),
                       std::move(zeros));
}

void LFunctionData::validate() const {
  if (level_ == 0) throw Error(Errc::validation, label_ + ": level must be positive");
  if (weight_ < 2 || weight_ % 2 != 0)
    throw Error(Errc::validation, label_ + ": weight must be an even integer >= 2");
  if (theta_.den <= 0 || theta_.num < 0 || theta_.num * 64 > theta_.den * 7)
    throw Error(Errc::validation, label_ + ": theta must lie in [0, 7/64]");
  if (lambda_.size() < 2) throw Error(Errc::validation, label_ + ": no Hecke eigenvalues");
  if (std::abs(lambda_[1] - 1.0) > 1e-12)
    throw Error(Errc::validation, label_ + ": lambda(1) must equal 1");

  const double th = theta();
  for (auto p : primes_up_to(coefficient_limit())) {
    if (divides_level(p)) continue;
    const double bound = 2.0 * std::pow(static_cast<double>(p), th);
    if (std::abs(lambda_[p]) > bound * (1.0 + 1e-9))
      throw Error(Errc::validation, label_ + ": |lambda(" + std::to_string(p) +
                                        ")| exceeds the Ramanujan bound 2 p^theta");
  }

  // Multiplicativity spot check on coprime pairs.
  const std::uint64_t lim = coefficient_limit();
  for (std::uint64_t m = 2; m <= 60; ++m) {
    for (std::uint64_t n = m + 1; n <= 60 && m * n <= lim; ++n) {
      if (gcd_u64(m, n) != 1) continue;
      const double prod = lambda_[m] * lambda_[n];
      if (std::abs(lambda_[m * n] - prod) > 1e-8 * (1.0 + std::abs(prod)))
        throw Error(Errc::validation, label_ + ": lambda not multiplicative at " +
                                          std::to_string(m) + "*" + std::to_string(n));
    }
  }

  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (!(zeros_[i] > 0.0) || (i > 0 && zeros_[i] <= zeros_[i - 1]))
      throw Error(Errc::validation, label_ + ": zeros must be positive and strictly increasing");
  }
}

double LFunctionData::lambda(std::uint64_t n) const {
  if (n == 0 || n > coefficient_limit())
    throw Error(Errc::data, label_ + ": lambda(" + std::to_string(n) + ") not available (limit " +
                                std::to_string(coefficient_limit()) + ")");
  return lambda_[n];
}

std::vector<double> satake_power_sums(const LFunctionData& f, std::uint64_t p, int m_max) {
  if (m_max < 0) throw Error(Errc::invalid_argument, "m_max must be nonnegative");
  if (!is_prime(p)) throw Error(Errc::invalid_argument, std::to_string(p) + " is not prime");
  const double lam = f.lambda(p);
  const double chi = f.chi(p);
  std::vector<double> s(static_cast<std::size_t>(m_max) + 1);
  s[0] = f.divides_level(p) ? 1.0 : 2.0;
  if (m_max >= 1) s[1] = lam;
  for (int m = 2; m <= m_max; ++m) s[m] = lam * s[m - 1] - chi * s[m - 2];
  s.erase(s.begin());
  return s;
}

double von_mangoldt(const LFunctionData& f, std::uint64_t p, int m) {
  if (m < 1) throw Error(Errc::invalid_argument, "exponent must be >= 1");
  return satake_power_sums(f, p, m).back() * std::log(static_cast<double>(p));
}

double von_mangoldt_at(const LFunctionData& f, std::uint64_t n) {
  auto pp = as_prime_power(n);
  if (!pp) return 0.0;
  return von_mangoldt(f, pp->p, pp->exponent);
}

namespace {

// Completes a partially filled table (NaN = missing) by multiplicativity and
// the Hecke recursion at prime powers.
void complete_table(std::vector<double>& lam, std::uint64_t level, const std::string& source) {
  const auto limit = static_cast<std::uint32_t>(lam.size() - 1);
  const auto spf = smallest_prime_factors(limit);
  if (std::isnan(lam[1])) lam[1] = 1.0;
  for (std::uint32_t n = 2; n <= limit; ++n) {
    if (!std::isnan(lam[n])) continue;
    const std::uint32_t p = spf[n];
    std::uint32_t pe = 1;
    std::uint32_t rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
      ++e;
    }
    if (rest > 1) {
      lam[n] = lam[pe] * lam[rest];
    } else if (e == 1) {
      throw Error(Errc::data, source + ": missing coefficient for prime " + std::to_string(p));
    } else {
      const double chi = level % p == 0 ? 0.0 : 1.0;
      lam[n] = lam[p] * lam[n / p] - chi * lam[n / p / p];
    }
  }
}

}  // namespace

std::vector<double> load_coefficients(const fs::path& path, int weight, std::uint64_t level) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open coefficient file " + path.string());
  const std::string src = path.string();
  std::string raw;
  std::size_t line_no = 0;
  enum class Format { unknown, lambda, ap } format = Format::unknown;
  std::vector<std::pair<std::uint64_t, double>> entries;
  const double half_exp = (weight - 1) / 2.0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (format == Format::unknown) {
      if (line == "format: lambda") {
        format = Format::lambda;
      } else if (line == "format: ap") {
        format = Format::ap;
      } else {
        throw Error(Errc::parse, where(src, line_no) + ": expected header 'format: lambda|ap'");
      }
      continue;
    }
    std::istringstream fields{std::string(line)};
    std::string n_text, v_text, extra;
    fields >> n_text >> v_text;
    if (n_text.empty() || v_text.empty() || (fields >> extra))
      throw Error(Errc::parse, where(src, line_no) + ": expected two fields");
    std::uint64_t n = 0;
    auto [p1, e1] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
    if (e1 != std::errc() || p1 != n_text.data() + n_text.size() || n == 0)
      throw Error(Errc::parse, where(src, line_no) + ": bad index '" + n_text + "'");
    double value = 0.0;
    if (format == Format::lambda) {
      auto [p2, e2] = std::from_chars(v_text.data(), v_text.data() + v_text.size(), value);
      if (e2 != std::errc() || p2 != v_text.data() + v_text.size())
        throw Error(Errc::parse, where(src, line_no) + ": bad value '" + v_text + "'");
    } else {
      BigInt a;
      if (a.set_str(v_text, 10) != 0)
        throw Error(Errc::parse, where(src, line_no) + ": bad integer '" + v_text + "'");
      long exp2 = 0;
      double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
      value = mant * std::exp2(static_cast<double>(exp2) - half_exp * std::log2(static_cast<double>(n)));
    }
    entries.emplace_back(n, value);
  }
  if (format == Format::unknown) throw Error(Errc::parse, src + ": missing 'format:' header");
  if (entries.empty()) throw Error(Errc::data, src + ": no coefficients");
  std::uint64_t limit = 0;
  for (auto& [n, v] : entries) limit = std::max(limit, n);
  if (limit > 50'000'000) throw Error(Errc::budget, src + ": coefficient index too large");
  std::vector<double> lam(limit + 1, std::nan(""));
  lam[0] = 0.0;
  for (auto& [n, v] : entries) lam[n] = v;
  complete_table(lam, level, src);
  return lam;
}

void write_coefficients(std::ostream& out, const QExpansion& series) {
  out << "# weight " << series.weight() << ", level 1\n";
  out << "format: ap\n";
  for (std::size_t n = 1; n <= series.count(); ++n) out << n << ' ' << series[n].get_str() << '\n';
}

FormManifest parse_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
  FormManifest m;
  try {
    m.label = j.at("label").get<std::string>();
    m.level = j.at("level").get<std::uint64_t>();
    m.weight = j.at("weight").get<int>();
    m.theta_num = j.value("theta_num", std::int64_t{0});
    m.theta_den = j.value("theta_den", std::int64_t{1});
    m.coeff_path = j.at("coeff_path").get<std::string>();
    if (j.contains("zeros_path") && !j["zeros_path"].is_null())
      m.zeros_path = j["zeros_path"].get<std::string>();
    m.coeff_count = j.value("coeff_count", std::size_t{100000});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
  return m;
}

LFunctionData load_form(const fs::path& manifest_path, const LoadOptions& options) {
  const FormManifest m = parse_manifest(manifest_path);
  const fs::path base = manifest_path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  std::vector<double> lambda;
  if (m.coeff_path.rfind("qexp:", 0) == 0) {
    if (m.level != 1) throw Error(Errc::validation, "qexp generators are level 1");
    const auto series = qexpansion_by_name(m.coeff_path.substr(5),
                                           std::max(m.coeff_count, options.min_coefficients));
    if (series.weight() != m.weight)
      throw Error(Errc::validation, m.label + ": manifest weight does not match generator");
    lambda = series.normalized();
  } else {
    lambda = load_coefficients(resolve(m.coeff_path), m.weight, m.level);
    if (lambda.size() - 1 < options.min_coefficients)
      throw Error(Errc::data, m.label + ": coefficient file covers n <= " +
                                  std::to_string(lambda.size() - 1) + ", need " +
                                  std::to_string(options.min_coefficients));
  }

  std::vector<double> zeros;
  if (!m.zeros_path.empty()) {
    fs::path zpath;
    if (m.zeros_path.rfind("fixture:", 0) == 0)
      zpath = fetch_fixture(m.zeros_path.substr(8)).path;
    else
      zpath = resolve(m.zeros_path);
    zeros = parse_zeros(zpath, options.zero_limit).ordinates;
  }
  return LFunctionData(m.label, m.level, m.weight, Rational{m.theta_num, m.theta_den},
                       std::move(lambda), std::move(zeros));
}

}  // namespace zerodist
