#include "zerodist/torusfn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zerodist {

namespace {

bool is_zero(const IntVector& m) {
  return std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v == 0; });
}

bool lex_positive(const IntVector& m) {
  for (auto v : m)
    if (v != 0) return v > 0;
  return false;
}

IntVector negated(IntVector m) {
  for (auto& v : m) v = -v;
  return m;
}

double norm2(const IntVector& m) {
  double s = 0.0;
  for (auto v : m) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

std::string mode_text(const IntVector& m) {
  std::string s = "(";
  for (std::size_t k = 0; k < m.size(); ++k) s += (k ? "," : "") + std::to_string(m[k]);
  return s + ")";
}

}  // namespace

FourierPoly::FourierPoly(int n) : n_(n) {
  if (n < 1) throw Error(Errc::invalid_argument, "torus dimension must be >= 1");
}

void FourierPoly::add(const IntVector& m, Complex c) {
  if (m.size() != static_cast<std::size_t>(n_))
    throw Error(Errc::validation, "mode " + mode_text(m) + " has wrong dimension");
  if (c == Complex{}) return;
  if (lex_positive(m)) {
    modes_[m] += c;
  } else {
    modes_[is_zero(m) ? m : negated(m)] += std::conj(c);
  }
}

FourierPoly FourierPoly::from_modes(int n, const std::vector<std::pair<IntVector, Complex>>& modes) {
  FourierPoly out(n);
  std::map<IntVector, Complex> given;
  for (const auto& [m, c] : modes) {
    if (m.size() != static_cast<std::size_t>(n))
      throw Error(Errc::validation, "mode " + mode_text(m) + " has wrong dimension");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(Errc::validation, "mode " + mode_text(m) + " has a non-finite coefficient");
    if (!given.emplace(m, c).second)
      throw Error(Errc::validation, "mode " + mode_text(m) + " given twice");
  }
  for (const auto& [m, c] : given) {
    if (is_zero(m)) {
      if (std::abs(c.imag()) > kRealityTolerance)
        throw Error(Errc::validation, "c_0 must be real");
      out.add(m, Complex(c.real(), 0.0));
      continue;
    }
    const IntVector mirror = negated(m);
    auto it = given.find(mirror);
    if (it == given.end()) {
      out.add(m, c);
    } else if (lex_positive(m)) {
      if (std::abs(it->second - std::conj(c)) > kRealityTolerance)
        throw Error(Errc::validation, "reality violated: c_{-m} != conj(c_m) at m = " + mode_text(m));
      out.add(m, c);
    }
  }
  return out;
}

FourierPoly FourierPoly::constant(int n, double value) {
  FourierPoly out(n);
  out.add(IntVector(static_cast<std::size_t>(n), 0), Complex(value, 0.0));
  return out;
}

FourierPoly FourierPoly::cosine(const IntVector& m, double amplitude) {
  if (m.empty()) throw Error(Errc::invalid_argument, "mode must be nonempty");
  FourierPoly out(static_cast<int>(m.size()));
  if (is_zero(m)) {
    out.add(m, Complex(amplitude, 0.0));
  } else {
    out.add(m, Complex(amplitude / 2.0, 0.0));
  }
  return out;
}

Complex FourierPoly::coefficient(const IntVector& m) const {
  if (is_zero(m) || lex_positive(m)) {
    auto it = modes_.find(m);
    return it == modes_.end() ? Complex{} : it->second;
  }
  auto it = modes_.find(negated(m));
  return it == modes_.end() ? Complex{} : std::conj(it->second);
}

double FourierPoly::eval(std::span<const double> t) const {
  if (t.size() != static_cast<std::size_t>(n_))
    throw Error(Errc::invalid_argument, "evaluation point has wrong dimension");
  double value = 0.0;
  for (const auto& [m, c] : modes_) {
    if (is_zero(m)) {
      value += c.real();
      continue;
    }
    double phase = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) phase += static_cast<double>(m[k]) * t[k];
    phase = kTwoPi * (phase - std::floor(phase));
    value += 2.0 * (c.real() * std::cos(phase) - c.imag() * std::sin(phase));
  }
  return value;
}

double FourierPoly::integral() const {
  return coefficient(IntVector(static_cast<std::size_t>(n_), 0)).real();
}

double FourierPoly::max_norm2() const {
  double j = 0.0;
  for (const auto& entry : modes_) j = std::max(j, norm2(entry.first));
  return j;
}

double FourierPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& [m, c] : modes_) s += (is_zero(m) ? 1.0 : 2.0) * std::abs(c);
  return s;
}

double FourierPoly::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& [m, c] : modes_) s += (is_zero(m) ? 1.0 : 2.0) * std::norm(c);
  return s;
}

std::size_t FourierPoly::mode_count() const {
  std::size_t count = 0;
  for (const auto& entry : modes_) count += is_zero(entry.first) ? 1 : 2;
  return count;
}

FourierPoly FourierPoly::operator+(const FourierPoly& other) const {
  if (other.n_ != n_) throw Error(Errc::invalid_argument, "cannot add functions on different tori");
  FourierPoly out = *this;
  for (const auto& [m, c] : other.modes_) out.modes_[m] += c;
  return out;
}

FourierPoly FourierPoly::scaled(double factor) const {
  FourierPoly out = *this;
  for (auto& entry : out.modes_) entry.second *= factor;
  return out;
}

double k_h(const FourierPoly& h) {
  if (h.dimension() != 1) throw Error(Errc::invalid_argument, "k_h is defined for n = 1 only");
  return h.coefficient({1}).real();
}

Complex interval_coefficient(std::int64_t c, const Interval& side) {
  if (c == 0) return {side.length(), 0.0};
  const double w = kTwoPi * static_cast<double>(c);
  const Complex a = std::polar(1.0, -w * side.hi);
  const Complex b = std::polar(1.0, -w * side.lo);
  return (a - b) / Complex(0.0, -w);
}

double fejer_weight(int K, std::int64_t m) {
  const auto a = m < 0 ? -m : m;
  if (a > K) return 0.0;
  return 1.0 - static_cast<double>(a) / static_cast<double>(K + 1);
}

SmoothedBox smoothed_box(const Box& box, double eps, double J) {
  if (box.empty()) throw Error(Errc::invalid_argument, "box must have at least one side");
  if (!(J >= 1.0)) throw Error(Errc::invalid_argument, "truncation J must be >= 1");
  double min_side = 1.0;
  for (const auto& side : box) {
    if (!(side.hi > side.lo) || side.length() > 1.0)
      throw Error(Errc::invalid_argument, "box sides must satisfy lo < hi <= lo + 1");
    min_side = std::min(min_side, side.length());
  }
  if (!(eps > 0.0) || !(eps < min_side / 2.0))
    throw Error(Errc::invalid_argument, "eps must lie in (0, min side / 2)");
  const int n = static_cast<int>(box.size());
  const int K = static_cast<int>(std::ceil(1.0 / eps)) - 1;
  if (std::pow(2.0 * K + 1.0, n) > kSmoothedBoxBudget)
    throw Error(Errc::budget, "smoothed box needs more than 1e7 modes; increase eps");

  // Per-axis factors for m_k in [-K, K].
  std::vector<std::vector<Complex>> axis(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto& side = box[static_cast<std::size_t>(k)];
    const bool full = side.length() == 1.0;
    for (int m = -K; m <= K; ++m) {
      Complex c = full ? Complex(m == 0 ? 1.0 : 0.0, 0.0) : interval_coefficient(m, side);
      axis[static_cast<std::size_t>(k)].push_back(c * fejer_weight(K, m));
    }
  }

  SmoothedBox out{FourierPoly(n), K, 0.0, 0.0};
  std::vector<std::pair<IntVector, Complex>> kept;
  CompensatedSum dropped;
  IntVector m(static_cast<std::size_t>(n), -K);
  const double j2 = J * J;
  while (true) {
    Complex c = 1.0;
    double m2 = 0.0;
    for (int k = 0; k < n; ++k) {
      c *= axis[static_cast<std::size_t>(k)][static_cast<std::size_t>(m[static_cast<std::size_t>(k)] + K)];
      m2 += static_cast<double>(m[static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)]);
    }
    if (c != Complex{}) {
      if (m2 <= j2) {
        if (is_zero(m) || lex_positive(m)) kept.emplace_back(m, c);
      } else {
        dropped.add(std::abs(c));
      }
    }
    int k = n - 1;
    while (k >= 0 && m[static_cast<std::size_t>(k)] == K) m[static_cast<std::size_t>(k--)] = -K;
    if (k < 0) break;
    ++m[static_cast<std::size_t>(k)];
  }
  out.h = FourierPoly::from_modes(n, kept);
  out.dropped_l1 = dropped.value();
  // Fejer mass outside [-eps, eps] is at most 2 cot(pi eps) / (pi (K+1)).
  const double tail = 2.0 / (std::tan(kPi * eps) * kPi * (K + 1));
  out.kernel_slack = std::min(1.0, n * tail);
  return out;
}

FourierPoly parse_fourier_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("test function: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<IntVector, Complex>> modes;
    for (const auto& entry : j.at("modes")) {
      modes.emplace_back(entry.at("m").get<IntVector>(),
                         Complex(entry.value("re", 0.0), entry.value("im", 0.0)));
    }
    return FourierPoly::from_modes(n, modes);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("test function: ") + e.what());
  }
}

FourierPoly load_fourier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open test function " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fourier_json(ss.str());
}

std::string fourier_to_json(const FourierPoly& h) {
  nlohmann::json j;
  j["n"] = h.dimension();
  auto modes = nlohmann::json::array();
  for (const auto& [m, c] : h.stored_modes()) modes.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  j["modes"] = modes;
  return j.dump();
}

}  // namespace zerodist
