#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zerodist/common.hpp"
#include "zerodist/qexpansion.hpp"

namespace zerodist {

struct ZeroList {
  std::vector<double> ordinates;  // strictly increasing, positive
  double t_max = 0.0;             // last ordinate read, 0 when empty
};

// One decimal ordinate per line; blank lines and '#' comments are skipped.
ZeroList parse_zeros(std::istream& in, std::optional<std::size_t> limit = std::nullopt,
                     std::string_view source = "<stream>");
ZeroList parse_zeros(const std::filesystem::path& path,
                     std::optional<std::size_t> limit = std::nullopt);

// Shortest round-trip decimal text, one ordinate per line.
void write_zeros(std::ostream& out, std::span<const double> ordinates);

// A GL(2) holomorphic newform with trivial nebentypus: analytically
// normalized Hecke eigenvalues lambda(n) for n <= coefficient_limit() and the
// positive zero ordinates of L(s, f). Immutable once constructed.
class LFunctionData {
 public:
  LFunctionData(std::string label, std::uint64_t level, int weight, Rational theta,
                std::vector<double> lambda, std::vector<double> zeros);

  static LFunctionData from_qexpansion(std::string label, const QExpansion& series,
                                       std::vector<double> zeros = {});

  const std::string& label() const { return label_; }
  std::uint64_t level() const { return level_; }
  int weight() const { return weight_; }
  const Rational& theta_rational() const { return theta_; }
  double theta() const { return theta_.value(); }

  std::uint64_t coefficient_limit() const { return lambda_.empty() ? 0 : lambda_.size() - 1; }
  // Throws Errc::data when n exceeds the stored range.
  double lambda(std::uint64_t n) const;
  std::span<const double> lambda_table() const { return lambda_; }

  bool divides_level(std::uint64_t p) const { return level_ % p == 0; }
  double chi(std::uint64_t p) const { return divides_level(p) ? 0.0 : 1.0; }

  std::span<const double> zeros() const { return zeros_; }
  bool has_zeros() const { return !zeros_.empty(); }
  double t_max() const { return zeros_.empty() ? 0.0 : zeros_.back(); }

 private:
  void validate() const;

  std::string label_;
  std::uint64_t level_;
  int weight_;
  Rational theta_;
  std::vector<double> lambda_;
  std::vector<double> zeros_;
};

// Power sums s_1..s_{m_max} of the Satake parameters at p:
// s_m = lambda(p) s_{m-1} - chi(p) s_{m-2}, s_0 = 2 (p not dividing q) or 1.
std::vector<double> satake_power_sums(const LFunctionData& f, std::uint64_t p, int m_max);

// Lambda_f(p^m) = s_m(p) log p.
double von_mangoldt(const LFunctionData& f, std::uint64_t p, int m);

// Lambda_f(n); zero unless n is a prime power.
double von_mangoldt_at(const LFunctionData& f, std::uint64_t n);

// Coefficient file: header "format: lambda" (lines "n value") or
// "format: ap" (lines "p a_p" with integer a_p, normalized by the weight).
// Values missing for composite n are filled in by Hecke multiplicativity.
std::vector<double> load_coefficients(const std::filesystem::path& path, int weight,
                                      std::uint64_t level);

// Writes "format: ap" with a(n) for every n in the expansion.
void write_coefficients(std::ostream& out, const QExpansion& series);

struct FormManifest {
  std::string label;
  std::uint64_t level = 1;
  int weight = 2;
  std::int64_t theta_num = 0;
  std::int64_t theta_den = 1;
  std::string coeff_path;  // file path, or "qexp:<delta|delta_e4>"
  std::string zeros_path;  // file path, "fixture:<name>", or empty
  std::size_t coeff_count = 100000;
};

FormManifest parse_manifest(const std::filesystem::path& path);

struct LoadOptions {
  std::size_t min_coefficients = 0;
  std::optional<std::size_t> zero_limit;
};

// Relative paths in the manifest resolve against the manifest's directory.
LFunctionData load_form(const std::filesystem::path& manifest_path, const LoadOptions& options = {});

}  // namespace zerodist
