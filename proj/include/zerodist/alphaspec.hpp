#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zerodist/common.hpp"

namespace zerodist {

using IntVector = std::vector<std::int64_t>;

// One row of the rational-relation certificate:
//   b . alpha = (a / q) * log(p) / (2 pi)
struct RelationRow {
  IntVector b;
  std::int64_t a = 0;
  std::int64_t q = 1;
  std::uint64_t p = 0;
};

// A vector alpha in R^n with its rational-relation certificate (r rows,
// possibly none) and the condition constant C_alpha.
class AlphaSpec {
 public:
  // Takes alpha as given and checks the certificate against it.
  AlphaSpec(std::vector<double> alpha, std::vector<RelationRow> rows, double c_alpha = 1.0);

  // Solves M alpha^T = (a_j/q_j log p_j / 2pi)_j. When r < n the
  // components outside the pivot columns of M are taken from
  // free_components, in increasing column order.
  static AlphaSpec solve(const std::vector<IntVector>& M, const std::vector<Rational>& targets,
                         const std::vector<std::uint64_t>& primes,
                         const std::vector<double>& free_components = {}, double c_alpha = 1.0);

  int dimension() const { return static_cast<int>(alpha_.size()); }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<RelationRow>& rows() const { return rows_; }
  std::size_t relation_count() const { return rows_.size(); }
  double c_alpha() const { return c_alpha_; }

  // max_j |b_j . alpha - a_j/q_j log p_j / 2pi|
  double residual() const;

  // Rows with a_j < 0 flipped to (-b_j, -a_j) so that every amplitude index
  // p_j^{a_j l}, l >= 1, is an integer.
  std::vector<RelationRow> canonical_rows() const;

 private:
  void validate() const;

  std::vector<double> alpha_;
  std::vector<RelationRow> rows_;
  double c_alpha_;
};

inline constexpr double kResidualTolerance = 1e-12;

AlphaSpec parse_alpha_json(const std::string& text);
AlphaSpec load_alpha(const std::filesystem::path& path);
std::string alpha_to_json(const AlphaSpec& spec);

struct ConditionReport {
  double min_ratio = 0.0;  // min |m.alpha| e^{||m||_2} over 0 < ||m||_inf <= B
  IntVector argmin;
  bool plausible = false;  // min_ratio >= C_alpha
  std::uint64_t modes_checked = 0;
};

inline constexpr double kEnumerationBudget = 1e8;

ConditionReport verify_condition(const AlphaSpec& spec, int bound);

struct IntegerMode {
  IntVector m;
  double x = 0.0;           // e^{2 pi m.alpha}
  int row = -1;             // certificate row j (0-based), -1 when unwitnessed
  std::int64_t multiple = 0;  // l with m = l q_j b_j
};

struct ModeClassification {
  std::vector<IntegerMode> witnessed;
  std::vector<IntegerMode> ambiguous;   // integral x_m without a certificate witness
  std::vector<IntegerMode> unresolved;  // x_m too large to decide at 1e-9
  double min_non_integer_distance = 0.0;
  std::uint64_t modes_checked = 0;
};

inline constexpr double kIntegerProximity = 1e-9;
inline constexpr double kMaxDecidable = 1e8;

// All m with 0 < ||m||_2 <= J whose x_m = e^{2 pi m.alpha} lies within
// 1e-9 of a positive integer. Modes with x_m above kMaxDecidable cannot be
// decided in extended precision and are listed as unresolved.
ModeClassification classify_integer_modes(const AlphaSpec& spec, double J);

}  // namespace zerodist
