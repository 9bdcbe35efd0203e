#pragma once

#include <memory>
#include <span>
#include <vector>

#include "zerodist/alphaspec.hpp"
#include "zerodist/lfunction.hpp"
#include "zerodist/torusfn.hpp"

namespace zerodist {

struct DensityValue {
  double value = 0.0;
  double tail = 0.0;  // bound on the discarded l-tail
};

// g(t) = -(2/pi) Re sum_j sum_{l>=1} Lambda(p_j^{a_j l}) / p_j^{a_j l/2}
//                                  * e^{-2 pi i q_j l (b_j.t)}
// built from the canonical certificate rows (a_j > 0).
class DensityModel {
 public:
  DensityModel(std::shared_ptr<const LFunctionData> form, std::shared_ptr<const AlphaSpec> spec);

  const LFunctionData& form() const { return *form_; }
  const AlphaSpec& spec() const { return *spec_; }
  int dimension() const { return spec_->dimension(); }

  // Lambda(p_j^{a_j l}) / p_j^{a_j l / 2}, l >= 1.
  double amplitude(std::size_t row, int l) const;
  // Mode l q_j b_j.
  IntVector mode(std::size_t row, int l) const;

  // sum_j 2 log p_j rho_j^{L+1} / (1 - rho_j), rho_j = p_j^{theta a_j - a_j/2}
  double tail_bound(int L) const;
  // Smallest L with tail_bound(L) <= tol; Errc::numeric when tol is below
  // what the precomputed series can reach.
  int terms_for(double tol) const;
  int max_terms() const;

  DensityValue eval(std::span<const double> t, double tol = 1e-12) const;
  double integrate_box(const Box& box, double tol = 1e-12) const;
  double pair(const FourierPoly& h) const;

  // Values at cell centres ((a + 1/2)/G, ...), first coordinate slowest.
  std::vector<double> sample_grid(int G, double tol = 1e-12) const;

 private:
  std::shared_ptr<const LFunctionData> form_;
  std::shared_ptr<const AlphaSpec> spec_;
  std::vector<RelationRow> rows_;
  std::vector<double> rho_;
  std::vector<std::vector<double>> amplitudes_;  // [row][l-1]
  std::vector<double> tails_;                    // tail_bound(L), L = 0..max_terms
};

inline constexpr int kMaxDensityTerms = 20000;
inline constexpr double kMinDensityTolerance = 1e-16;

// (4 log p) / (pi p^a (1 - p^{-a/2})): sup deviation of g from its first
// cosine term when alpha = a log p / (2 pi q) and theta = 0.
double truncation_envelope(std::uint64_t p, int a);

}  // namespace zerodist
