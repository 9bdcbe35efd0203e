#include "zerodist/zerodist.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "zerodist/alphaspec.hpp"
#include "zerodist/density.hpp"
#include "zerodist/fixtures.hpp"
#include "zerodist/lfunction.hpp"
#include "zerodist/mollifier.hpp"
#include "zerodist/qexpansion.hpp"
#include "zerodist/races.hpp"
#include "zerodist/report.hpp"
#include "zerodist/satotate.hpp"
#include "zerodist/torusfn.hpp"
#include "zerodist/zerostats.hpp"

using namespace zerodist;
using nlohmann::json;

struct zd_form {
  std::shared_ptr<const LFunctionData> ptr;
};
struct zd_alpha {
  std::shared_ptr<const AlphaSpec> ptr;
};
struct zd_fourier {
  FourierPoly h;
};
struct zd_density {
  DensityModel model;
};
struct zd_mollifier {
  MollifierData data;
};

namespace {

thread_local std::string g_last_error;

zd_status to_status(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return ZD_ERR_INVALID_ARGUMENT;
    case Errc::parse: return ZD_ERR_PARSE;
    case Errc::validation: return ZD_ERR_VALIDATION;
    case Errc::range: return ZD_ERR_RANGE;
    case Errc::data: return ZD_ERR_DATA;
    case Errc::io: return ZD_ERR_IO;
    case Errc::budget: return ZD_ERR_BUDGET;
    case Errc::numeric: return ZD_ERR_NUMERIC;
    case Errc::integrity: return ZD_ERR_INTEGRITY;
  }
  return ZD_ERR_INTERNAL;
}

template <typename Fn>
zd_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ZD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ZD_ERR_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ZD_ERR_INTERNAL;
  }
}

template <typename T>
const T& need(const T* p, const char* what) {
  if (!p) throw Error(Errc::invalid_argument, std::string(what) + " is null");
  return *p;
}

template <typename T>
T* need_out(T* p, const char* what) {
  if (!p) throw Error(Errc::invalid_argument, std::string("output ") + what + " is null");
  return p;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) { *need_out(out, "string") = dup_string(j.dump()); }

json mode_json(const IntegerMode& m) {
  json j{{"m", m.m}, {"x", m.x}};
  if (m.row >= 0) {
    j["row"] = m.row + 1;
    j["l"] = m.multiple;
  }
  return j;
}

std::vector<double> point(const double* t, int n) {
  need(t, "point");
  return std::vector<double>(t, t + n);
}

Box make_box(const double* lo, const double* hi, int n) {
  need(lo, "lo");
  need(hi, "hi");
  Box box;
  for (int k = 0; k < n; ++k) box.push_back({lo[k], hi[k]});
  return box;
}

std::size_t cell_count(int G, int n) {
  if (G < 1) throw Error(Errc::invalid_argument, "grid size must be >= 1");
  double cells = 1.0;
  for (int k = 0; k < n; ++k) cells *= G;
  if (cells > 1e8) throw Error(Errc::budget, "grid has more than 1e8 cells");
  return static_cast<std::size_t>(cells);
}

}  // namespace

extern "C" {

const char* zd_version(void) { return "1.0.0"; }

const char* zd_status_string(zd_status status) {
  switch (status) {
    case ZD_OK: return "ok";
    case ZD_ERR_INTERNAL: return "internal_error";
    default: break;
  }
  if (status >= ZD_ERR_INVALID_ARGUMENT && status <= ZD_ERR_INTEGRITY)
    return errc_name(static_cast<Errc>(status));
  return "unknown_status";
}

const char* zd_last_error(void) { return g_last_error.c_str(); }

void zd_string_free(char* s) { std::free(s); }

zd_status zd_form_load(const char* manifest_path, size_t min_coefficients, zd_form** out) {
  return guarded([&] {
    need(manifest_path, "manifest path");
    LoadOptions options;
    options.min_coefficients = min_coefficients;
    auto form = std::make_shared<const LFunctionData>(load_form(manifest_path, options));
    *need_out(out, "form") = new zd_form{std::move(form)};
  });
}

zd_status zd_form_from_series(const char* name, size_t count, zd_form** out) {
  return guarded([&] {
    need(name, "series name");
    const auto series = qexpansion_by_name(name, count);
    auto form = std::make_shared<const LFunctionData>(LFunctionData::from_qexpansion(name, series));
    *need_out(out, "form") = new zd_form{std::move(form)};
  });
}

void zd_form_free(zd_form* form) { delete form; }

zd_status zd_form_info_get(const zd_form* form, zd_form_info* out) {
  return guarded([&] {
    const auto& f = *need(form, "form").ptr;
    auto* info = need_out(out, "info");
    info->label = f.label().c_str();
    info->level = f.level();
    info->weight = f.weight();
    info->theta = f.theta();
    info->coefficient_limit = f.coefficient_limit();
    info->zero_count = f.zeros().size();
    info->t_max = f.t_max();
  });
}

zd_status zd_form_lambda(const zd_form* form, uint64_t n, double* out) {
  return guarded([&] { *need_out(out, "value") = need(form, "form").ptr->lambda(n); });
}

zd_status zd_form_zeros(const zd_form* form, const double** ordinates, size_t* count) {
  return guarded([&] {
    const auto zeros = need(form, "form").ptr->zeros();
    *need_out(ordinates, "ordinates") = zeros.data();
    *need_out(count, "count") = zeros.size();
  });
}

zd_status zd_satake_power_sums(const zd_form* form, uint64_t p, int m_max, double* out) {
  return guarded([&] {
    const auto sums = satake_power_sums(*need(form, "form").ptr, p, m_max);
    std::copy(sums.begin(), sums.end(), need_out(out, "sums"));
  });
}

zd_status zd_von_mangoldt(const zd_form* form, uint64_t p, int m, double* out) {
  return guarded([&] { *need_out(out, "value") = von_mangoldt(*need(form, "form").ptr, p, m); });
}

zd_status zd_von_mangoldt_at(const zd_form* form, uint64_t n, double* out) {
  return guarded([&] { *need_out(out, "value") = von_mangoldt_at(*need(form, "form").ptr, n); });
}

zd_status zd_series_json(const char* name, size_t count, char** out) {
  return guarded([&] {
    need(name, "series name");
    const auto series = qexpansion_by_name(name, count);
    json arr = json::array();
    for (std::size_t n = 1; n <= series.count(); ++n) arr.push_back(series[n].get_str());
    emit(out, arr);
  });
}

zd_status zd_alpha_load(const char* path, zd_alpha** out) {
  return guarded([&] {
    need(path, "path");
    *need_out(out, "alpha") = new zd_alpha{std::make_shared<const AlphaSpec>(load_alpha(path))};
  });
}

zd_status zd_alpha_parse(const char* text, zd_alpha** out) {
  return guarded([&] {
    need(text, "json");
    *need_out(out, "alpha") = new zd_alpha{std::make_shared<const AlphaSpec>(parse_alpha_json(text))};
  });
}

zd_status zd_alpha_solve(size_t r, size_t n, const int64_t* M, const int64_t* a, const int64_t* q,
                         const uint64_t* primes, const double* free_components, double c_alpha, zd_alpha** out) {
  return guarded([&] {
    if (r > 0) {
      need(M, "M");
      need(a, "a");
      need(q, "q");
      need(primes, "primes");
    }
    if (n > r) need(free_components, "free components");
    std::vector<IntVector> rows;
    std::vector<Rational> targets;
    std::vector<std::uint64_t> ps;
    for (size_t j = 0; j < r; ++j) {
      rows.emplace_back(M + j * n, M + (j + 1) * n);
      targets.push_back({a[j], q[j]});
      ps.push_back(primes[j]);
    }
    std::vector<double> free;
    if (n > r) free.assign(free_components, free_components + (n - r));
    auto spec = r == 0 ? AlphaSpec(free, {}, c_alpha) : AlphaSpec::solve(rows, targets, ps, free, c_alpha);
    *need_out(out, "alpha") = new zd_alpha{std::make_shared<const AlphaSpec>(std::move(spec))};
  });
}

void zd_alpha_free(zd_alpha* alpha) { delete alpha; }

zd_status zd_alpha_values(const zd_alpha* alpha, const double** values, size_t* n) {
  return guarded([&] {
    const auto& v = need(alpha, "alpha").ptr->alpha();
    *need_out(values, "values") = v.data();
    *need_out(n, "n") = v.size();
  });
}

zd_status zd_alpha_residual(const zd_alpha* alpha, double* out) {
  return guarded([&] { *need_out(out, "residual") = need(alpha, "alpha").ptr->residual(); });
}

zd_status zd_alpha_to_json(const zd_alpha* alpha, char** out) {
  return guarded([&] { *need_out(out, "string") = dup_string(alpha_to_json(*need(alpha, "alpha").ptr)); });
}

zd_status zd_alpha_verify_condition(const zd_alpha* alpha, int bound, char** out) {
  return guarded([&] {
    const auto report = verify_condition(*need(alpha, "alpha").ptr, bound);
    emit(out, json{{"min_ratio", report.min_ratio},
                   {"argmin", report.argmin},
                   {"plausible", report.plausible},
                   {"modes_checked", report.modes_checked}});
  });
}

zd_status zd_alpha_classify_modes(const zd_alpha* alpha, double J, char** out) {
  return guarded([&] {
    const auto c = classify_integer_modes(*need(alpha, "alpha").ptr, J);
    json j{{"modes_checked", c.modes_checked},
           {"witnessed", json::array()},
           {"ambiguous", json::array()},
           {"unresolved", json::array()}};
    for (const auto& m : c.witnessed) j["witnessed"].push_back(mode_json(m));
    for (const auto& m : c.ambiguous) j["ambiguous"].push_back(mode_json(m));
    for (const auto& m : c.unresolved) j["unresolved"].push_back(mode_json(m));
    if (std::isfinite(c.min_non_integer_distance)) j["min_non_integer_distance"] = c.min_non_integer_distance;
    emit(out, j);
  });
}

zd_status zd_fourier_parse(const char* text, zd_fourier** out) {
  return guarded([&] {
    need(text, "json");
    *need_out(out, "function") = new zd_fourier{parse_fourier_json(text)};
  });
}

zd_status zd_fourier_load(const char* path, zd_fourier** out) {
  return guarded([&] {
    need(path, "path");
    *need_out(out, "function") = new zd_fourier{load_fourier(path)};
  });
}

zd_status zd_fourier_constant(int n, double value, zd_fourier** out) {
  return guarded([&] { *need_out(out, "function") = new zd_fourier{FourierPoly::constant(n, value)}; });
}

zd_status zd_fourier_cosine(int n, const int64_t* m, double amplitude, zd_fourier** out) {
  return guarded([&] {
    need(m, "mode");
    if (n < 1) throw Error(Errc::invalid_argument, "dimension must be >= 1");
    *need_out(out, "function") = new zd_fourier{FourierPoly::cosine(IntVector(m, m + n), amplitude)};
  });
}

zd_status zd_fourier_add(const zd_fourier* a, const zd_fourier* b, zd_fourier** out) {
  return guarded([&] { *need_out(out, "function") = new zd_fourier{need(a, "a").h + need(b, "b").h}; });
}

zd_status zd_fourier_smoothed_box(int n, const double* lo, const double* hi, double eps, double J, zd_fourier** out,
                                  double* slack) {
  return guarded([&] {
    if (n < 1) throw Error(Errc::invalid_argument, "dimension must be >= 1");
    auto box = smoothed_box(make_box(lo, hi, n), eps, J);
    if (slack) *slack = box.sandwich_slack();
    *need_out(out, "function") = new zd_fourier{std::move(box.h)};
  });
}

void zd_fourier_free(zd_fourier* h) { delete h; }

zd_status zd_fourier_eval(const zd_fourier* h, const double* t, double* out) {
  return guarded([&] {
    const auto& f = need(h, "function").h;
    *need_out(out, "value") = f.eval(point(t, f.dimension()));
  });
}

zd_status zd_fourier_integral(const zd_fourier* h, double* out) {
  return guarded([&] { *need_out(out, "value") = need(h, "function").h.integral(); });
}

zd_status zd_fourier_k_h(const zd_fourier* h, double* out) {
  return guarded([&] { *need_out(out, "value") = k_h(need(h, "function").h); });
}

zd_status zd_fourier_to_json(const zd_fourier* h, char** out) {
  return guarded([&] { *need_out(out, "string") = dup_string(fourier_to_json(need(h, "function").h)); });
}

zd_status zd_density_create(const zd_form* form, const zd_alpha* alpha, zd_density** out) {
  return guarded([&] {
    DensityModel model(need(form, "form").ptr, need(alpha, "alpha").ptr);
    *need_out(out, "density") = new zd_density{std::move(model)};
  });
}

void zd_density_free(zd_density* density) { delete density; }

zd_status zd_density_eval(const zd_density* density, const double* t, double tol, double* value, double* tail) {
  return guarded([&] {
    const auto& m = need(density, "density").model;
    const auto r = m.eval(point(t, m.dimension()), tol);
    *need_out(value, "value") = r.value;
    if (tail) *tail = r.tail;
  });
}

zd_status zd_density_tail_bound(const zd_density* density, int L, double* out) {
  return guarded([&] { *need_out(out, "value") = need(density, "density").model.tail_bound(L); });
}

zd_status zd_density_integrate_box(const zd_density* density, const double* lo, const double* hi, double tol,
                                   double* out) {
  return guarded([&] {
    const auto& m = need(density, "density").model;
    *need_out(out, "value") = m.integrate_box(make_box(lo, hi, m.dimension()), tol);
  });
}

zd_status zd_density_pair(const zd_density* density, const zd_fourier* h, double* out) {
  return guarded([&] { *need_out(out, "value") = need(density, "density").model.pair(need(h, "function").h); });
}

zd_status zd_density_grid(const zd_density* density, int G, double tol, double* out, size_t capacity) {
  return guarded([&] {
    const auto& m = need(density, "density").model;
    if (capacity < cell_count(G, m.dimension())) throw Error(Errc::invalid_argument, "output buffer too small");
    const auto grid = m.sample_grid(G, tol);
    std::copy(grid.begin(), grid.end(), need_out(out, "grid"));
  });
}

zd_status zd_count_zeros(const zd_form* form, double T, uint64_t* out) {
  return guarded([&] { *need_out(out, "count") = count_zeros(*need(form, "form").ptr, T); });
}

zd_status zd_rvm_main(double q, double T, double* out) {
  return guarded([&] { *need_out(out, "value") = rvm_main(q, T); });
}

zd_status zd_zero_count_scan(const zd_form* form, size_t stride, char** out) {
  return guarded([&] {
    const auto scan = scan_zero_counts(*need(form, "form").ptr, stride);
    json samples = json::array();
    for (const auto& s : scan.samples)
      samples.push_back({{"T", s.T}, {"n_emp", s.n_emp}, {"n_main", s.n_main}, {"error", s.error}});
    emit(out, json{{"c_fit", scan.c_fit}, {"t_worst", scan.t_worst}, {"points", scan.points}, {"samples", samples}});
  });
}

zd_status zd_histogram(const zd_form* form, const zd_alpha* alpha, double T, int G, uint64_t* counts,
                       size_t capacity, uint64_t* total) {
  return guarded([&] {
    const auto& spec = *need(alpha, "alpha").ptr;
    if (capacity < cell_count(G, spec.dimension())) throw Error(Errc::invalid_argument, "output buffer too small");
    const auto points = fractional_parts(*need(form, "form").ptr, spec, T);
    const auto hist = grid_histogram(points, spec.dimension(), G, T);
    std::copy(hist.counts.begin(), hist.counts.end(), need_out(counts, "counts"));
    if (total) *total = hist.total;
  });
}

zd_status zd_predicted_counts(const zd_density* density, double n_t, double T, int G, double tol, double* out,
                              size_t capacity) {
  return guarded([&] {
    const auto& m = need(density, "density").model;
    if (capacity < cell_count(G, m.dimension())) throw Error(Errc::invalid_argument, "output buffer too small");
    const auto cells = predicted_cell_counts(m, n_t, T, G, tol);
    std::copy(cells.begin(), cells.end(), need_out(out, "counts"));
  });
}

zd_status zd_weighted_sum(const zd_density* density, const zd_fourier* h, double T, zd_weighted_sum_result* out) {
  return guarded([&] {
    const auto r = weighted_sum(need(density, "density").model, need(h, "function").h, T);
    *need_out(out, "result") = {r.S, r.n_emp, r.pairing, r.residual};
  });
}

zd_status zd_landau_sum(const zd_form* form, double x, double T, zd_landau_result* out) {
  return guarded([&] {
    const auto r = landau_sum(*need(form, "form").ptr, x, T);
    *need_out(out, "result") = {r.S, r.nearest, r.prediction, r.envelope};
  });
}

zd_status zd_discrepancy(const zd_form* form, const zd_alpha* alpha, double T, int G, double* out) {
  return guarded(
      [&] { *need_out(out, "value") = discrepancy(*need(form, "form").ptr, *need(alpha, "alpha").ptr, T, G); });
}

zd_status zd_discrepancy_lower_bound(const zd_density* density, double n_emp, double T, int G, double* out) {
  return guarded([&] {
    *need_out(out, "value") = discrepancy_lower_bound(need(density, "density").model, n_emp, T, G);
  });
}

zd_status zd_zero_density_count(const zd_form* form, double sigma, double T, double c, uint64_t* count,
                                double* bound) {
  return guarded([&] {
    const auto r = zero_density_count(*need(form, "form").ptr, sigma, T, c);
    *need_out(count, "count") = r.count;
    if (bound) *bound = r.bound;
  });
}

zd_status zd_mu_st(double lo, double hi, double* out) {
  return guarded([&] { *need_out(out, "value") = mu_st({lo, hi}); });
}

zd_status zd_nu(double lo, double hi, double tol, double* value, double* error) {
  return guarded([&] {
    const auto r = nu({lo, hi}, tol);
    *need_out(value, "value") = r.value;
    if (error) *error = r.error;
  });
}

zd_status zd_st_quartiles(double out[3]) {
  return guarded([&] {
    const auto q = st_quartiles();
    std::copy(q.begin(), q.end(), need_out(out, "quartiles"));
  });
}

zd_status zd_empirical_joint(const zd_form* f1, const zd_form* f2, double X, double lo1, double hi1, double lo2,
                             double hi2, double* fraction, uint64_t* primes) {
  return guarded([&] {
    const auto r = empirical_joint(*need(f1, "f1").ptr, *need(f2, "f2").ptr, X, {lo1, hi1}, {lo2, hi2});
    *need_out(fraction, "fraction") = r.fraction();
    if (primes) *primes = r.primes;
  });
}

zd_status zd_effective_bound(double k1, double k2, double q1, double q2, double log_x, double c, double* out) {
  return guarded([&] { *need_out(out, "value") = effective_bound(k1, k2, q1, q2, log_x, c); });
}

zd_status zd_epsilon_from_log(double log_x, double* out) {
  return guarded([&] { *need_out(out, "value") = epsilon_from_log(log_x); });
}

zd_status zd_h_value(const zd_form* f1, const zd_form* f2, const zd_fourier* h, const zd_alpha* alpha, double* out) {
  return guarded([&] {
    *need_out(out, "value") =
        h_value(need(f1, "f1").ptr, need(f2, "f2").ptr, need(h, "function").h, need(alpha, "alpha").ptr);
  });
}

zd_status zd_winner_criterion(const zd_form* f1, const zd_form* f2, const zd_fourier* h, uint64_t p, int* holds,
                              double* lhs, double* rhs) {
  return guarded([&] {
    const auto r = winner_criterion(*need(f1, "f1").ptr, *need(f2, "f2").ptr, need(h, "function").h, p);
    *need_out(holds, "holds") = r.holds ? 1 : 0;
    if (lhs) *lhs = r.lhs;
    if (rhs) *rhs = r.rhs;
  });
}

zd_status zd_race_census(const zd_form* f1, const zd_form* f2, const zd_fourier* h, uint64_t X, int include_records,
                         char** out) {
  return guarded([&] {
    const auto r = race_census(*need(f1, "f1").ptr, *need(f2, "f2").ptr, need(h, "function").h, X,
                               include_records != 0);
    json j{{"X", r.X},
           {"primes", r.primes},
           {"f1_wins", r.f1_wins},
           {"f2_wins", r.f2_wins},
           {"undecided", r.undecided},
           {"f1_fraction", r.f1_fraction()},
           {"f2_fraction", r.f2_fraction()},
           {"undecided_fraction", r.undecided_fraction()},
           {"equal_levels", r.equal_levels}};
    if (include_records) {
      json records = json::array();
      for (const auto& rec : r.records)
        records.push_back({{"p", rec.p}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"winner", winner_name(rec.winner)}});
      j["records"] = records;
    }
    emit(out, j);
  });
}

zd_status zd_finite_prime_bound(uint64_t q1, uint64_t q2, uint64_t* out) {
  return guarded([&] { *need_out(out, "bound") = finite_prime_bound(q1, q2); });
}

zd_status zd_local_race(const zd_form* f1, const zd_form* f2, const zd_alpha* alpha, double t0, char** out) {
  return guarded([&] {
    const auto r = local_race(need(f1, "f1").ptr, need(f2, "f2").ptr, need(alpha, "alpha").ptr, t0);
    json j{{"holds", r.holds}, {"margin", r.margin}, {"g1", r.g1}, {"g2", r.g2}};
    if (r.sufficient)
      j["sufficient"] = {{"holds", r.sufficient->holds}, {"lhs", r.sufficient->lhs}, {"rhs", r.sufficient->rhs}};
    emit(out, j);
  });
}

zd_status zd_local_race_search(const zd_form* f1, const zd_form* f2, double t0, uint64_t Y, uint64_t X,
                               uint64_t* p) {
  return guarded([&] {
    const auto r = local_race_search(*need(f1, "f1").ptr, *need(f2, "f2").ptr, t0, Y, X);
    *need_out(p, "p") = r.value_or(0);
  });
}

zd_status zd_h_distribution(const zd_form* f1, const zd_form* f2, const zd_fourier* h, double X, size_t count,
                            const double* lo, const double* hi, char** out) {
  return guarded([&] {
    const auto& fn = need(h, "function").h;
    std::vector<Interval> intervals;
    if (count == 0) {
      intervals = h_bins(k_h(fn), 8);
    } else {
      need(lo, "lo");
      need(hi, "hi");
      for (size_t i = 0; i < count; ++i) intervals.push_back({lo[i], hi[i]});
    }
    const auto r = h_distribution(*need(f1, "f1").ptr, *need(f2, "f2").ptr, fn, X, intervals);
    json bins = json::array();
    for (const auto& b : r.bins)
      bins.push_back({{"lo", b.scaled.lo}, {"hi", b.scaled.hi}, {"fraction", b.fraction}, {"nu", b.nu}});
    emit(out, json{{"X", r.X},
                   {"epsilon", r.epsilon},
                   {"window", {r.window_lo, r.window_hi}},
                   {"primes", r.primes},
                   {"k_h", r.k_h},
                   {"bins", bins}});
  });
}

zd_status zd_mollifier_create(const zd_form* form, double T, double varpi, zd_mollifier** out) {
  return guarded([&] {
    MollifierData data(need(form, "form").ptr, T, varpi);
    *need_out(out, "mollifier") = new zd_mollifier{std::move(data)};
  });
}

void zd_mollifier_free(zd_mollifier* m) { delete m; }

zd_status zd_mollifier_length(const zd_mollifier* m, uint64_t* out) {
  return guarded([&] { *need_out(out, "length") = need(m, "mollifier").data.length(); });
}

zd_status zd_mollifier_mu(const zd_mollifier* m, uint64_t n, double* out) {
  return guarded([&] {
    const auto& mu = need(m, "mollifier").data.mu();
    if (n < 1 || n >= mu.size()) throw Error(Errc::range, "n outside the mollifier table");
    *need_out(out, "value") = mu[n];
  });
}

zd_status zd_mollifier_value(const zd_mollifier* m, double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    const auto v = need(m, "mollifier").data.value({re, im});
    *need_out(out_re, "real part") = v.real();
    *need_out(out_im, "imaginary part") = v.imag();
  });
}

zd_status zd_mollifier_defect(const zd_mollifier* m, double* out) {
  return guarded([&] { *need_out(out, "value") = need(m, "mollifier").data.convolution_defect(); });
}

zd_status zd_taper(double t, double T, double varpi, double* out) {
  return guarded([&] { *need_out(out, "value") = taper(t, T, varpi); });
}

zd_status zd_render_heatmap(const double* grid, size_t rows, size_t cols, const char* title, char** svg) {
  return guarded([&] {
    need(grid, "grid");
    *need_out(svg, "svg") =
        dup_string(render_heatmap(std::span(grid, rows * cols), rows, cols, title ? title : ""));
  });
}

zd_status zd_fixture_fetch(const char* name, const char* source, char** path, int* cache_hit) {
  return guarded([&] {
    need(name, "fixture name");
    const auto r = fetch_fixture(name, source ? std::optional<std::string>(source) : std::nullopt);
    *need_out(path, "path") = dup_string(r.path.string());
    if (cache_hit) *cache_hit = r.cache_hit ? 1 : 0;
  });
}

zd_status zd_sha256_file(const char* path, char** hex) {
  return guarded([&] {
    need(path, "path");
    *need_out(hex, "hex") = dup_string(sha256_file(path));
  });
}

}  // extern "C"
