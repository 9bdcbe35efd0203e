// zerodist command-line front end. Talks to the library only through the
// C API in zerodist/zerodist.h.
#include <zerodist/zerodist.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Failure {
  zd_status status;
  std::string message;
};

struct UsageFailure {
  std::string message;
};

void check(zd_status s) {
  if (s != ZD_OK) throw Failure{s, zd_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw UsageFailure{message}; }

std::string take(char* s) {
  std::string out = s ? s : "";
  zd_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Form = std::unique_ptr<zd_form, Deleter<zd_form, zd_form_free>>;
using Alpha = std::unique_ptr<zd_alpha, Deleter<zd_alpha, zd_alpha_free>>;
using Fourier = std::unique_ptr<zd_fourier, Deleter<zd_fourier, zd_fourier_free>>;
using Density = std::unique_ptr<zd_density, Deleter<zd_density, zd_density_free>>;
using Mollifier = std::unique_ptr<zd_mollifier, Deleter<zd_mollifier, zd_mollifier_free>>;

Form load_form(const std::string& path, size_t min_coefficients = 0) {
  if (path.empty()) usage("a form manifest is required");
  zd_form* f = nullptr;
  check(zd_form_load(path.c_str(), min_coefficients, &f));
  return Form(f);
}

Alpha load_alpha(const std::string& path) {
  if (path.empty()) usage("--alpha is required");
  zd_alpha* a = nullptr;
  check(zd_alpha_load(path.c_str(), &a));
  return Alpha(a);
}

Fourier load_h(const std::string& path) {
  zd_fourier* h = nullptr;
  if (path.empty()) {
    // Default test function 1 + cos(2 pi t).
    check(zd_fourier_parse(R"({"n":1,"modes":[{"m":[0],"re":1},{"m":[1],"re":0.5}]})", &h));
  } else {
    check(zd_fourier_load(path.c_str(), &h));
  }
  return Fourier(h);
}

zd_form_info info(const Form& f) {
  zd_form_info i{};
  check(zd_form_info_get(f.get(), &i));
  return i;
}

std::vector<double> alpha_values(const Alpha& a) {
  const double* v = nullptr;
  size_t n = 0;
  check(zd_alpha_values(a.get(), &v, &n));
  return {v, v + n};
}

std::string num(double x) {
  // json's number formatting is the shortest round-trip form.
  return json(x).dump();
}

// Output target: a path whose extension picks the format, or a bare format
// name meaning stdout.
struct Output {
  std::string format;
  std::string path;  // empty: stdout
};

Output parse_output(const std::string& out, const std::string& fallback) {
  if (out.empty()) return {fallback, ""};
  if (out == "csv" || out == "json" || out == "svg") return {out, ""};
  auto ext = fs::path(out).extension().string();
  if (!ext.empty()) ext = ext.substr(1);
  if (ext != "csv" && ext != "json" && ext != "svg") usage("--out must end in .csv, .json or .svg, or name a format");
  return {ext, out};
}

void write(const Output& o, const std::string& content, const std::string& suffix = "") {
  if (o.path.empty()) {
    std::cout << content;
    return;
  }
  fs::path p = o.path;
  if (!suffix.empty()) p.replace_filename(p.stem().string() + suffix + p.extension().string());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Failure{ZD_ERR_IO, "cannot write " + p.string()};
  out << content;
  if (!out) throw Failure{ZD_ERR_IO, "write failed for " + p.string()};
}

std::string heatmap(const std::vector<double>& grid, size_t rows, size_t cols, const std::string& title) {
  char* svg = nullptr;
  check(zd_render_heatmap(grid.data(), rows, cols, title.c_str(), &svg));
  return take(svg);
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage("cannot parse number '" + item + "'");
    }
  }
  return out;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return (sxx > 0 && syy > 0) ? sxy / std::sqrt(sxx * syy) : 0.0;
}

const char* axis_names[] = {"a", "b", "c", "d"};
const char* coord_names[] = {"x", "y", "z", "w"};

struct Settings {
  std::string config;
  std::string form, alpha, out, h, f1, f2, forms, boxes = "quartiles", mode = "census", name, source, xs = "2,6";
  double T = 0, X = 1e5, tol = 1e-12, varpi = 0.19, t0 = 0, s_re = 2, s_im = 0;
  int grid = 30;
  size_t stride = 10000;
  bool records = false, check = false;
};

// Flags given on the command line win; everything else may come from --config.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) usage("cannot open config " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    usage(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) usage("config must be a JSON object");
  for (auto& [key, value] : cfg.items()) {
    if (key == "subcommand") {
      if (value != sub->get_name()) usage("config is for subcommand " + value.dump());
      continue;
    }
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      usage("unknown config key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
    opt->add_result(text);
    opt->run_callback();
  }
}

int run_density(const Settings& s) {
  auto form = load_form(s.form);
  auto alpha = load_alpha(s.alpha);
  if (s.grid < 1 || s.grid > 256) usage("--grid must lie in [1, 256]");
  zd_density* d = nullptr;
  check(zd_density_create(form.get(), alpha.get(), &d));
  Density density(d);
  const auto a = alpha_values(alpha);
  const int n = static_cast<int>(a.size());
  size_t cells = 1;
  for (int k = 0; k < n; ++k) cells *= static_cast<size_t>(s.grid);
  std::vector<double> grid(cells);
  check(zd_density_grid(density.get(), s.grid, s.tol, grid.data(), grid.size()));
  const auto out = parse_output(s.out, "csv");
  if (out.format == "svg") {
    if (n > 2) usage("heatmaps need n <= 2");
    write(out, heatmap(grid, n == 2 ? s.grid : 1, n == 2 ? s.grid : s.grid, "density g"));
    return 0;
  }
  if (out.format == "json") {
    write(out, json{{"n", n}, {"G", s.grid}, {"alpha", a}, {"values", grid}}.dump() + "\n");
    return 0;
  }
  std::string csv;
  for (int k = 0; k < n; ++k) csv += std::string(axis_names[k]) + ",";
  for (int k = 0; k < n; ++k) csv += std::string(coord_names[k]) + ",";
  csv += "g\n";
  for (size_t c = 0; c < cells; ++c) {
    std::vector<size_t> idx(static_cast<size_t>(n));
    size_t rem = c;
    for (int k = n - 1; k >= 0; --k) {
      idx[static_cast<size_t>(k)] = rem % static_cast<size_t>(s.grid);
      rem /= static_cast<size_t>(s.grid);
    }
    for (int k = 0; k < n; ++k) csv += std::to_string(idx[static_cast<size_t>(k)]) + ",";
    for (int k = 0; k < n; ++k) csv += num((static_cast<double>(idx[static_cast<size_t>(k)]) + 0.5) / s.grid) + ",";
    csv += num(grid[c]) + "\n";
  }
  write(out, csv);
  return 0;
}

int run_hist(const Settings& s) {
  auto form = load_form(s.form);
  auto alpha = load_alpha(s.alpha);
  if (s.grid < 1 || s.grid > 256) usage("--grid must lie in [1, 256]");
  const double T = s.T > 0 ? s.T : info(form).t_max;
  const auto a = alpha_values(alpha);
  const int n = static_cast<int>(a.size());
  size_t cells = 1;
  for (int k = 0; k < n; ++k) cells *= static_cast<size_t>(s.grid);
  std::vector<uint64_t> counts(cells);
  uint64_t total = 0;
  check(zd_histogram(form.get(), alpha.get(), T, s.grid, counts.data(), counts.size(), &total));
  zd_density* d = nullptr;
  check(zd_density_create(form.get(), alpha.get(), &d));
  Density density(d);
  std::vector<double> predicted(cells);
  check(zd_predicted_counts(density.get(), static_cast<double>(total), T, s.grid, s.tol, predicted.data(),
                            predicted.size()));
  const double uniform = static_cast<double>(total) / static_cast<double>(cells);
  std::vector<double> dev_emp, dev_pred, emp;
  for (size_t c = 0; c < cells; ++c) {
    emp.push_back(static_cast<double>(counts[c]));
    dev_emp.push_back(static_cast<double>(counts[c]) - uniform);
    dev_pred.push_back(predicted[c] - uniform);
  }
  const auto out = parse_output(s.out, "csv");
  if (out.format == "svg") {
    if (n > 2) usage("heatmaps need n <= 2");
    const size_t rows = static_cast<size_t>(s.grid), cols = n == 2 ? static_cast<size_t>(s.grid) : 1;
    write(out, heatmap(emp, rows, cols, "empirical counts"));
    write(out, heatmap(predicted, rows, cols, "predicted counts"), out.path.empty() ? "" : "_predicted");
    return 0;
  }
  if (out.format == "json") {
    write(out, json{{"T", T},
                    {"G", s.grid},
                    {"total", total},
                    {"counts", counts},
                    {"predicted", predicted},
                    {"pearson_r", pearson(dev_emp, dev_pred)}}
                       .dump() +
                   "\n");
    return 0;
  }
  std::string csv;
  for (int k = 0; k < n; ++k) csv += std::string(axis_names[k]) + ",";
  csv += "count,predicted\n";
  for (size_t c = 0; c < cells; ++c) {
    std::vector<size_t> idx(static_cast<size_t>(n));
    size_t rem = c;
    for (int k = n - 1; k >= 0; --k) {
      idx[static_cast<size_t>(k)] = rem % static_cast<size_t>(s.grid);
      rem /= static_cast<size_t>(s.grid);
    }
    for (int k = 0; k < n; ++k) csv += std::to_string(idx[static_cast<size_t>(k)]) + ",";
    csv += std::to_string(counts[c]) + "," + num(predicted[c]) + "\n";
  }
  write(out, csv);
  return 0;
}

int run_counts(const Settings& s) {
  auto form = load_form(s.form);
  const auto i = info(form);
  char* j = nullptr;
  check(zd_zero_count_scan(form.get(), s.stride, &j));
  json scan = take_json(j);
  const double T = s.T > 0 ? s.T : i.t_max;
  uint64_t n_emp = 0;
  check(zd_count_zeros(form.get(), T, &n_emp));
  double main = 0;
  check(zd_rvm_main(static_cast<double>(i.level), T, &main));
  const auto out = parse_output(s.out, "json");
  if (out.format == "csv") {
    std::string csv = "T,n_emp,n_main,error\n";
    for (const auto& row : scan["samples"])
      csv += num(row["T"].get<double>()) + "," + std::to_string(row["n_emp"].get<uint64_t>()) + "," +
             num(row["n_main"].get<double>()) + "," + num(row["error"].get<double>()) + "\n";
    write(out, csv);
    return 0;
  }
  if (out.format == "svg") usage("counts has no SVG output");
  json result{{"T", T},
              {"n_emp", n_emp},
              {"n_main", main},
              {"error", static_cast<double>(n_emp) - main},
              {"c_fit", scan["c_fit"]},
              {"t_worst", scan["t_worst"]},
              {"points", scan["points"]},
              {"samples", scan["samples"]}};
  write(out, result.dump() + "\n");
  return 0;
}

int run_landau(const Settings& s) {
  auto form = load_form(s.form);
  const double T = s.T > 0 ? s.T : info(form).t_max;
  json rows = json::array();
  for (double x : split_numbers(s.xs)) {
    zd_landau_result r{};
    check(zd_landau_sum(form.get(), x, T, &r));
    rows.push_back({{"x", x},
                    {"T", T},
                    {"S", r.S},
                    {"S_over_T", r.S / T},
                    {"nearest", r.nearest},
                    {"prediction", r.prediction},
                    {"prediction_over_T", r.prediction / T},
                    {"envelope", r.envelope}});
  }
  const auto out = parse_output(s.out, "json");
  if (out.format == "csv") {
    std::string csv = "x,T,S,S_over_T,prediction,envelope\n";
    for (const auto& r : rows)
      csv += num(r["x"].get<double>()) + "," + num(T) + "," + num(r["S"].get<double>()) + "," +
             num(r["S_over_T"].get<double>()) + "," + num(r["prediction"].get<double>()) + "," +
             num(r["envelope"].get<double>()) + "\n";
    write(out, csv);
    return 0;
  }
  if (out.format == "svg") usage("landau has no SVG output");
  write(out, json{{"sums", rows}}.dump() + "\n");
  return 0;
}

int run_discrepancy(const Settings& s) {
  auto form = load_form(s.form);
  auto alpha = load_alpha(s.alpha);
  const double T = s.T > 0 ? s.T : info(form).t_max;
  double D = 0;
  check(zd_discrepancy(form.get(), alpha.get(), T, s.grid, &D));
  uint64_t n_emp = 0;
  check(zd_count_zeros(form.get(), T, &n_emp));
  zd_density* d = nullptr;
  check(zd_density_create(form.get(), alpha.get(), &d));
  Density density(d);
  double lower = 0;
  check(zd_discrepancy_lower_bound(density.get(), static_cast<double>(n_emp), T, s.grid, &lower));
  const auto out = parse_output(s.out, "json");
  json result{{"T", T}, {"G", s.grid}, {"n_emp", n_emp}, {"discrepancy", D}, {"density_lower_bound", lower}};
  if (out.format == "csv") {
    write(out, "T,G,n_emp,discrepancy,density_lower_bound\n" + num(T) + "," + std::to_string(s.grid) + "," +
                   std::to_string(n_emp) + "," + num(D) + "," + num(lower) + "\n");
    return 0;
  }
  if (out.format == "svg") usage("discrepancy has no SVG output");
  write(out, result.dump() + "\n");
  return 0;
}

int run_satotate(const Settings& s) {
  const auto paths = [&] {
    std::vector<std::string> v;
    std::stringstream ss(s.forms);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(item);
    return v;
  }();
  if (paths.size() != 2) usage("--forms takes two manifests F1,F2");
  if (s.boxes != "quartiles") usage("--boxes supports only 'quartiles'");
  if (!(s.X >= 2)) usage("--X must be at least 2");
  const auto need = static_cast<size_t>(s.X);
  auto f1 = load_form(paths[0], need);
  auto f2 = load_form(paths[1], need);
  double q[3];
  check(zd_st_quartiles(q));
  const double edges[5] = {-2.0, q[0], q[1], q[2], 2.0};
  json boxes = json::array();
  double worst = 0;
  uint64_t primes = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double frac = 0;
      check(zd_empirical_joint(f1.get(), f2.get(), s.X, edges[i], edges[i + 1], edges[j], edges[j + 1], &frac,
                               &primes));
      double m1 = 0, m2 = 0;
      check(zd_mu_st(edges[i], edges[i + 1], &m1));
      check(zd_mu_st(edges[j], edges[j + 1], &m2));
      worst = std::max(worst, std::abs(frac - m1 * m2));
      boxes.push_back({{"I1", {edges[i], edges[i + 1]}},
                       {"I2", {edges[j], edges[j + 1]}},
                       {"empirical", frac},
                       {"expected", m1 * m2},
                       {"difference", frac - m1 * m2}});
    }
  }
  const auto out = parse_output(s.out, "json");
  if (out.format == "csv") {
    std::string csv = "i1_lo,i1_hi,i2_lo,i2_hi,empirical,expected\n";
    for (const auto& b : boxes)
      csv += num(b["I1"][0].get<double>()) + "," + num(b["I1"][1].get<double>()) + "," +
             num(b["I2"][0].get<double>()) + "," + num(b["I2"][1].get<double>()) + "," +
             num(b["empirical"].get<double>()) + "," + num(b["expected"].get<double>()) + "\n";
    write(out, csv);
    return 0;
  }
  if (out.format == "svg") usage("satotate has no SVG output");
  write(out, json{{"X", s.X}, {"primes", primes}, {"boxes", boxes}, {"max_abs_difference", worst}}.dump() + "\n");
  return 0;
}

int run_race(const Settings& s) {
  const auto out = parse_output(s.out, "json");
  if (out.format != "json") usage("race writes JSON only");
  if (s.mode == "local") {
    auto f1 = load_form(s.f1);
    auto f2 = load_form(s.f2);
    auto alpha = load_alpha(s.alpha);
    char* j = nullptr;
    check(zd_local_race(f1.get(), f2.get(), alpha.get(), s.t0, &j));
    json result = take_json(j);
    result["t0"] = s.t0;
    write(out, result.dump() + "\n");
    return 0;
  }
  if (!(s.X >= 2)) usage("--X must be at least 2");
  const auto need = static_cast<size_t>(s.X);
  auto f1 = load_form(s.f1, need);
  auto f2 = load_form(s.f2, need);
  auto h = load_h(s.h);
  char* j = nullptr;
  if (s.mode == "census") {
    check(zd_race_census(f1.get(), f2.get(), h.get(), static_cast<uint64_t>(s.X), s.records ? 1 : 0, &j));
  } else if (s.mode == "hdist") {
    double kh = 0;
    check(zd_fourier_k_h(h.get(), &kh));
    // Eight equal bins plus the two half-lines of the symmetric split.
    const double scale = 2.0 * std::abs(kh) / M_PI;
    std::vector<double> lo, hi;
    for (int i = 0; i < 8; ++i) {
      lo.push_back(scale * (-4.0 + i));
      hi.push_back(scale * (-3.0 + i));
    }
    lo.push_back(0.0);
    hi.push_back(4.0 * scale);
    lo.push_back(-4.0 * scale);
    hi.push_back(0.0);
    check(zd_h_distribution(f1.get(), f2.get(), h.get(), s.X, lo.size(), lo.data(), hi.data(), &j));
  } else {
    usage("--mode must be census, hdist or local");
  }
  write(out, take(j) + "\n");
  return 0;
}

int run_mollifier(const Settings& s) {
  if (!(s.T > 1)) usage("--T must exceed 1");
  const double len = std::pow(s.T, s.varpi);
  auto form = load_form(s.form, static_cast<size_t>(len) + 1);
  zd_mollifier* m = nullptr;
  check(zd_mollifier_create(form.get(), s.T, s.varpi, &m));
  Mollifier moll(m);
  uint64_t length = 0;
  check(zd_mollifier_length(moll.get(), &length));
  json mu = json::array();
  for (uint64_t k = 1; k <= std::min<uint64_t>(length, 30); ++k) {
    double v = 0;
    check(zd_mollifier_mu(moll.get(), k, &v));
    mu.push_back(v);
  }
  double re = 0, im = 0;
  check(zd_mollifier_value(moll.get(), s.s_re, s.s_im, &re, &im));
  json result{{"T", s.T}, {"varpi", s.varpi}, {"length", length}, {"mu", mu}, {"s", {s.s_re, s.s_im}},
              {"value", {re, im}}};
  int code = 0;
  if (s.check) {
    double defect = 0;
    check(zd_mollifier_defect(moll.get(), &defect));
    result["convolution_defect"] = defect;
    result["check_passed"] = defect <= 1e-10;
    if (defect > 1e-10) code = 1;
  }
  const auto out = parse_output(s.out, "json");
  if (out.format != "json") usage("mollifier writes JSON only");
  write(out, result.dump() + "\n");
  return code;
}

int run_fetch(const Settings& s) {
  if (s.name.empty()) usage("fetch needs a fixture name");
  char* path = nullptr;
  int hit = 0;
  check(zd_fixture_fetch(s.name.c_str(), s.source.empty() ? nullptr : s.source.c_str(), &path, &hit));
  const std::string p = take(path);
  char* hex = nullptr;
  check(zd_sha256_file(p.c_str(), &hex));
  write(parse_output(s.out, "json"),
        json{{"name", s.name}, {"path", p}, {"cache_hit", hit != 0}, {"sha256", take(hex)}}.dump() + "\n");
  return 0;
}

void print_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Fractional parts of L-function zeros, zero races and Sato-Tate statistics"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", s.config, "JSON file with option values; flags override");
    sub->add_option("--out", s.out, "output path (.csv/.json/.svg) or a format name for stdout");
  };
  auto* density = app.add_subcommand("density", "sample the density g on a grid");
  density->add_option("--form", s.form, "form manifest");
  density->add_option("--alpha", s.alpha, "alpha spec JSON");
  density->add_option("--grid", s.grid, "cells per axis");
  density->add_option("--tol", s.tol, "series tail tolerance");
  common(density);

  auto* hist = app.add_subcommand("hist", "histogram of fractional parts against the prediction");
  hist->add_option("--form", s.form, "form manifest");
  hist->add_option("--alpha", s.alpha, "alpha spec JSON");
  hist->add_option("--T", s.T, "height (default: last zero)");
  hist->add_option("--grid", s.grid, "cells per axis");
  hist->add_option("--tol", s.tol, "series tail tolerance");
  common(hist);

  auto* counts = app.add_subcommand("counts", "zero counts against the main term");
  counts->add_option("--form", s.form, "form manifest");
  counts->add_option("--T", s.T, "height (default: last zero)");
  counts->add_option("--stride", s.stride, "report every stride-th zero");
  common(counts);

  auto* landau = app.add_subcommand("landau", "Landau sums over zeros");
  landau->add_option("--form", s.form, "form manifest");
  landau->add_option("--x", s.xs, "comma-separated x values");
  landau->add_option("--T", s.T, "height (default: last zero)");
  common(landau);

  auto* disc = app.add_subcommand("discrepancy", "grid discrepancy of fractional parts");
  disc->add_option("--form", s.form, "form manifest");
  disc->add_option("--alpha", s.alpha, "alpha spec JSON");
  disc->add_option("--T", s.T, "height (default: last zero)");
  disc->add_option("--grid", s.grid, "cells per axis");
  common(disc);

  auto* st = app.add_subcommand("satotate", "joint Sato-Tate statistics");
  st->add_option("--forms", s.forms, "two manifests F1,F2");
  st->add_option("--X", s.X, "prime bound");
  st->add_option("--boxes", s.boxes, "box family (quartiles)");
  common(st);

  auto* race = app.add_subcommand("race", "zero races between two forms");
  race->set_help_flag("--help", "print this help message and exit");
  race->add_option("--f1", s.f1, "first form manifest");
  race->add_option("--f2", s.f2, "second form manifest");
  race->add_option("--h", s.h, "test function JSON (default 1 + cos 2 pi t)");
  race->add_option("--X", s.X, "prime bound");
  race->add_option("--mode", s.mode, "census, hdist or local");
  race->add_option("--alpha", s.alpha, "alpha spec JSON (local mode)");
  race->add_option("--t0", s.t0, "point on the circle (local mode)");
  race->add_flag("--records", s.records, "include per-prime records");
  common(race);

  auto* moll = app.add_subcommand("mollifier", "mollifier coefficients");
  moll->add_option("--form", s.form, "form manifest");
  moll->add_option("--T", s.T, "height parameter");
  moll->add_option("--varpi", s.varpi, "length exponent");
  moll->add_option("--s-re", s.s_re, "real part of s");
  moll->add_option("--s-im", s.s_im, "imaginary part of s");
  moll->add_flag("--check", s.check, "verify the Dirichlet inverse identity");
  common(moll);

  auto* fetch = app.add_subcommand("fetch", "fetch and verify a zero fixture");
  fetch->add_option("name", s.name, "fixture name");
  fetch->add_option("--source", s.source, "local path or URL");
  common(fetch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage_error", e.what());
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(sub, s.config);
    const std::string name = sub->get_name();
    if (name == "density") return run_density(s);
    if (name == "hist") return run_hist(s);
    if (name == "counts") return run_counts(s);
    if (name == "landau") return run_landau(s);
    if (name == "discrepancy") return run_discrepancy(s);
    if (name == "satotate") return run_satotate(s);
    if (name == "race") return run_race(s);
    if (name == "mollifier") return run_mollifier(s);
    if (name == "fetch") return run_fetch(s);
  } catch (const UsageFailure& e) {
    print_error("usage_error", e.message);
    return 2;
  } catch (const CLI::ParseError& e) {
    print_error("usage_error", e.what());
    return 2;
  } catch (const Failure& e) {
    print_error(zd_status_string(e.status), e.message);
    return 1;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what());
    return 1;
  }
  return 2;
}
