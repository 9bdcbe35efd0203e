#include "zerodist/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "zerodist/common.hpp"

namespace zerodist {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string colour(double s) {
  // s in [-1, 1]: blue through white to red.
  s = std::clamp(s, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (s > 0) {
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - s)));
  } else if (s < 0) {
    r = g = static_cast<int>(std::lround(255.0 * (1.0 + s)));
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_heatmap(std::span<const double> grid, std::size_t rows, std::size_t cols,
                           const std::string& title) {
  if (rows == 0 || cols == 0 || grid.size() != rows * cols)
    throw Error(Errc::invalid_argument, "heatmap needs a nonempty rectangular grid");
  double sum = 0.0, lo = grid[0], hi = grid[0];
  for (double v : grid) {
    if (!std::isfinite(v)) throw Error(Errc::invalid_argument, "heatmap values must be finite");
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double mean = sum / static_cast<double>(grid.size());
  const double spread = std::max(hi - mean, mean - lo);

  const double plot = 480.0, margin = 50.0, legend_w = 20.0;
  const double cw = plot / static_cast<double>(rows), ch = plot / static_cast<double>(cols);
  const double width = margin * 2 + plot + legend_w + 90.0, height = margin * 2 + plot;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\"" +
         fixed(height, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<title>" + escape(title) + "</title>\n";
  svg += "<text x=\"" + fixed(margin, 0) + "\" y=\"" + fixed(margin - 15, 0) + "\">" + escape(title) + "</text>\n";
  for (std::size_t a = 0; a < rows; ++a) {
    for (std::size_t b = 0; b < cols; ++b) {
      const double v = grid[a * cols + b];
      const double s = spread > 0 ? (v - mean) / spread : 0.0;
      const double x = margin + static_cast<double>(a) * cw;
      const double y = margin + plot - static_cast<double>(b + 1) * ch;
      svg += "<rect x=\"" + fixed(x, 3) + "\" y=\"" + fixed(y, 3) + "\" width=\"" + fixed(cw, 3) +
             "\" height=\"" + fixed(ch, 3) + "\" fill=\"" + colour(s) + "\"/>\n";
    }
  }
  svg += "<rect x=\"" + fixed(margin, 0) + "\" y=\"" + fixed(margin, 0) + "\" width=\"" + fixed(plot, 0) +
         "\" height=\"" + fixed(plot, 0) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i < 5; ++i) {
    const double frac_pos = i / 5.0;
    const std::string label = fixed(frac_pos, 1);
    svg += "<text x=\"" + fixed(margin + frac_pos * plot, 1) + "\" y=\"" + fixed(margin + plot + 16, 0) +
           "\" text-anchor=\"middle\">" + label + "</text>\n";
    svg += "<text x=\"" + fixed(margin - 6, 0) + "\" y=\"" + fixed(margin + plot - frac_pos * plot + 4, 1) +
           "\" text-anchor=\"end\">" + label + "</text>\n";
  }
  const double lx = margin + plot + 20.0;
  if (spread > 0) {
    const int steps = 32;
    for (int i = 0; i < steps; ++i) {
      const double s = 1.0 - 2.0 * (i + 0.5) / steps;
      svg += "<rect x=\"" + fixed(lx, 0) + "\" y=\"" + fixed(margin + plot * i / steps, 3) + "\" width=\"" +
             fixed(legend_w, 0) + "\" height=\"" + fixed(plot / steps, 3) + "\" fill=\"" + colour(s) + "\"/>\n";
    }
    const double top = mean + spread, bottom = mean - spread;
    svg += "<text x=\"" + fixed(lx + legend_w + 4, 0) + "\" y=\"" + fixed(margin + 10, 0) + "\">" +
           format_double(top) + "</text>\n";
    svg += "<text x=\"" + fixed(lx + legend_w + 4, 0) + "\" y=\"" + fixed(margin + plot / 2 + 4, 0) + "\">" +
           format_double(mean) + "</text>\n";
    svg += "<text x=\"" + fixed(lx + legend_w + 4, 0) + "\" y=\"" + fixed(margin + plot, 0) + "\">" +
           format_double(bottom) + "</text>\n";
  } else {
    svg += "<rect x=\"" + fixed(lx, 0) + "\" y=\"" + fixed(margin, 0) + "\" width=\"" + fixed(legend_w, 0) +
           "\" height=\"" + fixed(plot, 0) + "\" fill=\"" + colour(0.0) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(lx + legend_w + 4, 0) + "\" y=\"" + fixed(margin + plot / 2 + 4, 0) + "\">" +
           format_double(mean) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

}  // namespace zerodist
