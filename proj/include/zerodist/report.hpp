#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace zerodist {

// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

// rows x cols heatmap, row-major with row index = first coordinate a
// (drawn left to right) and column index = b (drawn bottom to top).
// Diverging colour scale centred at the grid mean.
std::string render_heatmap(std::span<const double> grid, std::size_t rows, std::size_t cols,
                           const std::string& title);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace zerodist
