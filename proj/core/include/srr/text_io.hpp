#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "srr/rank_space.hpp"

namespace srr {

/// One point per line, two signed 64-bit integers. Lines starting with '#'
/// and blank lines are skipped. Line numbers are 1-based.
std::vector<RawPoint> read_points(std::istream& is);
std::vector<RawPoint> read_points_file(const std::string& path);

struct RectLine {
  OriginalRect rect;
  std::size_t line = 0;
};

/// One query per line: "a b c d". Throws FormatError naming the line on
/// malformed input, including a > b or c > d.
std::vector<RectLine> read_rects(std::istream& is);
std::vector<RectLine> read_rects_file(const std::string& path);

std::string format_point(const std::optional<std::pair<coord_t, coord_t>>& p);
std::string format_points(const std::vector<std::pair<coord_t, coord_t>>& pts);

}  // namespace srr
