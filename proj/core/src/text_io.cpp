#include "srr/text_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>

namespace srr {

namespace {

bool skip_line(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\r");
  return p == std::string::npos || s[p] == '#';
}

// Parses exactly `count` integers separated by whitespace.
bool parse_ints(const std::string& s, coord_t* out, int count) {
  const char* it = s.data();
  const char* end = s.data() + s.size();
  auto skip_ws = [&] {
    while (it != end && (*it == ' ' || *it == '\t' || *it == '\r')) ++it;
  };
  for (int k = 0; k < count; ++k) {
    skip_ws();
    if (it == end) return false;
    if (*it == '+') ++it;
    const auto [ptr, ec] = std::from_chars(it, end, out[k]);
    if (ec != std::errc{} || ptr == it) return false;
    it = ptr;
    if (it != end && *it != ' ' && *it != '\t' && *it != '\r') return false;
  }
  skip_ws();
  return it == end;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return is;
}

}  // namespace

std::vector<RawPoint> read_points(std::istream& is) {
  std::vector<RawPoint> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (skip_line(line)) continue;
    coord_t v[2];
    if (!parse_ints(line, v, 2)) {
      throw FormatError("line " + std::to_string(no) + ": expected two integers");
    }
    out.push_back({v[0], v[1], no});
  }
  return out;
}

std::vector<RawPoint> read_points_file(const std::string& path) {
  auto is = open_or_throw(path);
  return read_points(is);
}

std::vector<RectLine> read_rects(std::istream& is) {
  std::vector<RectLine> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (skip_line(line)) continue;
    coord_t v[4];
    if (!parse_ints(line, v, 4)) {
      throw FormatError("line " + std::to_string(no) + ": expected four integers a b c d");
    }
    if (v[0] > v[1] || v[2] > v[3]) {
      throw FormatError("line " + std::to_string(no) + ": malformed rectangle (a > b or c > d)");
    }
    out.push_back({OriginalRect{v[0], v[1], v[2], v[3]}, no});
  }
  return out;
}

std::vector<RectLine> read_rects_file(const std::string& path) {
  auto is = open_or_throw(path);
  return read_rects(is);
}

std::string format_point(const std::optional<std::pair<coord_t, coord_t>>& p) {
  if (!p) return "none";
  return std::to_string(p->first) + " " + std::to_string(p->second);
}

std::string format_points(const std::vector<std::pair<coord_t, coord_t>>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) s += ';';
    s += std::to_string(pts[i].first);
    s += ',';
    s += std::to_string(pts[i].second);
  }
  return s;
}

}  // namespace srr
