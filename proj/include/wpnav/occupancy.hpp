// Copyright 2026 The wpnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"

namespace wpnav {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

// Boolean grid of blocked cells. Row i spans y in
// [origin.y + i*cell_size, origin.y + (i+1)*cell_size).
class OccupancyMap {
 public:
  OccupancyMap() = default;
  OccupancyMap(int rows, int cols, double cell_size, Vec2 origin = {})
      : rows_(rows), cols_(cols), cell_size_(cell_size), origin_(origin),
        cells_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows <= 0 || cols <= 0) throw InvalidArgument("occupancy map must be non-empty");
    if (!(cell_size > 0.0)) throw InvalidArgument("cell size must be positive");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double cell_size() const { return cell_size_; }
  Vec2 origin() const { return origin_; }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_;
  }
  bool occupied(Cell c) const { return cells_[index(c)] != 0; }
  bool free(Cell c) const { return in_bounds(c) && !occupied(c); }
  void set(Cell c, bool occ) { cells_[index(c)] = occ ? 1 : 0; }

  std::size_t count_occupied() const {
    std::size_t n = 0;
    for (auto v : cells_) n += v;
    return n;
  }

  Cell cell_at(Vec2 p) const {
    return {static_cast<int>(std::floor((p.y - origin_.y) / cell_size_)),
            static_cast<int>(std::floor((p.x - origin_.x) / cell_size_))};
  }
  Vec2 cell_center(Cell c) const {
    return {origin_.x + (c.col + 0.5) * cell_size_, origin_.y + (c.row + 0.5) * cell_size_};
  }
  Rect cell_rect(Cell c) const {
    const Vec2 lo{origin_.x + c.col * cell_size_, origin_.y + c.row * cell_size_};
    return {lo, lo + Vec2{cell_size_, cell_size_}};
  }

  // Marks every cell whose open interior overlaps `r`.
  void mark(const Rect& r) {
    const int c0 = std::max(0, static_cast<int>(std::floor((r.lo.x - origin_.x) / cell_size_)));
    const int c1 = std::min(cols_ - 1, static_cast<int>(std::floor((r.hi.x - origin_.x) / cell_size_)));
    const int r0 = std::max(0, static_cast<int>(std::floor((r.lo.y - origin_.y) / cell_size_)));
    const int r1 = std::min(rows_ - 1, static_cast<int>(std::floor((r.hi.y - origin_.y) / cell_size_)));
    for (int i = r0; i <= r1; ++i) {
      for (int j = c0; j <= c1; ++j) {
        if (cell_rect({i, j}).overlaps(r)) set({i, j}, true);
      }
    }
  }

  bool operator==(const OccupancyMap&) const = default;

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * cols_ + c.col;
  }

  int rows_ = 0;
  int cols_ = 0;
  double cell_size_ = 1.0;
  Vec2 origin_;
  std::vector<std::uint8_t> cells_;
};

// ASCII format: header `occupancy <rows> <cols> <cell_size_m>`, then one line
// per row, `#` occupied and `.` free. Row 0 is written first.
inline void write_occupancy(std::ostream& os, const OccupancyMap& map) {
  std::ostringstream cs;
  cs.precision(17);
  cs << map.cell_size();
  os << "occupancy " << map.rows() << ' ' << map.cols() << ' ' << cs.str() << '\n';
  for (int i = 0; i < map.rows(); ++i) {
    std::string line(static_cast<std::size_t>(map.cols()), '.');
    for (int j = 0; j < map.cols(); ++j) {
      if (map.occupied({i, j})) line[static_cast<std::size_t>(j)] = '#';
    }
    os << line << '\n';
  }
}

inline OccupancyMap read_occupancy(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("occupancy: missing header");
  std::istringstream hs(header);
  std::string tag;
  int rows = 0;
  int cols = 0;
  double cell = 0.0;
  if (!(hs >> tag >> rows >> cols >> cell) || tag != "occupancy" || rows <= 0 ||
      cols <= 0 || !(cell > 0.0)) {
    throw ParseError("occupancy: malformed header '" + header + "'");
  }
  OccupancyMap map(rows, cols, cell);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(is, line)) {
      throw ParseError("occupancy: expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(i));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != cols) {
      throw ParseError("occupancy: row " + std::to_string(i) + " has " +
                       std::to_string(line.size()) + " cells, expected " +
                       std::to_string(cols));
    }
    for (int j = 0; j < cols; ++j) {
      const char ch = line[static_cast<std::size_t>(j)];
      if (ch != '#' && ch != '.') {
        throw ParseError("occupancy: bad cell character '" + std::string(1, ch) +
                         "' at row " + std::to_string(i));
      }
      map.set({i, j}, ch == '#');
    }
  }
  return map;
}

}  // namespace wpnav
