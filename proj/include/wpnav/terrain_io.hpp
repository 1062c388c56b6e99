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

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "wpnav/errors.hpp"
#include "wpnav/terrain.hpp"

namespace wpnav {

// Binary heightfield: 16-byte header (magic "WPHF", uint32 rows, uint32 cols,
// float32 resolution), then rows*cols float32 heights, row-major, all
// little-endian.
inline constexpr std::array<char, 4> kHeightfieldMagic = {'W', 'P', 'H', 'F'};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw ParseError("heightfield: truncated input");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace detail

inline void write_heightfield_binary(std::ostream& os, const Heightfield& hf) {
  os.write(kHeightfieldMagic.data(), 4);
  detail::put_u32(os, static_cast<std::uint32_t>(hf.rows()));
  detail::put_u32(os, static_cast<std::uint32_t>(hf.cols()));
  detail::put_u32(os, std::bit_cast<std::uint32_t>(static_cast<float>(hf.resolution())));
  for (double h : hf.data()) detail::put_u32(os, std::bit_cast<std::uint32_t>(static_cast<float>(h)));
}

// Heights come back at float32 precision.
inline Heightfield read_heightfield_binary(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kHeightfieldMagic) {
    throw ParseError("heightfield: bad magic");
  }
  const auto rows = detail::get_u32(is);
  const auto cols = detail::get_u32(is);
  const float res = std::bit_cast<float>(detail::get_u32(is));
  Heightfield hf(static_cast<int>(rows), static_cast<int>(cols), res);
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) {
      hf.at(static_cast<int>(i), static_cast<int>(j)) = std::bit_cast<float>(detail::get_u32(is));
    }
  }
  return hf;
}

// Plain-text matrix: a `heightfield <rows> <cols> <resolution>` line, then one
// whitespace-separated row per line, row 0 first.
inline void write_heightfield_text(std::ostream& os, const Heightfield& hf) {
  os << "heightfield " << hf.rows() << ' ' << hf.cols() << ' ' << hf.resolution() << '\n';
  char buf[32];
  for (int i = 0; i < hf.rows(); ++i) {
    for (int j = 0; j < hf.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.4f", hf.at(i, j));
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

struct TerrainSummary {
  int units = 0;
  int tracks = 0;  // fixed-waypoint grids only
  std::map<UnitKind, int> per_kind;
  double min_difficulty = 0.0;
  double max_difficulty = 0.0;
};

inline TerrainSummary summarize(const TerrainGrid& grid) {
  TerrainSummary s;
  s.units = static_cast<int>(grid.units().size());
  if (grid.scenario() == Scenario::WPFixed) s.tracks = s.units / kTrackUnits;
  bool first = true;
  for (const auto& u : grid.units()) {
    ++s.per_kind[u.kind];
    s.min_difficulty = first ? u.difficulty : std::min(s.min_difficulty, u.difficulty);
    s.max_difficulty = first ? u.difficulty : std::max(s.max_difficulty, u.difficulty);
    first = false;
  }
  return s;
}

}  // namespace wpnav
