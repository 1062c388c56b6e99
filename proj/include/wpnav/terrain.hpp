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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpnav/capabilities.hpp"
#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"
#include "wpnav/occupancy.hpp"
#include "wpnav/rng.hpp"

namespace wpnav {

enum class UnitKind { Flat, Hurdle, Box, Gap, Obstacle, Wall };
enum class Scenario { WPFixed, WPRandom, Custom };

// Direction of travel the unit's feature is laid across. A hurdle or gap with
// axis X is a strip perpendicular to the x axis, crossed by moving along x.
enum class Axis { X, Y };

inline const char* to_string(UnitKind k) {
  switch (k) {
    case UnitKind::Flat: return "flat";
    case UnitKind::Hurdle: return "hurdle";
    case UnitKind::Box: return "box";
    case UnitKind::Gap: return "gap";
    case UnitKind::Obstacle: return "obstacle";
    case UnitKind::Wall: return "wall";
  }
  return "?";
}

inline std::optional<UnitKind> unit_kind_from_string(const std::string& s) {
  for (auto k : {UnitKind::Flat, UnitKind::Hurdle, UnitKind::Box, UnitKind::Gap,
                 UnitKind::Obstacle, UnitKind::Wall}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

// Single-letter code used by ASCII layouts and the LLM map rendering.
inline char unit_code(UnitKind k) {
  switch (k) {
    case UnitKind::Flat: return 'F';
    case UnitKind::Hurdle: return 'H';
    case UnitKind::Box: return 'B';
    case UnitKind::Gap: return 'G';
    case UnitKind::Obstacle: return 'O';
    case UnitKind::Wall: return 'W';
  }
  return '?';
}

inline std::optional<UnitKind> unit_kind_from_code(char c) {
  switch (c) {
    case 'F': return UnitKind::Flat;
    case 'H': return UnitKind::Hurdle;
    case 'B': return UnitKind::Box;
    case 'G': return UnitKind::Gap;
    case 'O': return UnitKind::Obstacle;
    case 'W': return UnitKind::Wall;
    default: return std::nullopt;
  }
}

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Curriculum ranges in meters: hurdle/box height, gap width, obstacle size.
// Custom grids use the random-waypoint ranges.
inline ParamRange param_range(UnitKind kind, Scenario scenario) {
  const bool fixed = scenario == Scenario::WPFixed;
  switch (kind) {
    case UnitKind::Hurdle: return fixed ? ParamRange{0.1, 0.4} : ParamRange{0.1, 0.3};
    case UnitKind::Box: return fixed ? ParamRange{0.1, 0.5} : ParamRange{0.1, 0.35};
    case UnitKind::Gap: return fixed ? ParamRange{0.1, 0.9} : ParamRange{0.1, 0.35};
    case UnitKind::Obstacle: return fixed ? ParamRange{0.15, 1.0} : ParamRange{0.2, 0.9};
    case UnitKind::Flat:
    case UnitKind::Wall: return {};
  }
  return {};
}

inline double unit_param(UnitKind kind, Scenario scenario, double difficulty) {
  const ParamRange r = param_range(kind, scenario);
  return r.lo + difficulty * (r.hi - r.lo);
}

struct TerrainUnitSpec {
  UnitKind kind = UnitKind::Flat;
  double difficulty = 0.0;
  double param = 0.0;  // height (hurdle/box), width (gap), max footprint side (obstacle)
  Vec2 origin;         // lower-left corner
  Vec2 extent;
  Axis axis = Axis::X;

  Rect rect() const { return {origin, origin + extent}; }
  Vec2 center() const { return origin + extent * 0.5; }
};

enum class FeatureKind { Hurdle, Box, Gap, Obstacle, Wall };

// Axis-aligned terrain feature. Gaps carry a negative height (trench depth).
struct Footprint {
  Rect rect;
  double height = 0.0;
  FeatureKind kind = FeatureKind::Obstacle;

  bool blocks_body() const {
    return kind == FeatureKind::Obstacle || kind == FeatureKind::Wall;
  }
  bool operator==(const Footprint&) const = default;
};

struct TerrainOptions {
  double unit_size = 2.0;
  double resolution = 0.05;
  double gap_depth = 1.0;
  double hurdle_thickness = 0.1;
  double box_fraction = 0.5;  // box side relative to unit size
  double obstacle_height = 1.0;
  double wall_height = 1.0;
  int min_obstacles = 1;
  int max_obstacles = 3;
  double obstacle_clearance = 0.3;  // keep-out radius around obstacle-unit centers
  int reachability_retries = 32;
};

// Row-major height samples at cell centers; cell (i, j) is centered at
// ((j + 0.5) r, (i + 0.5) r).
class Heightfield {
 public:
  Heightfield() = default;
  Heightfield(int rows, int cols, double resolution)
      : rows_(rows), cols_(cols), resolution_(resolution),
        data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double resolution() const { return resolution_; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::span<const double> data() const { return data_; }

  // Bilinear interpolation between cell centers, clamped at the border.
  double sample(Vec2 p) const {
    const double u = std::clamp(p.x / resolution_ - 0.5, 0.0, static_cast<double>(cols_ - 1));
    const double v = std::clamp(p.y / resolution_ - 0.5, 0.0, static_cast<double>(rows_ - 1));
    const int j0 = std::min(static_cast<int>(u), cols_ - 1);
    const int i0 = std::min(static_cast<int>(v), rows_ - 1);
    const int j1 = std::min(j0 + 1, cols_ - 1);
    const int i1 = std::min(i0 + 1, rows_ - 1);
    const double a = u - j0;
    const double b = v - i0;
    // v0 + a*(v1 - v0) is exact when both ends agree.
    const double lower = at(i0, j0) + a * (at(i0, j1) - at(i0, j0));
    const double upper = at(i1, j0) + a * (at(i1, j1) - at(i1, j0));
    return lower + b * (upper - lower);
  }

  bool operator==(const Heightfield&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  double resolution_ = 0.05;
  std::vector<double> data_;
};

// Bucket index from unit cells to the rectangles overlapping them.
class UnitIndex {
 public:
  UnitIndex() = default;
  UnitIndex(int rows, int cols, double unit, std::span<const Footprint> items)
      : rows_(rows), cols_(cols), unit_(unit),
        buckets_(static_cast<std::size_t>(rows) * cols) {
    for (std::size_t k = 0; k < items.size(); ++k) {
      visit(items[k].rect, [&](std::size_t b) { buckets_[b].push_back(k); });
    }
  }

  std::vector<std::size_t> query(const Rect& r) const {
    std::vector<std::size_t> out;
    visit(r, [&](std::size_t b) {
      out.insert(out.end(), buckets_[b].begin(), buckets_[b].end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  template <class F>
  void visit(const Rect& r, F&& f) const {
    if (rows_ == 0) return;
    const int c0 = std::clamp(static_cast<int>(std::floor(r.lo.x / unit_)), 0, cols_ - 1);
    const int c1 = std::clamp(static_cast<int>(std::floor(r.hi.x / unit_)), 0, cols_ - 1);
    const int r0 = std::clamp(static_cast<int>(std::floor(r.lo.y / unit_)), 0, rows_ - 1);
    const int r1 = std::clamp(static_cast<int>(std::floor(r.hi.y / unit_)), 0, rows_ - 1);
    for (int i = r0; i <= r1; ++i)
      for (int j = c0; j <= c1; ++j) f(static_cast<std::size_t>(i) * cols_ + j);
  }

  int rows_ = 0;
  int cols_ = 0;
  double unit_ = 1.0;
  std::vector<std::vector<std::size_t>> buckets_;
};

class TerrainBuilder;

/// Heightfield plus typed unit metadata for one scenario. Immutable once
/// built, so a grid can be shared by concurrently running episodes.
///
/// World frame: x grows with unit column, y with unit row; unit (r, c) covers
/// [c*s, (c+1)*s] x [r*s, (r+1)*s] for unit size s.
///
/// `features()` is the true geometry used for collision and the heightfield.
/// `virtual_obstacles()` is the planner/policy-facing copy of the obstacle and
/// wall footprints, which inflate_obstacles() grows without touching the
/// true geometry.
class TerrainGrid {
 public:
  Scenario scenario() const { return scenario_; }
  int unit_rows() const { return unit_rows_; }
  int unit_cols() const { return unit_cols_; }
  double unit_size() const { return unit_size_; }
  int area_rows() const { return area_rows_; }
  int area_cols() const { return area_cols_; }
  const TerrainOptions& options() const { return options_; }

  const std::vector<TerrainUnitSpec>& units() const { return units_; }
  const TerrainUnitSpec& unit(int row, int col) const {
    return units_[static_cast<std::size_t>(row) * unit_cols_ + col];
  }
  Vec2 unit_center(int row, int col) const { return unit(row, col).center(); }

  const Heightfield& heightfield() const { return heightfield_; }
  const std::vector<Footprint>& features() const { return features_; }
  const std::vector<Footprint>& virtual_obstacles() const { return virtual_; }

  Rect bounds() const {
    return {{0.0, 0.0}, {unit_cols_ * unit_size_, unit_rows_ * unit_size_}};
  }
  bool contains(Vec2 p) const { return bounds().contains(p); }

  std::optional<std::pair<int, int>> unit_at(Vec2 p) const {
    if (!contains(p)) return std::nullopt;
    const int c = std::min(static_cast<int>(p.x / unit_size_), unit_cols_ - 1);
    const int r = std::min(static_cast<int>(p.y / unit_size_), unit_rows_ - 1);
    return std::pair{r, c};
  }

  double height_at(Vec2 p) const { return heightfield_.sample(p); }

  // Standing height from the true geometry: tallest box or hurdle under p.
  double support_height(Vec2 p) const {
    double h = 0.0;
    for (std::size_t k : features_near({p, p})) {
      const Footprint& f = features_[k];
      if ((f.kind == FeatureKind::Box || f.kind == FeatureKind::Hurdle) && f.rect.contains(p)) {
        h = std::max(h, f.height);
      }
    }
    return h;
  }

  std::vector<std::size_t> features_near(const Rect& r) const { return feature_index_.query(r); }
  std::vector<std::size_t> virtual_near(const Rect& r) const { return virtual_index_.query(r); }

  // Copy whose virtual obstacles are grown by `margin` on every side and
  // clipped to their unit (or the grid, for walls spanning units).
  TerrainGrid with_inflated_obstacles(double margin) const;

 private:
  friend class TerrainBuilder;
  TerrainGrid() = default;

  Scenario scenario_ = Scenario::Custom;
  int unit_rows_ = 0;
  int unit_cols_ = 0;
  double unit_size_ = 2.0;
  int area_rows_ = 0;
  int area_cols_ = 0;
  TerrainOptions options_;
  std::vector<TerrainUnitSpec> units_;
  Heightfield heightfield_;
  std::vector<Footprint> features_;
  std::vector<Footprint> virtual_;
  std::vector<Rect> virtual_clip_;  // extent each virtual footprint is clipped to
  UnitIndex feature_index_;
  UnitIndex virtual_index_;
};

/// Assembles a TerrainGrid unit by unit. Every generator goes through
/// place_unit() so feature geometry is defined in one place.
class TerrainBuilder {
 public:
  TerrainBuilder(Scenario scenario, int unit_rows, int unit_cols, TerrainOptions options = {})
      : scenario_(scenario), rows_(unit_rows), cols_(unit_cols), options_(options),
        units_(static_cast<std::size_t>(std::max(unit_rows, 0)) * std::max(unit_cols, 0)) {
    if (unit_rows < 1 || unit_cols < 1) throw InvalidArgument("terrain must have at least one unit");
    if (!(options.unit_size > 0.0) || !(options.resolution > 0.0)) {
      throw InvalidArgument("unit size and resolution must be positive");
    }
    const double s = options.unit_size;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        TerrainUnitSpec& u = units_[idx(r, c)];
        u.origin = {c * s, r * s};
        u.extent = {s, s};
      }
    }
    area_rows_ = rows_;
    area_cols_ = cols_;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const TerrainOptions& options() const { return options_; }
  const TerrainUnitSpec& unit(int row, int col) const { return units_[idx(row, col)]; }

  void set_areas(int area_rows, int area_cols) {
    area_rows_ = area_rows;
    area_cols_ = area_cols;
  }

  // Places a unit with its standard feature geometry. `rng` is needed only
  // for obstacle units. Previously placed features of the unit are dropped.
  void place_unit(int row, int col, UnitKind kind, double param, double difficulty,
                  Axis axis = Axis::X, Rng* rng = nullptr) {
    TerrainUnitSpec& u = units_[idx(row, col)];
    u.kind = kind;
    u.param = param;
    u.difficulty = difficulty;
    u.axis = axis;
    std::erase_if(features_, [&](const Owned& f) { return f.owner == idx(row, col); });

    const Rect ur = u.rect();
    const Vec2 c = u.center();
    const double s = options_.unit_size;
    auto strip = [&](double width) {
      return axis == Axis::X ? Rect{{c.x - width / 2, ur.lo.y}, {c.x + width / 2, ur.hi.y}}
                             : Rect{{ur.lo.x, c.y - width / 2}, {ur.hi.x, c.y + width / 2}};
    };
    switch (kind) {
      case UnitKind::Flat:
        break;
      case UnitKind::Hurdle:
        add(row, col, {strip(options_.hurdle_thickness), param, FeatureKind::Hurdle});
        break;
      case UnitKind::Gap:
        add(row, col, {strip(param), -options_.gap_depth, FeatureKind::Gap});
        break;
      case UnitKind::Box: {
        const double b = s * options_.box_fraction;
        // Fixed-waypoint tracks get a full-width step; elsewhere a square
        // platform that can be approached from any side.
        const Rect r = scenario_ == Scenario::WPFixed ? strip(b) : Rect::centered(c, {b, b});
        add(row, col, {r, param, FeatureKind::Box});
        break;
      }
      case UnitKind::Obstacle: {
        if (rng == nullptr) throw InvalidArgument("obstacle units need a random source");
        const ParamRange pr = param_range(UnitKind::Obstacle, scenario_);
        const double lo = std::min(pr.lo, param);
        const int span = std::max(0, options_.max_obstacles - options_.min_obstacles);
        const int count = options_.min_obstacles + static_cast<int>(rng->below(span + 1));
        for (int k = 0; k < count; ++k) {
          for (int attempt = 0; attempt < 64; ++attempt) {
            const Vec2 size{rng->uniform(lo, param), rng->uniform(lo, param)};
            const Vec2 lo_corner{rng->uniform(ur.lo.x, ur.hi.x - size.x),
                                 rng->uniform(ur.lo.y, ur.hi.y - size.y)};
            const Rect r{lo_corner, lo_corner + size};
            if (r.inflated(options_.obstacle_clearance).contains(c)) continue;
            add(row, col, {r, options_.obstacle_height, FeatureKind::Obstacle});
            break;
          }
        }
        break;
      }
      case UnitKind::Wall:
        add(row, col, {ur, options_.wall_height, FeatureKind::Wall});
        break;
    }
  }

  // Free-standing wall (may span several units).
  void add_wall(const Rect& r, double height) {
    features_.push_back({{r, height, FeatureKind::Wall}, kNoOwner});
  }

  // Arbitrary feature not tied to a unit's standard geometry.
  void add_feature(const Footprint& f) { features_.push_back({f, kNoOwner}); }

  TerrainGrid build() const {
    TerrainGrid g;
    g.scenario_ = scenario_;
    g.unit_rows_ = rows_;
    g.unit_cols_ = cols_;
    g.unit_size_ = options_.unit_size;
    g.area_rows_ = area_rows_;
    g.area_cols_ = area_cols_;
    g.options_ = options_;
    g.units_ = units_;

    const Rect bounds = g.bounds();
    for (const Owned& f : features_) {
      g.features_.push_back(f.fp);
      if (f.fp.blocks_body()) {
        g.virtual_.push_back(f.fp);
        g.virtual_clip_.push_back(f.owner == kNoOwner ? bounds : units_[f.owner].rect());
      }
    }

    const double r = options_.resolution;
    const int hr = exact_cells(rows_ * options_.unit_size, r);
    const int hc = exact_cells(cols_ * options_.unit_size, r);
    g.heightfield_ = Heightfield(hr, hc, r);
    // Trenches first so raised features drawn over them win.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Footprint& f : g.features_) {
        const bool trench = f.kind == FeatureKind::Gap;
        if ((pass == 0) != trench) continue;
        const int j0 = std::max(0, static_cast<int>(std::ceil(f.rect.lo.x / r - 0.5)));
        const int j1 = std::min(hc - 1, static_cast<int>(std::floor(f.rect.hi.x / r - 0.5)));
        const int i0 = std::max(0, static_cast<int>(std::ceil(f.rect.lo.y / r - 0.5)));
        const int i1 = std::min(hr - 1, static_cast<int>(std::floor(f.rect.hi.y / r - 0.5)));
        for (int i = i0; i <= i1; ++i) {
          for (int j = j0; j <= j1; ++j) {
            double& h = g.heightfield_.at(i, j);
            h = trench ? f.height : std::max(h, f.height);
          }
        }
      }
    }
    g.feature_index_ = UnitIndex(rows_, cols_, options_.unit_size, g.features_);
    g.virtual_index_ = UnitIndex(rows_, cols_, options_.unit_size, g.virtual_);
    return g;
  }

 private:
  static constexpr std::size_t kNoOwner = static_cast<std::size_t>(-1);
  struct Owned {
    Footprint fp;
    std::size_t owner;
  };

  std::size_t idx(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw InvalidArgument("unit index out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  void add(int r, int c, const Footprint& f) { features_.push_back({f, idx(r, c)}); }

  static int exact_cells(double extent, double res) {
    const double n = std::round(extent / res);
    if (std::abs(n * res - extent) > 1e-9 * std::max(1.0, extent)) {
      throw InvalidArgument("terrain extent is not a whole number of heightfield cells");
    }
    return static_cast<int>(n);
  }

  Scenario scenario_;
  int rows_;
  int cols_;
  TerrainOptions options_;
  int area_rows_;
  int area_cols_;
  std::vector<TerrainUnitSpec> units_;
  std::vector<Owned> features_;
};

inline TerrainGrid TerrainGrid::with_inflated_obstacles(double margin) const {
  if (!(margin >= 0.0)) throw InvalidArgument("inflation margin must be non-negative");
  TerrainGrid g = *this;
  for (std::size_t k = 0; k < g.virtual_.size(); ++k) {
    g.virtual_[k].rect = g.virtual_[k].rect.inflated(margin).intersect(g.virtual_clip_[k]);
  }
  g.virtual_index_ = UnitIndex(unit_rows_, unit_cols_, unit_size_, g.virtual_);
  return g;
}

inline TerrainGrid inflate_obstacles(const TerrainGrid& grid, double margin) {
  return grid.with_inflated_obstacles(margin);
}

inline constexpr int kTrackUnits = 6;
inline constexpr int kAreaUnitRows = 6;
inline constexpr int kAreaUnitCols = 5;

inline void check_difficulty(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw InvalidArgument("difficulty must lie in [0, 1], got " + std::to_string(d));
  }
}

/// Fixed-waypoint training grid: `rows` x `cols` tracks, each a row of six
/// units of one kind laid along +x. `kinds` is cycled over tracks in
/// row-major order; `difficulty` holds one value per track row.
inline TerrainGrid generate_wp_fixed(int rows, int cols, std::span<const UnitKind> kinds,
                                     std::span<const double> difficulty, std::uint64_t seed,
                                     const TerrainOptions& options = {}) {
  if (rows < 1 || cols < 1) throw InvalidArgument("track grid needs at least one row and column");
  if (kinds.empty()) throw InvalidArgument("kind assignment is empty");
  if (static_cast<int>(difficulty.size()) != rows) {
    throw InvalidArgument("need one difficulty per track row");
  }
  for (double d : difficulty) check_difficulty(d);

  TerrainBuilder b(Scenario::WPFixed, rows, cols * kTrackUnits, options);
  Rng rng(seed);
  for (int tr = 0; tr < rows; ++tr) {
    for (int tc = 0; tc < cols; ++tc) {
      const UnitKind kind = kinds[static_cast<std::size_t>(tr * cols + tc) % kinds.size()];
      if (kind == UnitKind::Wall) throw InvalidArgument("wall is not a training track kind");
      const double param = unit_param(kind, Scenario::WPFixed, difficulty[tr]);
      for (int u = 0; u < kTrackUnits; ++u) {
        b.place_unit(tr, tc * kTrackUnits + u, kind, param, difficulty[tr], Axis::X, &rng);
      }
    }
  }
  return b.build();
}

struct ReachabilityReport {
  bool ok = true;
  std::string diagnostic;
};

// Whether a unit's center can be reached once the unit is entered.
inline bool unit_enterable(const TerrainUnitSpec& u, const RobotCapabilities& caps) {
  constexpr double kTol = 1e-9;
  switch (u.kind) {
    case UnitKind::Flat:
    case UnitKind::Obstacle: return true;  // footprints keep the center clear
    case UnitKind::Hurdle: return u.param <= caps.max_hurdle + kTol;
    case UnitKind::Box: return u.param <= caps.max_climb + kTol;
    case UnitKind::Gap: return u.param <= caps.max_gap + kTol;
    case UnitKind::Wall: return false;
  }
  return false;
}

namespace detail {

// `unit_of(r, c)` returns the spec of absolute unit (r, c).
template <class UnitOf>
ReachabilityReport check_area(const UnitOf& unit_of, int r0, int c0, int nr, int nc,
                              const RobotCapabilities& caps) {
  std::vector<char> seen(static_cast<std::size_t>(nr) * nc, 0);
  std::queue<std::pair<int, int>> q;
  auto enterable = [&](int r, int c) { return unit_enterable(unit_of(r0 + r, c0 + c), caps); };
  for (int c = 0; c < nc; ++c) {
    if (enterable(0, c)) {
      seen[static_cast<std::size_t>(c)] = 1;
      q.push({0, c});
    }
  }
  constexpr int dr[4] = {1, -1, 0, 0};
  constexpr int dc[4] = {0, 0, 1, -1};
  while (!q.empty()) {
    auto [r, c] = q.front();
    q.pop();
    for (int k = 0; k < 4; ++k) {
      const int rr = r + dr[k];
      const int cc = c + dc[k];
      if (rr < 0 || rr >= nr || cc < 0 || cc >= nc) continue;
      auto& s = seen[static_cast<std::size_t>(rr) * nc + cc];
      if (s || !enterable(rr, cc)) continue;
      s = 1;
      q.push({rr, cc});
    }
  }
  for (int r = 0; r < nr; ++r) {
    bool any_seen = false;
    bool any_target = false;
    for (int c = 0; c < nc; ++c) {
      if (unit_of(r0 + r, c0 + c).kind == UnitKind::Wall) continue;
      any_target = true;
      any_seen = any_seen || seen[static_cast<std::size_t>(r) * nc + c];
    }
    if (any_target && !any_seen) {
      return {false, "row " + std::to_string(r0 + r) + " cuts reachability: no unit in it can be "
                         "reached from start row " + std::to_string(r0)};
    }
  }
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) {
      if (unit_of(r0 + r, c0 + c).kind == UnitKind::Wall) continue;
      if (!seen[static_cast<std::size_t>(r) * nc + c]) {
        return {false, "unit (" + std::to_string(r0 + r) + "," + std::to_string(c0 + c) + ") [" +
                           to_string(unit_of(r0 + r, c0 + c).kind) +
                           "] is unreachable from start row " + std::to_string(r0)};
      }
    }
  }
  return {};
}

}  // namespace detail

/// Flood fill over unit adjacency from each area's first row. A unit counts
/// as reached only if its own feature is within the capability limits; walls
/// block and are not required to be reached.
inline ReachabilityReport validate_reachability(const TerrainGrid& grid,
                                                const RobotCapabilities& caps = {}) {
  const int ar = std::max(1, grid.area_rows());
  const int ac = std::max(1, grid.area_cols());
  for (int r0 = 0; r0 < grid.unit_rows(); r0 += ar) {
    for (int c0 = 0; c0 < grid.unit_cols(); c0 += ac) {
      const int nr = std::min(ar, grid.unit_rows() - r0);
      const int nc = std::min(ac, grid.unit_cols() - c0);
      auto rep = detail::check_area(
          [&](int r, int c) -> const TerrainUnitSpec& { return grid.unit(r, c); }, r0, c0, nr, nc,
          caps);
      if (!rep.ok) return rep;
    }
  }
  return {};
}

/// Random-waypoint grid of `area_rows` x `area_cols` areas, each 6 x 5 units
/// whose first row is flat. Kinds are drawn with flat weighted double; hurdle
/// and gap orientation is random. An area that fails reachability is
/// regenerated up to `options.reachability_retries` times.
inline TerrainGrid generate_wp_random(int area_rows, int area_cols, double difficulty,
                                      std::uint64_t seed, const TerrainOptions& options = {},
                                      const RobotCapabilities& caps = {}) {
  if (area_rows < 1 || area_cols < 1) throw InvalidArgument("need at least one area");
  check_difficulty(difficulty);
  constexpr std::array<UnitKind, 6> kWeighted = {UnitKind::Flat,     UnitKind::Flat,
                                                 UnitKind::Hurdle,   UnitKind::Box,
                                                 UnitKind::Gap,      UnitKind::Obstacle};

  TerrainBuilder b(Scenario::WPRandom, area_rows * kAreaUnitRows, area_cols * kAreaUnitCols,
                   options);
  b.set_areas(kAreaUnitRows, kAreaUnitCols);
  for (int ar = 0; ar < area_rows; ++ar) {
    for (int ac = 0; ac < area_cols; ++ac) {
      const int r0 = ar * kAreaUnitRows;
      const int c0 = ac * kAreaUnitCols;
      Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(ar * area_cols + ac)));
      bool ok = false;
      std::string last;
      for (int attempt = 0; attempt < std::max(1, options.reachability_retries) && !ok; ++attempt) {
        for (int r = 0; r < kAreaUnitRows; ++r) {
          for (int c = 0; c < kAreaUnitCols; ++c) {
            const UnitKind kind = r == 0 ? UnitKind::Flat : kWeighted[rng.below(kWeighted.size())];
            const Axis axis = rng.coin() ? Axis::X : Axis::Y;
            b.place_unit(r0 + r, c0 + c, kind, unit_param(kind, Scenario::WPRandom, difficulty),
                         difficulty, axis, &rng);
          }
        }
        auto rep = detail::check_area(
            [&](int r, int c) -> const TerrainUnitSpec& { return b.unit(r, c); }, r0, c0,
            kAreaUnitRows, kAreaUnitCols, caps);
        ok = rep.ok;
        last = rep.diagnostic;
      }
      if (!ok) {
        throw GenerationError("area (" + std::to_string(ar) + "," + std::to_string(ac) +
                              ") has no reachable arrangement after " +
                              std::to_string(options.reachability_retries) +
                              " attempts; last failure: " + last);
      }
    }
  }
  return b.build();
}

// Explicit parameter for one layout unit, replacing the difficulty mapping.
struct UnitParamOverride {
  int row = 0;
  int col = 0;
  double param = 0.0;
};

/// Grid from an ASCII layout, one string per unit row (row 0 first), one
/// letter per unit: F flat, H hurdle, B box, G gap, O obstacle, W wall.
/// Params come from the random-waypoint ranges at `difficulty` unless overridden.
inline TerrainGrid generate_layout(std::span<const std::string> layout, double difficulty,
                                   std::uint64_t seed, const TerrainOptions& options = {},
                                   std::span<const Rect> walls = {},
                                   std::span<const UnitParamOverride> overrides = {}) {
  if (layout.empty() || layout.front().empty()) throw InvalidArgument("layout is empty");
  check_difficulty(difficulty);
  const int rows = static_cast<int>(layout.size());
  const int cols = static_cast<int>(layout.front().size());
  TerrainBuilder b(Scenario::Custom, rows, cols, options);
  Rng rng(seed);
  for (int r = 0; r < rows; ++r) {
    const std::string& line = layout[static_cast<std::size_t>(r)];
    if (static_cast<int>(line.size()) != cols) {
      throw InvalidArgument("layout row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < cols; ++c) {
      auto kind = unit_kind_from_code(line[static_cast<std::size_t>(c)]);
      if (!kind) {
        throw InvalidArgument("layout row " + std::to_string(r) + ": unknown unit code '" +
                              std::string(1, line[static_cast<std::size_t>(c)]) + "'");
      }
      double param = unit_param(*kind, Scenario::Custom, difficulty);
      for (const auto& o : overrides) {
        if (o.row == r && o.col == c) param = o.param;
      }
      b.place_unit(r, c, *kind, param, difficulty, Axis::X, &rng);
    }
  }
  for (const auto& o : overrides) {
    if (o.row < 0 || o.row >= rows || o.col < 0 || o.col >= cols) {
      throw IndexOutOfRange(o.row, o.col, "parameter override outside the layout");
    }
    if (!(o.param > 0.0)) throw InvalidArgument("parameter override must be positive");
  }
  for (const Rect& w : walls) b.add_wall(w, options.wall_height);
  return b.build();
}

/// Rasterizes footprints onto an occupancy map whose origin is the grid's.
/// With `wall_only` only wall footprints count; otherwise every raised
/// feature taller than `height_threshold` does. Obstacles and walls use their
/// virtual (possibly inflated) footprints.
inline OccupancyMap to_occupancy(const TerrainGrid& grid, double cell, bool wall_only,
                                 double height_threshold = 0.35) {
  if (!(cell > 0.0)) throw InvalidArgument("occupancy cell size must be positive");
  const Rect b = grid.bounds();
  const int rows = static_cast<int>(std::ceil(b.hi.y / cell - 1e-9));
  const int cols = static_cast<int>(std::ceil(b.hi.x / cell - 1e-9));
  OccupancyMap map(rows, cols, cell);
  for (const Footprint& f : grid.virtual_obstacles()) {
    if (wall_only ? f.kind == FeatureKind::Wall : f.height > height_threshold) map.mark(f.rect);
  }
  if (!wall_only) {
    for (const Footprint& f : grid.features()) {
      if ((f.kind == FeatureKind::Hurdle || f.kind == FeatureKind::Box) && f.height > height_threshold) {
        map.mark(f.rect);
      }
    }
  }
  return map;
}

struct Scandots {
  std::vector<Vec2> pattern;
  std::vector<double> samples;
};

// Base-frame sample grid: 11 x 11 points over [-0.8, 0.8] x [-0.5, 0.5] m.
inline std::vector<Vec2> default_scandot_pattern() {
  std::vector<Vec2> p;
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) p.push_back({-0.8 + 0.16 * i, -0.5 + 0.1 * j});
  }
  return p;
}

/// Heights around the robot: sample k is the heightfield at
/// pose.position + rotate(pattern[k], pose.yaw). Points off the grid clamp to
/// the border value.
inline Scandots sample_scandots(const TerrainGrid& grid, const Pose2& pose,
                                std::span<const Vec2> pattern) {
  if (!grid.contains(pose.position)) throw InvalidArgument("scandot pose outside the grid");
  Scandots s;
  s.pattern.assign(pattern.begin(), pattern.end());
  s.samples.reserve(pattern.size());
  for (Vec2 off : pattern) s.samples.push_back(grid.height_at(pose.position + rotate(off, pose.yaw)));
  return s;
}

}  // namespace wpnav
