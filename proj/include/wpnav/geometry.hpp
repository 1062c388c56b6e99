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
#include <cmath>
#include <numbers>
#include <optional>

namespace wpnav {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Counter-clockwise rotation by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

struct Pose2 {
  Vec2 position;
  double yaw = 0.0;
};

// Axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct Rect {
  Vec2 lo;
  Vec2 hi;

  static Rect centered(Vec2 center, Vec2 size) {
    return {center - size * 0.5, center + size * 0.5};
  }

  Vec2 center() const { return (lo + hi) * 0.5; }
  Vec2 size() const { return hi - lo; }
  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  bool contains_strict(Vec2 p) const {
    return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y;
  }
  bool contains(const Rect& r) const {
    return r.lo.x >= lo.x && r.hi.x <= hi.x && r.lo.y >= lo.y && r.hi.y <= hi.y;
  }
  bool overlaps(const Rect& r) const {
    return lo.x < r.hi.x && r.lo.x < hi.x && lo.y < r.hi.y && r.lo.y < hi.y;
  }
  Rect inflated(double m) const { return {lo - Vec2{m, m}, hi + Vec2{m, m}}; }
  Rect intersect(const Rect& r) const {
    return {{std::max(lo.x, r.lo.x), std::max(lo.y, r.lo.y)},
            {std::min(hi.x, r.hi.x), std::min(hi.y, r.hi.y)}};
  }
  bool operator==(const Rect&) const = default;
};

struct Interval {
  double enter;
  double exit;
};

// Liang-Barsky clip of the parametric line origin + t*dir, t in [t_min, t_max],
// against a closed rectangle. Returns the parameter interval inside the
// rectangle, or nullopt when the line misses it.
inline std::optional<Interval> clip_line(const Rect& r, Vec2 origin, Vec2 dir,
                                         double t_min, double t_max) {
  double t0 = t_min;
  double t1 = t_max;
  const double p[4] = {-dir.x, dir.x, -dir.y, dir.y};
  const double q[4] = {origin.x - r.lo.x, r.hi.x - origin.x, origin.y - r.lo.y,
                       r.hi.y - origin.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return std::nullopt;
  }
  return Interval{t0, t1};
}

inline std::optional<Interval> clip_segment(const Rect& r, Vec2 a, Vec2 b) {
  return clip_line(r, a, b - a, 0.0, 1.0);
}

}  // namespace wpnav
