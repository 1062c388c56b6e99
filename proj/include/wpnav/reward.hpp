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
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"

namespace wpnav {

enum class JointNorm { L1, L2 };
enum class Phase { Pretrain, Finetune };

inline constexpr int kNumJoints = 12;

// Standing posture (hip, thigh, calf) x 4 legs, radians.
inline std::vector<double> default_joint_posture() {
  std::vector<double> q;
  for (int leg = 0; leg < 4; ++leg) q.insert(q.end(), {0.0, 0.8, -1.5});
  return q;
}

// Per-term weights of the composed reward.
struct RewardWeights {
  double reach = 1.0;
  double stay = 1.0;
  double track = 1.5;
  double yaw = 0.5;
};

struct RewardConfig {
  double epsilon = 0.01;      // keeps r_reach finite at t = 0
  double d_t = 0.4;           // stay radius
  double cosine_floor = 0.1;  // r_track penalty threshold
  RewardWeights weights;
  std::vector<double> q_default = default_joint_posture();
  JointNorm joint_norm = JointNorm::L1;

  bool valid() const {
    return epsilon > 0.0 && d_t > 0.0 && cosine_floor > -1.0 && cosine_floor < 1.0 &&
           std::isfinite(weights.reach) && std::isfinite(weights.stay) &&
           std::isfinite(weights.track) && std::isfinite(weights.yaw);
  }
};

// Waypoints reached per unit episode time.
inline double reward_reach(int n_p, double t, const RewardConfig& cfg) {
  if (n_p < 0 || t < 0.0) throw InvalidArgument("reward_reach needs n_p >= 0 and t >= 0");
  return n_p / (t + cfg.epsilon);
}

inline double joint_deviation(std::span<const double> q, const RewardConfig& cfg) {
  if (q.size() != cfg.q_default.size()) {
    throw InvalidArgument("joint vector has " + std::to_string(q.size()) + " entries, expected " +
                          std::to_string(cfg.q_default.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double d = cfg.q_default[i] - q[i];
    acc += cfg.joint_norm == JointNorm::L1 ? std::abs(d) : d * d;
  }
  return cfg.joint_norm == JointNorm::L1 ? acc : std::sqrt(acc);
}

// exp(-|q_default - q|), paid only strictly inside the stay radius.
inline double reward_stay(std::span<const double> q, Vec2 w_rel, const RewardConfig& cfg) {
  const double dev = joint_deviation(q, cfg);
  return norm(w_rel) < cfg.d_t ? std::exp(-dev) : 0.0;
}

// Cosine similarity; 0 when either vector is (numerically) zero, which sends
// a stationary robot into the r_track penalty branch.
inline double cosine_similarity(Vec2 a, Vec2 b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na < 1e-9 || nb < 1e-9) return 0.0;
  return dot(a, b) / (na * nb);
}

// -1 below the cosine floor, otherwise cosine times speed.
inline double reward_track(Vec2 v, Vec2 w_rel, const RewardConfig& cfg) {
  const double c = cosine_similarity(v, w_rel);
  if (c < cfg.cosine_floor) return -1.0;
  return c * norm(v);
}

// Pretrain-phase direction term (stand-in form): plain cosine.
inline double reward_direction(Vec2 v, Vec2 w_rel) { return cosine_similarity(v, w_rel); }

// Heading alignment (stand-in form): exp(-|wrap(bearing - yaw)|).
inline double reward_yaw(double yaw, double waypoint_bearing) {
  return std::exp(-std::abs(wrap_angle(waypoint_bearing - yaw)));
}

struct RewardInputs {
  int n_p = 0;
  double t = 0.0;
  std::vector<double> q;
  Vec2 v_base;  // planar base velocity in the base frame
  Vec2 w_rel;
  double yaw = 0.0;
  double waypoint_bearing = 0.0;  // world-frame direction to the waypoint
};

// Extra shaping terms supplied by the caller (regularizers and the like).
using RewardTerm = std::function<double(const RewardInputs&)>;

struct RewardBreakdown {
  double r_reach = 0.0;
  double r_stay = 0.0;
  double r_track = 0.0;
  double r_yaw = 0.0;
  double regularization = 0.0;
  bool stay_gate = false;
  double total = 0.0;
};

/// Combines the waypoint-tracking terms. Inside the stay radius only the
/// stay term is paid and every other term is zeroed. Outside it the tracking
/// term is the plain cosine in the pretrain phase and the speed-weighted,
/// floor-penalized form in the fine-tune phase.
inline RewardBreakdown compose(const RewardInputs& in, const RewardConfig& cfg, Phase phase,
                               std::span<const RewardTerm> extra = {}) {
  RewardBreakdown b;
  b.stay_gate = norm(in.w_rel) < cfg.d_t;
  if (b.stay_gate) {
    b.r_stay = reward_stay(in.q, in.w_rel, cfg);
    b.total = cfg.weights.stay * b.r_stay;
    return b;
  }
  joint_deviation(in.q, cfg);  // dimension check applies in both branches
  b.r_reach = reward_reach(in.n_p, in.t, cfg);
  b.r_track = phase == Phase::Pretrain ? reward_direction(in.v_base, in.w_rel)
                                       : reward_track(in.v_base, in.w_rel, cfg);
  b.r_yaw = reward_yaw(in.yaw, in.waypoint_bearing);
  for (const auto& term : extra) b.regularization += term(in);
  b.total = cfg.weights.reach * b.r_reach + cfg.weights.track * b.r_track +
            cfg.weights.yaw * b.r_yaw + b.regularization;
  return b;
}

inline void write_reward_header(std::ostream& os) {
  os << "step,r_reach,r_stay,r_track,r_yaw,gate,total\n";
}

inline void write_reward_row(std::ostream& os, long step, const RewardBreakdown& b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "%ld,%.9g,%.9g,%.9g,%.9g,%d,%.9g\n", step, b.r_reach, b.r_stay,
                b.r_track, b.r_yaw, b.stay_gate ? 1 : 0, b.total);
  os << buf;
}

}  // namespace wpnav
