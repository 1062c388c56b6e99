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

namespace wpnav {

// Locomotion limits of the low-level controller. Defaults are the hardest
// terrain of the random-waypoint curriculum (hurdle 0.30 m, box 0.35 m,
// gap 0.35 m).
struct RobotCapabilities {
  double max_climb = 0.35;
  double max_hurdle = 0.30;
  double max_gap = 0.35;
  double body_radius = 0.3;
  double max_speed = 1.5;
  double max_yaw_rate = 2.0;

  bool valid() const {
    return max_climb > 0 && max_hurdle > 0 && max_gap > 0 && body_radius > 0 &&
           max_speed > 0 && max_yaw_rate > 0;
  }
};

}  // namespace wpnav
