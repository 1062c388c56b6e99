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

#include "wpnav/capabilities.hpp"
#include "wpnav/config.hpp"
#include "wpnav/errors.hpp"
#include "wpnav/evaluation.hpp"
#include "wpnav/geometry.hpp"
#include "wpnav/llm.hpp"
#include "wpnav/navigation.hpp"
#include "wpnav/occupancy.hpp"
#include "wpnav/planner.hpp"
#include "wpnav/reward.hpp"
#include "wpnav/rng.hpp"
#include "wpnav/robot.hpp"
#include "wpnav/terrain.hpp"
#include "wpnav/terrain_io.hpp"
#include "wpnav/waypoint.hpp"
