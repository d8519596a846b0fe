/*
Copyright 2026 The blindsim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <chrono>

#include "blindsim/analysis/analysis.hpp"
#include "blindsim/scene/scenario.hpp"
#include "blindsim/scene/voxelize.hpp"
#include "blindsim/solver/solve.hpp"

namespace blindsim {

struct RunOptions {
  SolveOptions solve;
  OpenWindowMode open_mode = OpenWindowMode::aperture;
};

struct RunResult {
  SceneSpec scene;
  VoxelGrid grid;
  Solution sol;
  Profile profile;
  CrossingReport crossings;
  double total_seconds = 0.0;
};

/// Validate, voxelize, solve all bands, and sample the receiver line.
inline RunResult run_scene(const SceneSpec& scene, const RunOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.scene = scene;
  r.grid = voxelize(scene, opt.open_mode);
  r.sol = solve_scene(r.grid, scene, opt.solve);
  r.profile = sample_profile(r.grid, r.sol, scene.receiver, scene.air);
  r.crossings = crossing_distances(r.profile, scene.bnl_db);
  r.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

}  // namespace blindsim
