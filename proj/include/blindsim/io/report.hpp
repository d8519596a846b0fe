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

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "blindsim/core/errors.hpp"
#include "blindsim/scene/scene_json.hpp"
#include "blindsim/sim.hpp"

namespace blindsim {

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw io_error("write failed: " + path);
}

inline void write_scene_json(const std::string& path, const SceneSpec& scene) {
  write_text_file(path, scene_to_json(scene).dump(2) + "\n");
}

/// Machine-readable summary of a run: solver statistics per band, the energy
/// audit, subdomain geometry, crossing distances, and any snapping notes.
inline nlohmann::json run_report_json(const RunResult& r,
                                      const RunOptions& opt) {
  nlohmann::json j;
  j["scene"] = r.scene.name;
  j["mesh_h"] = r.grid.h;
  j["cells"] = {{"x", r.grid.n[0]}, {"y", r.grid.n[1]}, {"z", r.grid.n[2]},
                {"total", r.grid.n[0] * r.grid.n[1] * r.grid.n[2]}};
  j["boundary_model"] = exchange_model_name(opt.solve.model);
  j["open_window_mode"] =
      opt.open_mode == OpenWindowMode::aperture ? "aperture" : "absorber";
  j["threads"] = opt.solve.threads;
  j["rel_tol"] = opt.solve.rel_tol;

  nlohmann::json bands = nlohmann::json::array();
  for (std::size_t b = 0; b < kNumBands; ++b) {
    const auto& info = r.sol.info[b];
    bands.push_back({{"hz", kBandCenterHz[b]},
                     {"iterations", info.iterations},
                     {"rel_residual", info.rel_residual},
                     {"negative_cells", info.negative_cells},
                     {"seconds", info.seconds},
                     {"preconditioner", info.preconditioner},
                     {"input_w", info.input_w},
                     {"output_w", info.output_w},
                     {"imbalance_pct", info.imbalance_pct}});
  }
  j["bands"] = bands;
  j["total_seconds"] = r.total_seconds;

  const char* region_names[2] = {"exterior", "interior"};
  for (int region = 0; region < 2; ++region) {
    const auto& s = r.grid.stats[region];
    if (s.cells == 0) continue;
    j["subdomains"][region_names[region]] = {
        {"cells", s.cells},
        {"volume_m3", s.volume},
        {"surface_m2", s.surface},
        {"mean_free_path_m", s.mean_free_path},
    };
  }

  nlohmann::json crossings;
  for (std::size_t b = 0; b < kNumBands; ++b) {
    const auto& c = r.crossings.band[b];
    crossings[band_label(b)] =
        c.crossed ? nlohmann::json(c.distance_m) : nlohmann::json(nullptr);
  }
  crossings["overall"] = r.crossings.overall.crossed
                             ? nlohmann::json(r.crossings.overall.distance_m)
                             : nlohmann::json(nullptr);
  j["crossings_m"] = crossings;

  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& msg : r.grid.log) warnings.push_back(msg);
  for (const auto& msg : r.scene.materials.warnings()) warnings.push_back(msg);
  j["warnings"] = warnings;
  return j;
}

inline void write_run_report(const std::string& path, const RunResult& r,
                             const RunOptions& opt) {
  write_text_file(path, run_report_json(r, opt).dump(2) + "\n");
}

}  // namespace blindsim
