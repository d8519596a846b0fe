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

#include <string>
#include <vector>

#include "blindsim/scene/scene.hpp"

namespace blindsim {

/// Vocal effort classes for the visitor-speech source fixture.
enum class SpeechEffort { soft, normal, loud };

/// Octave-band speech spectrum at 1 m, dB. The spectral shapes are fixed;
/// each is normalized so the six bands sum energetically to the class's
/// overall level: 54.8 dB (soft), 60.0 dB (normal), 73.8 dB (loud).
/// Raising vocal effort tilts energy toward the upper bands, so the
/// loud-normal gap grows with frequency.
inline BandSpectrum speech_spectrum(SpeechEffort effort) {
  BandSpectrum shape;
  double overall = 0.0;
  switch (effort) {
    case SpeechEffort::soft:
      shape = BandSpectrum{{-10.0, -3.5, 0.0, -3.5, -11.0, -18.0}};
      overall = 54.8;
      break;
    case SpeechEffort::normal:
      shape = BandSpectrum{{-12.0, -4.5, 0.0, -1.5, -8.0, -14.0}};
      overall = 60.0;
      break;
    case SpeechEffort::loud:
      shape = BandSpectrum{{-21.0, -11.5, -3.0, 0.0, -5.0, -11.0}};
      overall = 73.8;
      break;
  }
  const double gain = overall - band_sum_db(shape);
  return shape + BandSpectrum::uniform(gain);
}

/// Background noise level of the surrounding reserve, dB per band (30 dB
/// overall). A calm daytime forest ambient: little wind rumble, most of the
/// energy in the mid and high bands where foliage movement and birdsong sit.
inline BandSpectrum reference_bnl() {
  return BandSpectrum{{19.6, 20.5, 23.5, 21.8, 24.6, 21.3}};
}

inline std::vector<std::string> scenario_ids() {
  return {"SS01", "SS02", "SS03", "SS04", "SS05", "SS06", "SS07",
          "MS01", "MS02", "MS03", "MS04", "MS05", "MS06", "MS07"};
}

/// Bundled scenario matrix. Two blind sizes (SS: 2 visitor pairs, MS: 4)
/// crossed with an operating-condition ladder:
///   01 windows open, loud speech        04 closed, light walls, bare lining
///   02 windows open, normal speech      05 closed, light walls, absorptive lining
///   03 windows open, soft speech        06 closed, heavy walls, bare lining
///                                       07 closed, heavy walls, absorptive lining
inline SceneSpec build_scenario(const std::string& id) {
  const bool multi = id.size() == 4 && id.compare(0, 2, "MS") == 0;
  const bool single = id.size() == 4 && id.compare(0, 2, "SS") == 0;
  int variant = 0;
  if ((multi || single) && std::isdigit(static_cast<unsigned char>(id[2])) &&
      std::isdigit(static_cast<unsigned char>(id[3])))
    variant = (id[2] - '0') * 10 + (id[3] - '0');
  if ((!multi && !single) || variant < 1 || variant > 7) {
    std::string known;
    for (const auto& s : scenario_ids()) known += " " + s;
    throw input_error("unknown scenario '" + id + "'; available:" + known);
  }

  SceneSpec scene;
  scene.name = id;
  scene.domain = AxisBox{{0.0, 0.0, 0.0}, {35.0, 15.0, 10.0}};
  scene.mesh_h = 0.25;
  scene.ground_material = "soil_vegetation";
  scene.outer_boundary_alpha = 1.0;
  scene.bnl_db = reference_bnl();
  scene.receiver.start = {4.5, 7.5, 0.2};
  scene.receiver.direction = {1.0, 0.0, 0.0};
  scene.receiver.length = 30.0;
  scene.receiver.step = 0.5;

  const bool open_windows = variant <= 3;
  const bool heavy = variant == 6 || variant == 7;
  const bool absorptive = variant == 5 || variant == 7;

  BlindSpec blind;
  blind.interior = multi ? AxisBox{{0.5, 4.5, 0.0}, {3.0, 10.5, 2.7}}
                         : AxisBox{{0.5, 6.0, 0.0}, {3.0, 9.0, 2.7}};
  blind.wall_material =
      heavy ? "single_stud_resilient_channel_wall" : "hardboard";
  blind.lining_material = absorptive ? "perforated_wood" : "unperforated_wood";
  blind.exterior_material = "unperforated_wood";
  blind.floor_material = "linoleum_concrete";
  blind.furnishing_material = "wooden_bench_person";

  const std::string glass = heavy ? "heavy_glass" : "ordinary_glass";
  std::vector<double> window_y0 =
      multi ? std::vector<double>{4.8, 5.5, 6.2, 6.9, 7.6, 8.3, 9.0, 9.7}
            : std::vector<double>{6.2, 6.9, 7.6, 8.3};
  for (double y0 : window_y0) {
    Opening w;
    w.kind = "window";
    w.side = WallSide::x_max;
    w.a0 = y0;
    w.a1 = y0 + 0.5;
    w.b0 = 0.8;
    w.b1 = 1.2;
    w.open = open_windows;
    w.material = glass;
    blind.openings.push_back(w);
  }
  Opening door;
  door.kind = "door";
  door.side = WallSide::y_min;
  door.a0 = 1.8;
  door.a1 = 2.6;
  door.b0 = 0.0;
  door.b1 = 2.0;
  door.open = false;
  door.material = heavy ? "solid_timber_door" : "hollow_core_door";
  blind.openings.push_back(door);
  scene.blind = blind;

  SpeechEffort effort = SpeechEffort::loud;
  if (variant == 2) effort = SpeechEffort::normal;
  if (variant == 3) effort = SpeechEffort::soft;
  const BandSpectrum level = speech_spectrum(effort);

  // One speaking pair per second window, seated just behind the sill.
  std::vector<double> source_y = multi ? std::vector<double>{5.05, 6.45, 7.85, 9.25}
                                       : std::vector<double>{6.45, 7.85};
  for (double y : source_y) {
    SourceSpec s;
    s.position = {2.5, y, 1.0};
    s.level_at_1m_db = level;
    scene.sources.push_back(s);
  }
  return scene;
}

}  // namespace blindsim
