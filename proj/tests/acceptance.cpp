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

// End-to-end acceptance checks. Each numbered criterion prints exactly one
// PASS/FAIL line with the measured value next to its tolerance; the process
// exits nonzero if any criterion fails. All simulation runs use the bundled
// scenarios at h = 0.25 m unless the criterion itself is about resolution.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "blindsim/sim.hpp"

using namespace blindsim;

namespace {

int g_failures = 0;

void verdict(int id, bool pass, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  std::printf("[%s] %2d. %s\n", pass ? "PASS" : "FAIL", id, buf);
  if (!pass) ++g_failures;
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::map<std::string, RunResult> g_cache;

const RunResult& preset(const std::string& id) {
  auto it = g_cache.find(id);
  if (it == g_cache.end())
    it = g_cache.emplace(id, run_scene(build_scenario(id))).first;
  return it->second;
}

// 1. Doubling every source in place raises each sample by exactly 10*log10(2).
void criterion_source_doubling() {
  const auto t0 = std::chrono::steady_clock::now();
  SceneSpec two = build_scenario("SS01");
  SceneSpec four = two;
  const auto originals = four.sources;
  for (const auto& s : originals) four.sources.push_back(s);

  const auto r2 = run_scene(two);
  const auto r4 = run_scene(four);
  double worst = 0.0;
  for (std::size_t i = 0; i < r2.profile.rows.size(); ++i)
    worst = std::max(worst, std::abs(r4.profile.rows[i].overall_db -
                                     r2.profile.rows[i].overall_db -
                                     10.0 * std::log10(2.0)));
  const double secs = seconds_since(t0);
  verdict(1, worst <= 0.01 && secs < 120.0,
          "source doubling: max |delta - 3.01| = %.2e dB over %zu samples "
          "(tol 0.01), %.1f s (< 120 s)",
          worst, r2.profile.rows.size(), secs);
}

// 2. The medium blind radiates about 3 dB more than the small one.
void criterion_size_offset() {
  const double d = mean_overall(
      profile_delta(preset("MS01").profile, preset("SS01").profile), 0.0,
      30.0);
  verdict(2, d >= 1.5 && d <= 4.5,
          "size effect: MS01 - SS01 overall = %+.2f dB over 0-30 m "
          "(expected 3 +/- 1.5)",
          d);
}

// 3. High transmission loss buys roughly 16 dB outdoors.
void criterion_insulation() {
  const double d = mean_overall(
      profile_delta(preset("SS04").profile, preset("SS06").profile), 0.0,
      10.0);
  verdict(3, d >= 12.0 && d <= 20.0,
          "insulation effect: SS04 - SS06 overall = %+.2f dB over 0-10 m "
          "(expected 16 +/- 4)",
          d);
}

// 4. Absorbing lining buys roughly 10 dB, more at 4 kHz than at 125 Hz.
void criterion_absorption() {
  const auto delta =
      profile_delta(preset("SS04").profile, preset("SS05").profile);
  const double d = mean_overall(delta, 0.0, 10.0);

  double d125 = 0.0, d4000 = 0.0;
  std::size_t n = 0;
  for (const auto& row : delta.rows) {
    if (row.distance_m > 2.0) break;
    d125 += row.spl_db[0];
    d4000 += row.spl_db[5];
    ++n;
  }
  d125 /= static_cast<double>(n);
  d4000 /= static_cast<double>(n);

  verdict(4,
          d >= 6.0 && d <= 14.0 && d4000 - d125 >= 2.0,
          "absorption effect: SS04 - SS05 overall = %+.2f dB over 0-10 m "
          "(expected 10 +/- 4); near-facade band deltas 125 Hz %+.2f / "
          "4 kHz %+.2f dB (tilt >= 2)",
          d, d125, d4000);
}

// 5. The treatment ladder never reorders anywhere on the line.
void criterion_ordering() {
  const char* ladders[2][5] = {{"SS01", "SS04", "SS05", "SS06", "SS07"},
                               {"MS01", "MS04", "MS05", "MS06", "MS07"}};
  bool ok = true;
  double worst = 0.0;
  for (const auto& ladder : ladders)
    for (int s = 0; s + 1 < 5; ++s) {
      const auto& hi = preset(ladder[s]).profile;
      const auto& lo = preset(ladder[s + 1]).profile;
      for (std::size_t i = 0; i < hi.rows.size(); ++i) {
        const double slack = lo.rows[i].overall_db - hi.rows[i].overall_db;
        worst = std::max(worst, slack);
        if (slack > 0.2) ok = false;
      }
    }
  verdict(5, ok,
          "scenario ordering: SS01>=SS04>=SS05>=SS06>=SS07 and MS ladder at "
          "every sample (worst inversion %.3f dB, slack 0.2)",
          worst);
}

// 6. The fully treated blinds drop below the background a few meters out.
void criterion_crossings() {
  const auto max_cross = [](const RunResult& r, bool& all) {
    double worst = 0.0;
    for (const auto& c : r.crossings.band) {
      if (!c.crossed) all = false;
      worst = std::max(worst, c.distance_m);
    }
    return worst;
  };
  bool ss_all = true, ms_all = true;
  const double ss = max_cross(preset("SS07"), ss_all);
  const double ms = max_cross(preset("MS07"), ms_all);
  verdict(6,
          ss_all && ms_all && ss >= 2.0 && ss <= 8.0 && ms >= 5.0 &&
              ms <= 11.0,
          "background crossings: SS07 inaudible past %.1f m (expected "
          "5 +/- 3), MS07 past %.1f m (expected 8 +/- 3)",
          ss, ms);
}

// 7. Discrete energy accounting closes on every preset.
void criterion_conservation() {
  double worst = 0.0;
  std::string worst_id = "-";
  for (const auto& id : scenario_ids()) {
    for (const auto& info : preset(id).sol.info)
      if (info.imbalance_pct > worst) {
        worst = info.imbalance_pct;
        worst_id = id;
      }
  }
  verdict(7, worst < 0.5,
          "energy balance: worst per-band imbalance %.4f%% (%s, tol 0.5%%) "
          "across all 14 presets",
          worst, worst_id.c_str());
}

// 8. A sealed uniform room reproduces the diffuse-field level.
void criterion_diffuse_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  SceneSpec scene;
  scene.name = "diffuse_oracle";
  scene.domain = {{0.0, 0.0, 0.0}, {5.0, 5.0, 5.0}};
  scene.mesh_h = 0.25;
  Material absorber;
  absorber.name = "uniform_absorber";
  absorber.alpha = BandSpectrum::uniform(0.1);
  scene.materials.add(absorber);
  scene.ground_material = "uniform_absorber";
  scene.outer_boundary_alpha = 0.1;
  scene.sources.push_back({{2.5, 2.5, 2.5}, BandSpectrum::uniform(80.0)});
  scene.receiver.start = {0.5, 2.5, 0.5};
  scene.receiver.length = 4.0;

  const auto r = run_scene(scene);
  const double W = scene.sources[0].power_w(scene.air)[0];
  const double S = 6.0 * 25.0;
  const double expected = 4.0 * W / (scene.air.speed_of_sound * S * 0.1);

  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < r.grid.n[0]; ++i)
    for (std::size_t j = 0; j < r.grid.n[1]; ++j)
      for (std::size_t k = 0; k < r.grid.n[2]; ++k) {
        const Vec3 c = r.grid.cell_center(i, j, k);
        const Vec3 d = c - scene.sources[0].position;
        if (norm(d) < 2.0) continue;
        sum += r.sol.w[0][r.grid.cell_index(i, j, k)];
        ++count;
      }
  const double mean = sum / static_cast<double>(count);
  const double rel = std::abs(mean - expected) / expected;
  const double secs = seconds_since(t0);
  verdict(8, rel <= 0.15 && secs < 60.0,
          "diffuse oracle: mean far-field w within %.1f%% of 4W/(cSa) "
          "(tol 15%%), %.1f s (< 60 s)",
          100.0 * rel, secs);
}

// 9. Halving the mesh step no longer moves the receiver line.
void criterion_grid_convergence() {
  SceneSpec coarse = build_scenario("SS04");
  coarse.mesh_h = 0.2;
  SceneSpec fine = build_scenario("SS04");
  fine.mesh_h = 0.1;
  const auto rc = run_scene(coarse);
  const auto rf = run_scene(fine);
  double worst = 0.0;
  for (std::size_t i = 0; i < rc.profile.rows.size(); ++i)
    worst = std::max(worst, std::abs(rf.profile.rows[i].overall_db -
                                     rc.profile.rows[i].overall_db));
  verdict(9, worst < 0.5,
          "grid convergence: SS04 overall moves %.3f dB max between "
          "h=0.2 and h=0.1 (tol 0.5)",
          worst);
}

// 10. Scaling the source spectrum scales the receiver spectrum band by band;
//     the overall loud-normal gap lands near the expected 12 dB.
void criterion_speech_linearity() {
  const auto& loud = preset("SS01").profile;
  const auto& normal = preset("SS02").profile;
  const BandSpectrum source_delta =
      speech_spectrum(SpeechEffort::loud) -
      speech_spectrum(SpeechEffort::normal);

  double worst = 0.0;
  for (std::size_t i = 0; i < loud.rows.size(); ++i)
    for (std::size_t b = 0; b < kNumBands; ++b)
      worst = std::max(
          worst, std::abs(loud.rows[i].spl_db[b] - normal.rows[i].spl_db[b] -
                          source_delta[b]));

  const double overall =
      mean_overall(profile_delta(loud, normal), 0.0, 30.0);
  verdict(10, worst <= 1e-4 && overall >= 9.0 && overall <= 15.0,
          "speech levels: receiver band deltas match source deltas to "
          "%.1e dB (tol 1e-4); overall loud-normal = %+.2f dB "
          "(expected 12 +/- 3, residual %+.2f reported)",
          worst, overall, overall - 12.0);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::printf("acceptance run (h = 0.25 m presets, deterministic single "
              "thread)\n");

  criterion_source_doubling();
  criterion_size_offset();
  criterion_insulation();
  criterion_absorption();
  criterion_ordering();
  criterion_crossings();
  criterion_conservation();
  criterion_diffuse_oracle();
  criterion_grid_convergence();
  criterion_speech_linearity();

  std::printf("acceptance: %d/10 passed, %.0f s total\n", 10 - g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
