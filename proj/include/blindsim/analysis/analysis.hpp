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

#include <vector>

#include "blindsim/core/decibel.hpp"
#include "blindsim/scene/voxelize.hpp"
#include "blindsim/solver/solve.hpp"

namespace blindsim {

/// Trilinear interpolation of a cell-centered field, clamped to the outermost
/// cell centers. Solid cells contribute their stored value (zero energy), so
/// samples hugging furniture read a little low; the receiver lines this
/// backs are open-air, where every neighbor is a real air cell.
inline double sample_field(const VoxelGrid& g, const std::vector<double>& f,
                           const Vec3& p) {
  std::array<std::size_t, 3> i0{};
  std::array<double, 3> t{};
  for (std::size_t a = 0; a < 3; ++a) {
    double u = (p[a] - g.domain.lo[a]) / g.h - 0.5;
    const double max_u = static_cast<double>(g.n[a] - 1);
    u = std::max(0.0, std::min(max_u, u));
    std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= g.n[a]) i = g.n[a] >= 2 ? g.n[a] - 2 : 0;
    i0[a] = i;
    t[a] = g.n[a] >= 2 ? u - static_cast<double>(i) : 0.0;
  }
  double acc = 0.0;
  for (std::size_t dx = 0; dx < 2; ++dx)
    for (std::size_t dy = 0; dy < 2; ++dy)
      for (std::size_t dz = 0; dz < 2; ++dz) {
        const double wgt = (dx ? t[0] : 1.0 - t[0]) *
                           (dy ? t[1] : 1.0 - t[1]) *
                           (dz ? t[2] : 1.0 - t[2]);
        if (wgt == 0.0) continue;
        acc += wgt * f[g.cell_index(std::min(i0[0] + dx, g.n[0] - 1),
                                    std::min(i0[1] + dy, g.n[1] - 1),
                                    std::min(i0[2] + dz, g.n[2] - 1))];
      }
  return acc;
}

struct ProfileRow {
  double distance_m = 0.0;
  BandSpectrum spl_db{};
  double overall_db = 0.0;
};

struct Profile {
  std::vector<ProfileRow> rows;
};

/// SPL profile along the receiver line: one row per sample point, the band
/// energy densities interpolated first and converted to levels after.
inline Profile sample_profile(const VoxelGrid& g, const Solution& sol,
                              const ReceiverLine& line,
                              const AirProperties& air) {
  Profile p;
  const std::size_t count = line.sample_count();
  p.rows.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    ProfileRow row;
    row.distance_m = static_cast<double>(s) * line.step;
    const Vec3 x = line.point(s);
    for (std::size_t b = 0; b < kNumBands; ++b)
      row.spl_db[b] = spl_from_energy_density(sample_field(g, sol.w[b], x), air);
    row.overall_db = band_sum_db(row.spl_db);
    p.rows.push_back(row);
  }
  return p;
}

struct Crossing {
  bool crossed = false;
  double distance_m = 0.0;
};

/// First distance at which a level profile drops to (or below) a threshold,
/// linearly interpolated between samples and reported to 0.1 m.
inline Crossing first_crossing(const std::vector<double>& distance,
                               const std::vector<double>& level,
                               double threshold) {
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (level[i] > threshold) continue;
    Crossing c;
    c.crossed = true;
    if (i == 0) {
      c.distance_m = distance[0];
    } else {
      const double span = level[i - 1] - level[i];
      const double frac = span > 0.0 ? (level[i - 1] - threshold) / span : 1.0;
      c.distance_m = distance[i - 1] + frac * (distance[i] - distance[i - 1]);
    }
    c.distance_m = std::round(c.distance_m * 10.0) / 10.0;
    return c;
  }
  return {};
}

struct CrossingReport {
  std::array<Crossing, kNumBands> band{};
  Crossing overall{};
};

/// Where each band of the profile first dips under the background, plus the
/// same for the overall level against the energetic sum of the background.
inline CrossingReport crossing_distances(const Profile& p,
                                         const BandSpectrum& bnl_db) {
  CrossingReport r;
  std::vector<double> d, v;
  d.reserve(p.rows.size());
  v.reserve(p.rows.size());
  for (const auto& row : p.rows) d.push_back(row.distance_m);
  for (std::size_t b = 0; b < kNumBands; ++b) {
    v.clear();
    for (const auto& row : p.rows) v.push_back(row.spl_db[b]);
    r.band[b] = first_crossing(d, v, bnl_db[b]);
  }
  v.clear();
  for (const auto& row : p.rows) v.push_back(row.overall_db);
  r.overall = first_crossing(d, v, band_sum_db(bnl_db));
  return r;
}

/// Row-wise level difference a - b; rows must sample the same distances.
inline Profile profile_delta(const Profile& a, const Profile& b) {
  if (a.rows.size() != b.rows.size())
    throw input_error("profiles have different sample counts");
  Profile d;
  d.rows.reserve(a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].distance_m != b.rows[i].distance_m)
      throw input_error("profiles sample different distances");
    ProfileRow row;
    row.distance_m = a.rows[i].distance_m;
    row.spl_db = a.rows[i].spl_db - b.rows[i].spl_db;
    row.overall_db = a.rows[i].overall_db - b.rows[i].overall_db;
    d.rows.push_back(row);
  }
  return d;
}

/// Mean of the overall column over distances in [d0, d1].
inline double mean_overall(const Profile& p, double d0, double d1) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& row : p.rows) {
    if (row.distance_m < d0 - 1e-9 || row.distance_m > d1 + 1e-9) continue;
    acc += row.overall_db;
    ++count;
  }
  if (count == 0) throw input_error("no profile samples in the given range");
  return acc / static_cast<double>(count);
}

/// Horizontal map of the overall SPL on the cell layer nearest to height z.
struct SliceMap {
  double z = 0.0;  // height of the sampled cell centers
  double h = 0.0;
  double x0 = 0.0, y0 = 0.0;
  std::size_t nx = 0, ny = 0;
  std::vector<double> overall_db;  // ny rows of nx values, y increasing

  double at(std::size_t ix, std::size_t iy) const {
    return overall_db[iy * nx + ix];
  }
};

inline SliceMap overall_slice(const VoxelGrid& g, const Solution& sol,
                              const AirProperties& air, double z) {
  SliceMap m;
  m.h = g.h;
  m.x0 = g.domain.lo.x;
  m.y0 = g.domain.lo.y;
  m.nx = g.n[0];
  m.ny = g.n[1];
  double u = (z - g.domain.lo.z) / g.h - 0.5;
  u = std::max(0.0, std::min(static_cast<double>(g.n[2] - 1), u));
  const std::size_t k = static_cast<std::size_t>(std::lround(u));
  m.z = g.domain.lo.z + (static_cast<double>(k) + 0.5) * g.h;
  m.overall_db.resize(m.nx * m.ny);
  for (std::size_t j = 0; j < m.ny; ++j)
    for (std::size_t i = 0; i < m.nx; ++i) {
      BandSpectrum spl;
      for (std::size_t b = 0; b < kNumBands; ++b)
        spl[b] =
            spl_from_energy_density(sol.w[b][g.cell_index(i, j, k)], air);
      m.overall_db[j * m.nx + i] = band_sum_db(spl);
    }
  return m;
}

}  // namespace blindsim
