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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "blindsim/analysis/analysis.hpp"
#include "blindsim/core/errors.hpp"

namespace blindsim {

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  return out;
}

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace detail

/// distance, six band levels, overall, and one 0/1 flag per band telling
/// whether the band still sits above the background noise level.
inline void write_profile_csv(const std::string& path, const Profile& p,
                              const BandSpectrum& bnl_db) {
  auto out = detail::open_out(path);
  out << "distance_m";
  for (std::size_t b = 0; b < kNumBands; ++b)
    out << ",spl_" << band_label(b) << "_db";
  out << ",overall_db";
  for (std::size_t b = 0; b < kNumBands; ++b)
    out << ",above_bnl_" << band_label(b);
  out << "\n";
  for (const auto& row : p.rows) {
    out << detail::fmt("%.2f", row.distance_m);
    for (std::size_t b = 0; b < kNumBands; ++b)
      out << "," << detail::fmt("%.3f", row.spl_db[b]);
    out << "," << detail::fmt("%.3f", row.overall_db);
    for (std::size_t b = 0; b < kNumBands; ++b)
      out << "," << (row.spl_db[b] > bnl_db[b] ? 1 : 0);
    out << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

/// One row per band plus an overall row. The crossing column is left empty
/// when the level never reaches the background within the sampled line.
inline void write_crossings_csv(const std::string& path,
                                const CrossingReport& r,
                                const BandSpectrum& bnl_db) {
  auto out = detail::open_out(path);
  out << "band_hz,bnl_db,crossing_m\n";
  for (std::size_t b = 0; b < kNumBands; ++b) {
    out << band_label(b) << "," << detail::fmt("%.1f", bnl_db[b]) << ",";
    if (r.band[b].crossed) out << detail::fmt("%.1f", r.band[b].distance_m);
    out << "\n";
  }
  out << "overall," << detail::fmt("%.1f", band_sum_db(bnl_db)) << ",";
  if (r.overall.crossed) out << detail::fmt("%.1f", r.overall.distance_m);
  out << "\n";
  if (!out) throw io_error("write failed: " + path);
}

/// Level differences between two runs along the shared receiver line.
inline void write_delta_csv(const std::string& path, const Profile& delta) {
  auto out = detail::open_out(path);
  out << "distance_m";
  for (std::size_t b = 0; b < kNumBands; ++b)
    out << ",delta_" << band_label(b) << "_db";
  out << ",delta_overall_db\n";
  for (const auto& row : delta.rows) {
    out << detail::fmt("%.2f", row.distance_m);
    for (std::size_t b = 0; b < kNumBands; ++b)
      out << "," << detail::fmt("%.3f", row.spl_db[b]);
    out << "," << detail::fmt("%.3f", row.overall_db) << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

/// Parse a profile written by write_profile_csv. Only the distance, band,
/// and overall columns are read; trailing flag columns are ignored.
inline Profile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("distance_m", 0) != 0)
    throw input_error("not a profile csv (bad header): " + path);
  Profile p;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ProfileRow row;
    std::istringstream ls(line);
    std::string cell;
    std::size_t col = 0;
    bool ok = true;
    while (std::getline(ls, cell, ',') && col <= kNumBands + 1) {
      try {
        const double v = std::stod(cell);
        if (col == 0)
          row.distance_m = v;
        else if (col <= kNumBands)
          row.spl_db[col - 1] = v;
        else
          row.overall_db = v;
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      ++col;
    }
    if (!ok || col < kNumBands + 2)
      throw input_error("malformed profile row in " + path + ": " + line);
    p.rows.push_back(row);
  }
  if (p.rows.empty()) throw input_error("profile has no rows: " + path);
  return p;
}

/// Matrix form, one row per y index (south row first), x across the columns.
inline void write_slice_csv(const std::string& path, const SliceMap& m) {
  auto out = detail::open_out(path);
  out << "# overall SPL (dB), z=" << detail::fmt("%.3f", m.z)
      << ", h=" << detail::fmt("%.3f", m.h)
      << ", origin=(" << detail::fmt("%.3f", m.x0) << ","
      << detail::fmt("%.3f", m.y0) << "), nx=" << m.nx << ", ny=" << m.ny
      << "\n";
  for (std::size_t j = 0; j < m.ny; ++j) {
    for (std::size_t i = 0; i < m.nx; ++i) {
      if (i) out << ",";
      out << detail::fmt("%.3f", m.at(i, j));
    }
    out << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace blindsim
