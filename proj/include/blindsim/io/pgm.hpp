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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "blindsim/analysis/analysis.hpp"
#include "blindsim/core/errors.hpp"

namespace blindsim {

/// Binary (P5) grayscale image of a slice, min-max scaled so the loudest
/// cell is white. Image rows run north to south so the picture matches a
/// map with y pointing up.
inline void write_slice_pgm(const std::string& path, const SliceMap& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  double lo = m.overall_db[0], hi = m.overall_db[0];
  for (double v : m.overall_db) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;
  out << "P5\n# overall SPL, min_db=" << lo << " max_db=" << hi
      << " z=" << m.z << "\n"
      << m.nx << " " << m.ny << "\n255\n";
  std::vector<unsigned char> row(m.nx);
  for (std::size_t j = m.ny; j-- > 0;) {
    for (std::size_t i = 0; i < m.nx; ++i) {
      const double v = span > 0.0 ? (m.at(i, j) - lo) / span : 0.0;
      row[i] = static_cast<unsigned char>(std::lround(255.0 * v));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace blindsim
