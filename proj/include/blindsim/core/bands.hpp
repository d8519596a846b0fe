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

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace blindsim {

inline constexpr std::size_t kNumBands = 6;

/// Octave-band center frequencies, Hz. Every model quantity that varies with
/// frequency is resolved on exactly these six bands.
inline constexpr std::array<double, kNumBands> kBandCenterHz{
    125.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0};

inline std::string band_label(std::size_t band) {
  return std::to_string(static_cast<long>(kBandCenterHz.at(band)));
}

/// One double per octave band. The meaning (absorption coefficient, dB level,
/// watts, ...) is given by context; the type only fixes the band layout.
struct BandSpectrum {
  std::array<double, kNumBands> v{};

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr const double& operator[](std::size_t i) const { return v[i]; }
  constexpr std::size_t size() const { return kNumBands; }

  auto begin() { return v.begin(); }
  auto end() { return v.end(); }
  auto begin() const { return v.begin(); }
  auto end() const { return v.end(); }

  static constexpr BandSpectrum uniform(double value) {
    BandSpectrum s;
    s.v.fill(value);
    return s;
  }

  friend constexpr bool operator==(const BandSpectrum& a,
                                   const BandSpectrum& b) = default;
};

constexpr BandSpectrum operator+(const BandSpectrum& a, const BandSpectrum& b) {
  BandSpectrum r;
  for (std::size_t i = 0; i < kNumBands; ++i) r[i] = a[i] + b[i];
  return r;
}

constexpr BandSpectrum operator-(const BandSpectrum& a, const BandSpectrum& b) {
  BandSpectrum r;
  for (std::size_t i = 0; i < kNumBands; ++i) r[i] = a[i] - b[i];
  return r;
}

constexpr BandSpectrum operator*(double s, const BandSpectrum& a) {
  BandSpectrum r;
  for (std::size_t i = 0; i < kNumBands; ++i) r[i] = s * a[i];
  return r;
}

inline bool all_finite(const BandSpectrum& s) {
  for (double x : s)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double min_value(const BandSpectrum& s) {
  double m = s[0];
  for (double x : s) m = std::min(m, x);
  return m;
}

inline double max_value(const BandSpectrum& s) {
  double m = s[0];
  for (double x : s) m = std::max(m, x);
  return m;
}

}  // namespace blindsim
