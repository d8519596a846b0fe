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

#include <cmath>
#include <limits>

#include "blindsim/core/air.hpp"
#include "blindsim/core/bands.hpp"
#include "blindsim/core/errors.hpp"

namespace blindsim {

inline constexpr double kRefPressurePa = 2e-5;
inline constexpr double kRefPressureSq = kRefPressurePa * kRefPressurePa;

/// Energy densities below this floor render as the floor's SPL instead of
/// running log10 into -inf on numerically-zero cells.
inline constexpr double kEnergyDensityFloor = 1e-20;  // J/m^3

/// Intensity transmission coefficient of a partition with transmission loss
/// tl_db: tau = 10^(-TL/10). TL = 0 means fully transparent.
inline double transmission_coefficient(double tl_db) {
  if (std::isnan(tl_db) || tl_db < 0.0)
    throw input_error("transmission loss must be >= 0 dB");
  return std::pow(10.0, -tl_db / 10.0);
}

/// Energetic sum of band levels: 10*log10(sum 10^(L_b/10)).
/// -inf entries contribute nothing; an all--inf spectrum sums to -inf.
inline double band_sum_db(const BandSpectrum& levels_db) {
  double acc = 0.0;
  for (double l : levels_db) {
    if (l == -std::numeric_limits<double>::infinity()) continue;
    acc += std::pow(10.0, l / 10.0);
  }
  if (acc <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(acc);
}

/// Diffuse-field SPL of an acoustic energy density w [J/m^3]:
/// p^2 = w * rho * c^2, SPL = 10*log10(p^2 / pref^2).
inline double spl_from_energy_density(double w, const AirProperties& air,
                                      double floor = kEnergyDensityFloor) {
  const double wc = std::max(w, floor);
  const double p_sq =
      wc * air.density * air.speed_of_sound * air.speed_of_sound;
  return 10.0 * std::log10(p_sq / kRefPressureSq);
}

inline double energy_density_from_spl(double spl_db,
                                      const AirProperties& air) {
  const double p_sq = kRefPressureSq * std::pow(10.0, spl_db / 10.0);
  return p_sq / (air.density * air.speed_of_sound * air.speed_of_sound);
}

enum class Radiation {
  spherical,     // free field, power spread over 4*pi at 1 m
  hemispherical  // source against a hard plane, 2*pi (+3 dB at equal power)
};

/// Acoustic power of a point source specified by its free-field SPL at 1 m:
/// W = Omega * r^2 * p^2 / (rho * c) with r = 1 m.
inline double source_power_from_spl1m(double spl_db, const AirProperties& air,
                                      Radiation radiation = Radiation::spherical) {
  const double omega =
      radiation == Radiation::spherical ? 4.0 * M_PI : 2.0 * M_PI;
  const double p_sq = kRefPressureSq * std::pow(10.0, spl_db / 10.0);
  return omega * p_sq / (air.density * air.speed_of_sound);
}

inline BandSpectrum source_power_from_spl1m(const BandSpectrum& spl_db,
                                            const AirProperties& air,
                                            Radiation radiation = Radiation::spherical) {
  BandSpectrum w;
  for (std::size_t b = 0; b < kNumBands; ++b)
    w[b] = source_power_from_spl1m(spl_db[b], air, radiation);
  return w;
}

}  // namespace blindsim
