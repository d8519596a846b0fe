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

#include "blindsim/core/bands.hpp"
#include "blindsim/core/errors.hpp"

namespace blindsim {

/// Propagation medium. The per-band atmospheric attenuation enters the model
/// as the volumetric sink term c * m_b * w; it defaults to zero, which is the
/// right call for the tens-of-meters ranges this simulator targets.
struct AirProperties {
  double speed_of_sound = 343.0;  // m/s
  double density = 1.21;          // kg/m^3
  BandSpectrum attenuation{};     // m_b, 1/m, per band

  void validate() const {
    if (!(speed_of_sound > 0.0))
      throw input_error("air: speed_of_sound must be positive");
    if (!(density > 0.0)) throw input_error("air: density must be positive");
    if (!all_finite(attenuation) || min_value(attenuation) < 0.0)
      throw input_error("air: attenuation must be finite and non-negative");
  }
};

}  // namespace blindsim
