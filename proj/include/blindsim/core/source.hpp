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

#include "blindsim/core/air.hpp"
#include "blindsim/core/bands.hpp"
#include "blindsim/core/decibel.hpp"
#include "blindsim/geom/geometry.hpp"

namespace blindsim {

/// A point source described by its free-field SPL spectrum at 1 m.
struct SourceSpec {
  Vec3 position{};
  BandSpectrum level_at_1m_db{};

  BandSpectrum power_w(const AirProperties& air,
                       Radiation radiation = Radiation::spherical) const {
    return source_power_from_spl1m(level_at_1m_db, air, radiation);
  }
};

}  // namespace blindsim
