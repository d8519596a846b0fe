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

#include <optional>
#include <string>
#include <vector>

#include "blindsim/core/air.hpp"
#include "blindsim/core/material.hpp"
#include "blindsim/core/source.hpp"
#include "blindsim/geom/geometry.hpp"

namespace blindsim {

/// Which face of the blind shell an opening sits on.
enum class WallSide { x_min, x_max, y_min, y_max, ceiling };

inline std::string wall_side_name(WallSide s) {
  switch (s) {
    case WallSide::x_min: return "x_min";
    case WallSide::x_max: return "x_max";
    case WallSide::y_min: return "y_min";
    case WallSide::y_max: return "y_max";
    case WallSide::ceiling: return "ceiling";
  }
  return "?";
}

inline WallSide wall_side_from_name(const std::string& s) {
  if (s == "x_min") return WallSide::x_min;
  if (s == "x_max") return WallSide::x_max;
  if (s == "y_min") return WallSide::y_min;
  if (s == "y_max") return WallSide::y_max;
  if (s == "ceiling") return WallSide::ceiling;
  throw input_error("unknown wall side '" + s + "'");
}

/// Rectangular opening in a blind wall. The in-plane rectangle is
/// [a0,a1] x [b0,b1] where a runs along y for x-walls, along x for y-walls
/// and the ceiling; b runs along z for walls and along y for the ceiling.
/// An open opening is a free aperture; a closed one is a partition made of
/// `material` (its absorption on both faces, its transmission loss through).
struct Opening {
  std::string kind = "window";  // label only, carried through reports
  WallSide side = WallSide::x_max;
  double a0 = 0.0, a1 = 0.0;
  double b0 = 0.0, b1 = 0.0;
  bool open = false;
  std::string material;
};

/// A shoebox observation blind. The walls live on the faces of `interior`
/// and have zero thickness on the grid: wall faces couple the interior and
/// exterior air as partitions with per-side absorption and a transmission
/// coefficient taken from `wall_material`.
struct BlindSpec {
  AxisBox interior{};
  std::string wall_material;       // transmission loss of walls and ceiling
  std::string lining_material;     // absorption of the interior wall faces
  std::string exterior_material;   // absorption of the outside wall faces
  std::string floor_material;      // absorption of the interior floor
  std::vector<Opening> openings;
  std::vector<AxisBox> furnishings;  // solid absorptive blocks inside
  std::string furnishing_material;
};

/// Sampling line for outdoor level profiles. Distance 0 is `start`.
struct ReceiverLine {
  Vec3 start{};
  Vec3 direction{1.0, 0.0, 0.0};
  double length = 30.0;
  double step = 0.5;

  std::size_t sample_count() const {
    return static_cast<std::size_t>(std::floor(length / step + 0.5)) + 1;
  }

  Vec3 point(std::size_t i) const {
    const double n = norm(direction);
    return start + (static_cast<double>(i) * step / n) * direction;
  }
};

/// Complete simulation input: the outdoor domain, an optional blind, the
/// sources inside it, the background level the profiles are judged against,
/// and the material set every name above resolves in.
struct SceneSpec {
  std::string name = "scene";
  AxisBox domain{};
  double mesh_h = 0.25;
  std::string ground_material = "soil_vegetation";
  double outer_boundary_alpha = 1.0;
  AirProperties air{};
  Radiation radiation = Radiation::spherical;
  std::optional<BlindSpec> blind{};
  std::vector<SourceSpec> sources;
  BandSpectrum bnl_db{};
  ReceiverLine receiver{};
  MaterialDb materials = MaterialDb::builtin();

  void validate() const {
    if (!domain.valid()) throw input_error("scene: domain box is degenerate");
    if (!(mesh_h > 0.0)) throw input_error("scene: mesh_h must be positive");
    const double min_extent =
        std::min({domain.extent(0), domain.extent(1), domain.extent(2)});
    if (mesh_h > min_extent / 2.0)
      throw input_error("scene: mesh_h too coarse for the domain");
    air.validate();
    materials.get(ground_material);
    if (outer_boundary_alpha < 0.0 || outer_boundary_alpha > 1.0)
      throw input_error("scene: outer_boundary_alpha must be in [0, 1]");
    if (blind) validate_blind(*blind);
    if (sources.empty()) throw input_error("scene: at least one source");
    for (const auto& s : sources) {
      if (!domain.contains(s.position))
        throw input_error("scene: source outside the domain");
      if (!all_finite(s.level_at_1m_db))
        throw input_error("scene: source level must be finite");
    }
    if (!all_finite(bnl_db))
      throw input_error("scene: background noise level must be finite");
    validate_receiver();
  }

 private:
  void validate_blind(const BlindSpec& b) const {
    if (!b.interior.valid())
      throw input_error("blind: interior box is degenerate");
    for (std::size_t a = 0; a < 3; ++a) {
      if (b.interior.lo[a] < domain.lo[a] || b.interior.hi[a] > domain.hi[a])
        throw input_error("blind: interior box leaves the domain");
    }
    materials.get(b.wall_material);
    materials.get(b.lining_material);
    materials.get(b.exterior_material);
    materials.get(b.floor_material);
    if (!b.furnishings.empty()) materials.get(b.furnishing_material);
    for (const auto& f : b.furnishings) {
      if (!f.valid()) throw input_error("blind: furnishing box is degenerate");
    }
    for (std::size_t i = 0; i < b.openings.size(); ++i) {
      const Opening& o = b.openings[i];
      if (!(o.a1 > o.a0) || !(o.b1 > o.b0))
        throw input_error("blind: opening rectangle is degenerate");
      if (!o.open) materials.get(o.material);
      check_opening_in_wall(b, o);
      for (std::size_t j = 0; j < i; ++j) {
        const Opening& p = b.openings[j];
        if (p.side == o.side && o.a0 < p.a1 && p.a0 < o.a1 && o.b0 < p.b1 &&
            p.b0 < o.b1)
          throw input_error("blind: openings overlap on wall " +
                            wall_side_name(o.side));
      }
    }
  }

  void check_opening_in_wall(const BlindSpec& b, const Opening& o) const {
    const AxisBox& box = b.interior;
    double alo, ahi, blo, bhi;
    if (o.side == WallSide::x_min || o.side == WallSide::x_max) {
      alo = box.lo.y; ahi = box.hi.y; blo = box.lo.z; bhi = box.hi.z;
    } else if (o.side == WallSide::y_min || o.side == WallSide::y_max) {
      alo = box.lo.x; ahi = box.hi.x; blo = box.lo.z; bhi = box.hi.z;
    } else {
      alo = box.lo.x; ahi = box.hi.x; blo = box.lo.y; bhi = box.hi.y;
    }
    const double eps = 1e-9;
    if (o.a0 < alo - eps || o.a1 > ahi + eps || o.b0 < blo - eps ||
        o.b1 > bhi + eps)
      throw input_error("blind: opening leaves wall " +
                        wall_side_name(o.side));
  }

  void validate_receiver() const {
    if (!(receiver.step > 0.0) || !(receiver.length > 0.0))
      throw input_error("receiver: step and length must be positive");
    if (norm(receiver.direction) == 0.0)
      throw input_error("receiver: direction must be nonzero");
    const Vec3 last = receiver.point(receiver.sample_count() - 1);
    const double eps = 1e-9;
    for (std::size_t a = 0; a < 3; ++a) {
      if (receiver.start[a] < domain.lo[a] - eps ||
          receiver.start[a] > domain.hi[a] + eps || last[a] < domain.lo[a] - eps ||
          last[a] > domain.hi[a] + eps)
        throw input_error("receiver: line leaves the domain");
    }
  }
};

}  // namespace blindsim
