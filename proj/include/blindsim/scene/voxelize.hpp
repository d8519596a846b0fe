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
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "blindsim/scene/scene.hpp"

namespace blindsim {

enum class CellKind : std::uint8_t { exterior = 0, interior = 1, solid = 2 };

/// Face roles on the staggered grid. A fluid face diffusively couples two
/// air cells; a boundary face terminates an air cell on an absorbing
/// surface; a partition face couples two air cells through a wall with
/// per-side absorption and a transmission coefficient.
enum class FaceKind : std::uint8_t { none = 0, fluid = 1, boundary = 2, partition = 3 };

/// Per-band surface data attached to a boundary or partition face.
/// alpha_lo faces the cell with the lower index along the face axis,
/// alpha_hi the higher one; a boundary face only uses the air side's slot.
struct FaceSpec {
  BandSpectrum alpha_lo{};
  BandSpectrum alpha_hi{};
  BandSpectrum tau{};

  friend bool operator==(const FaceSpec&, const FaceSpec&) = default;
};

/// Geometry accumulated per air region while voxelizing. The mean free
/// path 4V/S of a region sets its diffusion coefficient D = lambda*c/3.
struct SubdomainStats {
  std::size_t cells = 0;
  double volume = 0.0;
  double surface = 0.0;
  double mean_free_path = 0.0;

  double diffusion(double speed_of_sound) const {
    return mean_free_path * speed_of_sound / 3.0;
  }
};

enum class OpenWindowMode {
  aperture,  // open windows are free openings in the wall
  absorber   // open windows swallow everything that reaches them
};

/// Voxelization of a SceneSpec: uniform cells classified as exterior air,
/// interior (inside the blind) air, or solid, plus classified faces. Region
/// index of an air cell equals its CellKind value (0 exterior, 1 interior).
struct VoxelGrid {
  AxisBox domain{};
  double h = 0.0;
  std::array<std::size_t, 3> n{};
  std::vector<std::uint8_t> cell;
  std::array<std::vector<std::uint8_t>, 3> face_kind;
  std::array<std::vector<std::uint32_t>, 3> face_data;
  std::vector<FaceSpec> face_specs;
  std::array<SubdomainStats, 2> stats{};
  std::vector<std::string> log;

  std::size_t cell_count() const { return n[0] * n[1] * n[2]; }

  std::size_t cell_index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n[1] + j) * n[2] + k;
  }

  CellKind kind(std::size_t i, std::size_t j, std::size_t k) const {
    return static_cast<CellKind>(cell[cell_index(i, j, k)]);
  }

  bool is_air(std::uint8_t c) const {
    return c != static_cast<std::uint8_t>(CellKind::solid);
  }

  std::size_t face_count(std::size_t axis) const {
    std::array<std::size_t, 3> d = n;
    d[axis] += 1;
    return d[0] * d[1] * d[2];
  }

  /// Face (i,j,k) along `axis` separates cells with axis-coordinates
  /// i-1 and i (i == 0 and i == n[axis] are the domain hull).
  std::size_t face_index(std::size_t axis, std::size_t i, std::size_t j,
                         std::size_t k) const {
    if (axis == 0) return (i * n[1] + j) * n[2] + k;
    if (axis == 1) return (i * (n[1] + 1) + j) * n[2] + k;
    return (i * n[1] + j) * (n[2] + 1) + k;
  }

  /// Index of the cell containing point p, or npos if p is outside.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t cell_of_point(const Vec3& p) const {
    std::array<std::size_t, 3> idx{};
    for (std::size_t a = 0; a < 3; ++a) {
      const double t = (p[a] - domain.lo[a]) / h;
      if (t < 0.0 || t >= static_cast<double>(n[a])) return npos;
      idx[a] = static_cast<std::size_t>(t);
    }
    return cell_index(idx[0], idx[1], idx[2]);
  }

  Vec3 cell_center(std::size_t i, std::size_t j, std::size_t k) const {
    return {domain.lo.x + (static_cast<double>(i) + 0.5) * h,
            domain.lo.y + (static_cast<double>(j) + 0.5) * h,
            domain.lo.z + (static_cast<double>(k) + 0.5) * h};
  }
};

namespace detail {

class Voxelizer {
 public:
  Voxelizer(const SceneSpec& scene, OpenWindowMode mode)
      : scene_(scene), mode_(mode) {}

  VoxelGrid build() {
    snap_domain();
    classify_cells();
    classify_faces();
    apply_walls_and_openings();
    accumulate_stats();
    check_sources();
    return std::move(g_);
  }

 private:
  const SceneSpec& scene_;
  OpenWindowMode mode_;
  VoxelGrid g_;
  // Plane indices of the blind interior box, valid when the scene has one.
  std::array<std::size_t, 3> blo_{}, bhi_{};

  void note(const std::string& msg) { g_.log.push_back(msg); }

  void snap_domain() {
    g_.h = scene_.mesh_h;
    g_.domain = scene_.domain;
    for (std::size_t a = 0; a < 3; ++a) {
      const double extent = scene_.domain.extent(a);
      const auto cells =
          static_cast<std::size_t>(std::max(1.0, std::floor(extent / g_.h + 0.5)));
      g_.n[a] = cells;
      const double snapped = static_cast<double>(cells) * g_.h;
      if (std::abs(snapped - extent) > 1e-9) {
        g_.domain.hi[a] = g_.domain.lo[a] + snapped;
        std::ostringstream os;
        os << "domain extent along axis " << a << " snapped from " << extent
           << " to " << snapped << " (" << cells << " cells of " << g_.h << ")";
        note(os.str());
      }
    }
  }

  /// Nearest grid plane to coordinate x along axis a, clamped to the grid.
  std::size_t plane(std::size_t a, double x, const char* what) {
    const double t = (x - g_.domain.lo[a]) / g_.h;
    long i = std::lround(t);
    i = std::max(0L, std::min(static_cast<long>(g_.n[a]), i));
    const double snapped = g_.domain.lo[a] + static_cast<double>(i) * g_.h;
    if (std::abs(snapped - x) > 1e-9) {
      std::ostringstream os;
      os << what << ": coordinate " << x << " snapped to grid plane "
         << snapped;
      note(os.str());
    }
    return static_cast<std::size_t>(i);
  }

  void classify_cells() {
    g_.cell.assign(g_.cell_count(),
                   static_cast<std::uint8_t>(CellKind::exterior));
    if (!scene_.blind) return;
    const AxisBox& box = scene_.blind->interior;
    for (std::size_t a = 0; a < 3; ++a) {
      blo_[a] = plane(a, box.lo[a], "blind interior");
      bhi_[a] = plane(a, box.hi[a], "blind interior");
      if (bhi_[a] <= blo_[a])
        throw input_error("blind interior is unresolvable at mesh_h");
    }
    for (std::size_t i = blo_[0]; i < bhi_[0]; ++i)
      for (std::size_t j = blo_[1]; j < bhi_[1]; ++j)
        for (std::size_t k = blo_[2]; k < bhi_[2]; ++k)
          g_.cell[g_.cell_index(i, j, k)] =
              static_cast<std::uint8_t>(CellKind::interior);

    for (const AxisBox& f : scene_.blind->furnishings) {
      std::array<std::size_t, 3> flo{}, fhi{};
      for (std::size_t a = 0; a < 3; ++a) {
        flo[a] = plane(a, f.lo[a], "furnishing");
        fhi[a] = plane(a, f.hi[a], "furnishing");
        if (fhi[a] <= flo[a])
          throw input_error("furnishing box is unresolvable at mesh_h");
      }
      for (std::size_t i = flo[0]; i < fhi[0]; ++i)
        for (std::size_t j = flo[1]; j < fhi[1]; ++j)
          for (std::size_t k = flo[2]; k < fhi[2]; ++k)
            g_.cell[g_.cell_index(i, j, k)] =
                static_cast<std::uint8_t>(CellKind::solid);
    }
  }

  std::uint32_t spec_id(const FaceSpec& s) {
    for (std::size_t i = 0; i < g_.face_specs.size(); ++i)
      if (g_.face_specs[i] == s) return static_cast<std::uint32_t>(i);
    g_.face_specs.push_back(s);
    return static_cast<std::uint32_t>(g_.face_specs.size() - 1);
  }

  FaceSpec boundary_spec(const BandSpectrum& alpha) {
    FaceSpec s;
    s.alpha_lo = alpha;
    s.alpha_hi = alpha;
    return s;
  }

  const BandSpectrum& alpha_of(const std::string& name) const {
    return scene_.materials.get(name).alpha;
  }

  BandSpectrum tau_of(const std::string& name) const {
    const Material& m = scene_.materials.get(name);
    BandSpectrum t;
    for (std::size_t b = 0; b < kNumBands; ++b) t[b] = m.tau(b);
    return t;
  }

  void set_face(std::size_t axis, std::size_t i, std::size_t j, std::size_t k,
                FaceKind kind, std::uint32_t data = 0) {
    const std::size_t f = g_.face_index(axis, i, j, k);
    g_.face_kind[axis][f] = static_cast<std::uint8_t>(kind);
    g_.face_data[axis][f] = data;
  }

  /// First pass: hull, fluid and solid-contact faces, ignoring the blind
  /// walls (those are overlaid next).
  void classify_faces() {
    const std::uint32_t outer = spec_id(
        boundary_spec(BandSpectrum::uniform(scene_.outer_boundary_alpha)));
    const std::uint32_t ground =
        spec_id(boundary_spec(alpha_of(scene_.ground_material)));
    std::uint32_t floor = ground, lining = outer, furnishing = 0;
    if (scene_.blind) {
      floor = spec_id(boundary_spec(alpha_of(scene_.blind->floor_material)));
      lining = spec_id(boundary_spec(alpha_of(scene_.blind->lining_material)));
      if (!scene_.blind->furnishings.empty())
        furnishing =
            spec_id(boundary_spec(alpha_of(scene_.blind->furnishing_material)));
    }

    for (std::size_t axis = 0; axis < 3; ++axis) {
      g_.face_kind[axis].assign(g_.face_count(axis),
                                static_cast<std::uint8_t>(FaceKind::none));
      g_.face_data[axis].assign(g_.face_count(axis), 0);
      std::array<std::size_t, 3> lim = g_.n;
      lim[axis] += 1;
      for (std::size_t i = 0; i < lim[0]; ++i)
        for (std::size_t j = 0; j < lim[1]; ++j)
          for (std::size_t k = 0; k < lim[2]; ++k) {
            std::array<std::size_t, 3> c{i, j, k};
            const bool at_lo = c[axis] == 0;
            const bool at_hi = c[axis] == g_.n[axis];
            std::array<std::size_t, 3> cl = c;
            if (!at_lo) cl[axis] -= 1;
            const std::uint8_t lo_kind =
                at_lo ? 255 : g_.cell[g_.cell_index(cl[0], cl[1], cl[2])];
            const std::uint8_t hi_kind =
                at_hi ? 255 : g_.cell[g_.cell_index(c[0], c[1], c[2])];

            if (at_lo || at_hi) {
              const std::uint8_t inside = at_lo ? hi_kind : lo_kind;
              if (!g_.is_air(inside)) continue;  // solid against the hull
              const bool is_interior =
                  inside == static_cast<std::uint8_t>(CellKind::interior);
              std::uint32_t spec;
              if (axis == 2 && at_lo)
                spec = is_interior ? floor : ground;
              else
                spec = is_interior ? lining : outer;
              set_face(axis, i, j, k, FaceKind::boundary, spec);
              continue;
            }
            const bool lo_air = g_.is_air(lo_kind);
            const bool hi_air = g_.is_air(hi_kind);
            if (lo_air && hi_air) {
              set_face(axis, i, j, k, FaceKind::fluid);
            } else if (lo_air != hi_air) {
              set_face(axis, i, j, k, FaceKind::boundary, furnishing);
            }
          }
    }
  }

  /// Overlay the six blind wall planes as partitions, then cut the
  /// openings into them.
  void apply_walls_and_openings() {
    if (!scene_.blind) return;
    const BlindSpec& b = *scene_.blind;
    const BandSpectrum lining = alpha_of(b.lining_material);
    const BandSpectrum exterior = alpha_of(b.exterior_material);
    const BandSpectrum wall_tau = tau_of(b.wall_material);

    // side index: 0 x_min, 1 x_max, 2 y_min, 3 y_max, 4 ceiling, 5 floor
    auto wall_plane = [&](std::size_t side, std::size_t& axis,
                          std::size_t& plane_i, bool& interior_is_lo) {
      if (side < 2) {
        axis = 0;
        plane_i = side == 0 ? blo_[0] : bhi_[0];
        interior_is_lo = side == 1;
      } else if (side < 4) {
        axis = 1;
        plane_i = side == 2 ? blo_[1] : bhi_[1];
        interior_is_lo = side == 3;
      } else {
        axis = 2;
        plane_i = side == 4 ? bhi_[2] : blo_[2];
        interior_is_lo = side == 4;
      }
    };

    for (std::size_t side = 0; side < 6; ++side) {
      std::size_t axis, pi;
      bool interior_is_lo;
      wall_plane(side, axis, pi, interior_is_lo);
      if (pi == 0 || pi == g_.n[axis]) continue;  // coincides with the hull
      FaceSpec ws;
      ws.alpha_lo = interior_is_lo ? lining : exterior;
      ws.alpha_hi = interior_is_lo ? exterior : lining;
      ws.tau = wall_tau;
      const std::uint32_t wall = spec_id(ws);
      const std::size_t u = (axis == 0) ? 1 : 0;
      const std::size_t v = (axis == 2) ? 1 : 2;
      for (std::size_t ju = blo_[u]; ju < bhi_[u]; ++ju)
        for (std::size_t jv = blo_[v]; jv < bhi_[v]; ++jv) {
          std::array<std::size_t, 3> f{};
          f[axis] = pi;
          f[u] = ju;
          f[v] = jv;
          overlay_wall_face(axis, f, FaceKind::partition, wall, lining,
                            exterior, interior_is_lo);
        }
    }

    for (const Opening& o : b.openings) apply_opening(o, lining, exterior);
  }

  /// Place a wall (or opening) face, falling back to a plain boundary when
  /// one side of the plane is solid.
  void overlay_wall_face(std::size_t axis, std::array<std::size_t, 3> f,
                         FaceKind kind, std::uint32_t spec,
                         const BandSpectrum& lining,
                         const BandSpectrum& exterior, bool interior_is_lo) {
    std::array<std::size_t, 3> cl = f, ch = f;
    cl[axis] -= 1;
    const std::uint8_t lo_kind = g_.cell[g_.cell_index(cl[0], cl[1], cl[2])];
    const std::uint8_t hi_kind = g_.cell[g_.cell_index(ch[0], ch[1], ch[2])];
    const bool lo_air = g_.is_air(lo_kind);
    const bool hi_air = g_.is_air(hi_kind);
    if (lo_air && hi_air) {
      set_face(axis, f[0], f[1], f[2], kind, spec);
      return;
    }
    if (lo_air != hi_air) {
      // A solid block sits against the wall: the surviving air side just
      // sees the wall's face absorption for that side.
      const bool air_is_lo = lo_air;
      const bool air_is_interior = air_is_lo == interior_is_lo;
      const std::uint32_t s =
          spec_id(boundary_spec(air_is_interior ? lining : exterior));
      set_face(axis, f[0], f[1], f[2], FaceKind::boundary, s);
    }
  }

  void apply_opening(const Opening& o, const BandSpectrum& lining,
                     const BandSpectrum& exterior) {
    std::size_t axis, pi, u, v;
    bool interior_is_lo;
    switch (o.side) {
      case WallSide::x_min:
        axis = 0; pi = blo_[0]; interior_is_lo = false; break;
      case WallSide::x_max:
        axis = 0; pi = bhi_[0]; interior_is_lo = true; break;
      case WallSide::y_min:
        axis = 1; pi = blo_[1]; interior_is_lo = false; break;
      case WallSide::y_max:
        axis = 1; pi = bhi_[1]; interior_is_lo = true; break;
      case WallSide::ceiling:
        axis = 2; pi = bhi_[2]; interior_is_lo = true; break;
      default:
        throw input_error("opening: bad wall side");
    }
    u = (axis == 0) ? 1 : 0;
    v = (axis == 2) ? 1 : 2;
    if (pi == 0 || pi == g_.n[axis])
      throw input_error("opening '" + o.kind +
                        "' sits on a wall that coincides with the domain hull");

    const std::string what = "opening '" + o.kind + "'";
    const std::size_t a0 = plane(u, o.a0, what.c_str());
    const std::size_t a1 = plane(u, o.a1, what.c_str());
    const std::size_t b0 = plane(v, o.b0, what.c_str());
    const std::size_t b1 = plane(v, o.b1, what.c_str());
    if (a1 <= a0 || b1 <= b0)
      throw input_error(what + " is unresolvable at mesh_h " +
                        std::to_string(g_.h));

    FaceKind kind;
    std::uint32_t spec = 0;
    if (o.open && mode_ == OpenWindowMode::aperture) {
      kind = FaceKind::fluid;
    } else if (o.open) {
      FaceSpec s;
      s.alpha_lo = BandSpectrum::uniform(1.0);
      s.alpha_hi = BandSpectrum::uniform(1.0);
      kind = FaceKind::partition;
      spec = spec_id(s);
    } else {
      const Material& m = scene_.materials.get(o.material);
      FaceSpec s;
      s.alpha_lo = m.alpha;
      s.alpha_hi = m.alpha;
      for (std::size_t b = 0; b < kNumBands; ++b) s.tau[b] = m.tau(b);
      kind = FaceKind::partition;
      spec = spec_id(s);
    }

    for (std::size_t ju = a0; ju < a1; ++ju)
      for (std::size_t jv = b0; jv < b1; ++jv) {
        std::array<std::size_t, 3> f{};
        f[axis] = pi;
        f[u] = ju;
        f[v] = jv;
        if (kind == FaceKind::fluid) {
          std::array<std::size_t, 3> cl = f;
          cl[axis] -= 1;
          const bool lo_air = g_.is_air(g_.cell[g_.cell_index(cl[0], cl[1], cl[2])]);
          const bool hi_air = g_.is_air(g_.cell[g_.cell_index(f[0], f[1], f[2])]);
          if (lo_air && hi_air) set_face(axis, f[0], f[1], f[2], FaceKind::fluid);
        } else {
          overlay_wall_face(axis, f, kind, spec, lining, exterior,
                            interior_is_lo);
        }
      }
  }

  void accumulate_stats() {
    auto& st = g_.stats;
    st = {};
    const double cell_v = g_.h * g_.h * g_.h;
    const double face_a = g_.h * g_.h;
    for (std::uint8_t c : g_.cell) {
      if (!g_.is_air(c)) continue;
      st[c].cells += 1;
      st[c].volume += cell_v;
    }
    for (std::size_t axis = 0; axis < 3; ++axis) {
      std::array<std::size_t, 3> lim = g_.n;
      lim[axis] += 1;
      for (std::size_t i = 0; i < lim[0]; ++i)
        for (std::size_t j = 0; j < lim[1]; ++j)
          for (std::size_t k = 0; k < lim[2]; ++k) {
            const std::size_t f = g_.face_index(axis, i, j, k);
            const auto kind = static_cast<FaceKind>(g_.face_kind[axis][f]);
            if (kind != FaceKind::boundary && kind != FaceKind::partition)
              continue;
            std::array<std::size_t, 3> c{i, j, k};
            const bool at_lo = c[axis] == 0;
            const bool at_hi = c[axis] == g_.n[axis];
            std::array<std::size_t, 3> cl = c;
            if (!at_lo) cl[axis] -= 1;
            if (!at_lo) {
              const std::uint8_t ck = g_.cell[g_.cell_index(cl[0], cl[1], cl[2])];
              if (g_.is_air(ck)) st[ck].surface += face_a;
            }
            if (!at_hi) {
              const std::uint8_t ck = g_.cell[g_.cell_index(c[0], c[1], c[2])];
              if (g_.is_air(ck)) st[ck].surface += face_a;
            }
          }
    }
    for (auto& s : st) {
      if (s.cells == 0) continue;
      if (s.surface <= 0.0)
        throw input_error("air region without any bounding surface");
      s.mean_free_path = 4.0 * s.volume / s.surface;
    }
  }

  void check_sources() {
    for (const auto& s : scene_.sources) {
      const std::size_t c = g_.cell_of_point(s.position);
      if (c == VoxelGrid::npos)
        throw input_error("source fell outside the snapped domain");
      if (!g_.is_air(g_.cell[c]))
        throw input_error("source sits inside a solid block");
    }
  }
};

}  // namespace detail

inline VoxelGrid voxelize(const SceneSpec& scene,
                          OpenWindowMode mode = OpenWindowMode::aperture) {
  scene.validate();
  return detail::Voxelizer(scene, mode).build();
}

}  // namespace blindsim
