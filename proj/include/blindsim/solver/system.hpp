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

#include "blindsim/core/air.hpp"
#include "blindsim/scene/voxelize.hpp"

namespace blindsim {

/// How surface absorption converts to an energy exchange coefficient.
enum class ExchangeModel { sabine, eyring, modified };

inline std::string exchange_model_name(ExchangeModel m) {
  switch (m) {
    case ExchangeModel::sabine: return "sabine";
    case ExchangeModel::eyring: return "eyring";
    case ExchangeModel::modified: return "modified";
  }
  return "?";
}

inline ExchangeModel exchange_model_from_name(const std::string& s) {
  if (s == "sabine") return ExchangeModel::sabine;
  if (s == "eyring") return ExchangeModel::eyring;
  if (s == "modified") return ExchangeModel::modified;
  throw input_error("unknown boundary model '" + s +
                    "'; expected sabine, eyring or modified");
}

/// Boundary exchange coefficient A_x(alpha) in m/s. Multiplied by the local
/// energy density and the face area it gives the power leaving through an
/// absorbing surface.
inline double exchange_coefficient(ExchangeModel model, double alpha,
                                   double speed_of_sound) {
  const double a = std::min(1.0, std::max(0.0, alpha));
  switch (model) {
    case ExchangeModel::sabine:
      return speed_of_sound * a / 4.0;
    case ExchangeModel::eyring:
      return -speed_of_sound * std::log(1.0 - std::min(a, 0.9999)) / 4.0;
    case ExchangeModel::modified:
      return speed_of_sound * a / (2.0 * (2.0 - a));
  }
  return 0.0;
}

/// One octave band of the discretized diffusion problem. Symmetric 7-point
/// system: row c reads diag[c]*w[c] - sum(link * w[neighbor]) = rhs[c].
/// Inactive (solid) cells are identity rows so that indexing stays dense.
struct BandSystem {
  std::array<std::size_t, 3> n{};
  double h = 0.0;
  std::vector<double> diag;
  std::array<std::vector<double>, 3> link;  // indexed like VoxelGrid faces
  std::vector<double> rhs;
  std::vector<std::uint8_t> active;

  std::size_t size() const { return n[0] * n[1] * n[2]; }

  std::size_t cell_index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n[1] + j) * n[2] + k;
  }

  /// Same staggered layout as VoxelGrid::face_index.
  std::size_t face_index(std::size_t axis, std::size_t i, std::size_t j,
                         std::size_t k) const {
    if (axis == 0) return (i * n[1] + j) * n[2] + k;
    if (axis == 1) return (i * (n[1] + 1) + j) * n[2] + k;
    return (i * n[1] + j) * (n[2] + 1) + k;
  }

  /// y = A x.
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t N = size();
    y.resize(N);
    for (std::size_t c = 0; c < N; ++c) y[c] = diag[c] * x[c];
    const std::size_t n0 = n[0], n1 = n[1], n2 = n[2];
    // Axis 0: the hi cell of face (i,j,k) shares the face's flat index.
    for (std::size_t i = 1; i < n0; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        const std::size_t row = (i * n1 + j) * n2;
        for (std::size_t k = 0; k < n2; ++k) {
          const double L = link[0][row + k];
          if (L != 0.0) {
            y[row + k] -= L * x[row + k - n1 * n2];
            y[row + k - n1 * n2] -= L * x[row + k];
          }
        }
      }
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 1; j < n1; ++j) {
        const std::size_t face_row = (i * (n1 + 1) + j) * n2;
        const std::size_t row = (i * n1 + j) * n2;
        for (std::size_t k = 0; k < n2; ++k) {
          const double L = link[1][face_row + k];
          if (L != 0.0) {
            y[row + k] -= L * x[row + k - n2];
            y[row + k - n2] -= L * x[row + k];
          }
        }
      }
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        const std::size_t face_row = (i * n1 + j) * (n2 + 1);
        const std::size_t row = (i * n1 + j) * n2;
        for (std::size_t k = 1; k < n2; ++k) {
          const double L = link[2][face_row + k];
          if (L != 0.0) {
            y[row + k] -= L * x[row + k - 1];
            y[row + k - 1] -= L * x[row + k];
          }
        }
      }
  }
};

/// Finite-volume assembly of one band. Fluid faces get the diffusive
/// conductance D*A/h (harmonic-mean D across subdomain changes); partition
/// faces couple through c*tau/4 and absorb per side; boundary faces absorb
/// into the diagonal; air attenuation adds the volume sink c*m*V.
inline BandSystem assemble_band(const VoxelGrid& g, const AirProperties& air,
                                std::size_t band, ExchangeModel model) {
  BandSystem s;
  s.n = g.n;
  s.h = g.h;
  const std::size_t N = g.cell_count();
  s.diag.assign(N, 0.0);
  s.rhs.assign(N, 0.0);
  s.active.assign(N, 0);
  for (std::size_t a = 0; a < 3; ++a) s.link[a].assign(g.face_count(a), 0.0);

  const double c = air.speed_of_sound;
  const double area = g.h * g.h;
  const double vol = area * g.h;
  const std::array<double, 2> D{g.stats[0].cells ? g.stats[0].diffusion(c) : 0.0,
                                g.stats[1].cells ? g.stats[1].diffusion(c) : 0.0};

  for (std::size_t cidx = 0; cidx < N; ++cidx) {
    if (!g.is_air(g.cell[cidx])) {
      s.diag[cidx] = 1.0;
      continue;
    }
    s.active[cidx] = 1;
    s.diag[cidx] = c * air.attenuation[band] * vol;
  }

  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::array<std::size_t, 3> lim = g.n;
    lim[axis] += 1;
    for (std::size_t i = 0; i < lim[0]; ++i)
      for (std::size_t j = 0; j < lim[1]; ++j)
        for (std::size_t k = 0; k < lim[2]; ++k) {
          const std::size_t f = g.face_index(axis, i, j, k);
          const auto kind = static_cast<FaceKind>(g.face_kind[axis][f]);
          if (kind == FaceKind::none) continue;

          std::array<std::size_t, 3> chi{i, j, k};
          std::array<std::size_t, 3> clo{i, j, k};
          const bool at_lo = chi[axis] == 0;
          const bool at_hi = chi[axis] == g.n[axis];
          if (!at_lo) clo[axis] -= 1;
          const std::size_t lo =
              at_lo ? VoxelGrid::npos : g.cell_index(clo[0], clo[1], clo[2]);
          const std::size_t hi =
              at_hi ? VoxelGrid::npos : g.cell_index(chi[0], chi[1], chi[2]);

          if (kind == FaceKind::fluid) {
            const std::uint8_t rl = g.cell[lo];
            const std::uint8_t rh = g.cell[hi];
            const double dl = D[rl], dh = D[rh];
            const double d_face = (dl == dh) ? dl : 2.0 * dl * dh / (dl + dh);
            const double L = d_face * area / g.h;
            s.link[axis][f] = L;
            s.diag[lo] += L;
            s.diag[hi] += L;
          } else if (kind == FaceKind::partition) {
            const FaceSpec& spec = g.face_specs[g.face_data[axis][f]];
            const double lt = c * spec.tau[band] / 4.0 * area;
            s.link[axis][f] = lt;
            s.diag[lo] += lt + exchange_coefficient(model, spec.alpha_lo[band], c) * area;
            s.diag[hi] += lt + exchange_coefficient(model, spec.alpha_hi[band], c) * area;
          } else {  // boundary
            const FaceSpec& spec = g.face_specs[g.face_data[axis][f]];
            const std::size_t air_cell =
                (lo != VoxelGrid::npos && g.is_air(g.cell[lo])) ? lo : hi;
            s.diag[air_cell] +=
                exchange_coefficient(model, spec.alpha_lo[band], c) * area;
          }
        }
  }

  for (std::size_t cidx = 0; cidx < N; ++cidx) {
    if (s.active[cidx] && !(s.diag[cidx] > 0.0))
      throw input_error(
          "assembly produced an undamped isolated cell; add absorption or "
          "air attenuation");
  }
  return s;
}

/// Deposit a point source's band power into the cell containing it.
inline void add_point_source(BandSystem& s, const VoxelGrid& g, const Vec3& p,
                             double watts) {
  const std::size_t c = g.cell_of_point(p);
  if (c == VoxelGrid::npos || !s.active[c])
    throw input_error("source is not inside an air cell");
  s.rhs[c] += watts;
}

}  // namespace blindsim
