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

#include <chrono>
#include <cmath>
#include <memory>
#include <thread>
#include <vector>

#include "blindsim/scene/scene.hpp"
#include "blindsim/solver/multigrid.hpp"
#include "blindsim/solver/system.hpp"

namespace blindsim {

enum class Preconditioner { automatic, jacobi, multigrid };

inline std::string preconditioner_name(Preconditioner p) {
  switch (p) {
    case Preconditioner::automatic: return "automatic";
    case Preconditioner::jacobi: return "jacobi";
    case Preconditioner::multigrid: return "multigrid";
  }
  return "?";
}

struct SolveOptions {
  ExchangeModel model = ExchangeModel::sabine;
  double rel_tol = 1e-8;
  std::size_t max_iters = 0;  // 0 picks ceil(10*sqrt(N))
  Preconditioner precond = Preconditioner::automatic;
  std::size_t mg_threshold = 20000;  // automatic: multigrid above this size
  unsigned threads = 1;              // bands solved in parallel when > 1

  std::size_t max_iters_for(std::size_t n) const {
    if (max_iters) return max_iters;
    return static_cast<std::size_t>(
        std::ceil(10.0 * std::sqrt(static_cast<double>(n))));
  }
};

struct BandSolveInfo {
  std::size_t iterations = 0;
  double rel_residual = 0.0;
  std::size_t negative_cells = 0;
  double seconds = 0.0;
  std::string preconditioner;
  double input_w = 0.0;
  double output_w = 0.0;
  double imbalance_pct = 0.0;
};

struct Solution {
  std::array<std::vector<double>, kNumBands> w;  // J/m^3 per band
  std::array<BandSolveInfo, kNumBands> info;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Preconditioned conjugate gradients on one band. All reductions are
/// serial, so results are bit-identical run to run and do not depend on
/// how many bands solve concurrently.
inline std::vector<double> solve_band(const BandSystem& A,
                                      const SolveOptions& opt,
                                      BandSolveInfo& info) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t N = A.size();
  std::vector<double> x(N, 0.0);

  const double b_norm = std::sqrt(detail::dot(A.rhs, A.rhs));
  Preconditioner kind = opt.precond;
  if (kind == Preconditioner::automatic)
    kind = N > opt.mg_threshold ? Preconditioner::multigrid
                                : Preconditioner::jacobi;
  info.preconditioner = preconditioner_name(kind);

  if (b_norm == 0.0) {
    info.iterations = 0;
    info.rel_residual = 0.0;
    info.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return x;  // zero forcing has the exact zero solution
  }

  std::unique_ptr<MultigridPreconditioner> mg;
  if (kind == Preconditioner::multigrid)
    mg = std::make_unique<MultigridPreconditioner>(A);
  auto precondition = [&](const std::vector<double>& r,
                          std::vector<double>& z) {
    if (mg) {
      mg->apply(r, z);
    } else {
      z.resize(N);
      for (std::size_t i = 0; i < N; ++i) z[i] = r[i] / A.diag[i];
    }
  };

  std::vector<double> r = A.rhs, z, p, q;
  precondition(r, z);
  p = z;
  double rz = detail::dot(r, z);
  const std::size_t max_iters = opt.max_iters_for(N);

  for (std::size_t it = 1; it <= max_iters; ++it) {
    A.apply(p, q);
    const double pq = detail::dot(p, q);
    if (!(pq > 0.0))
      throw solver_error("conjugate gradients lost positive definiteness");
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < N; ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < N; ++i) r[i] -= alpha * q[i];
    const double rel = std::sqrt(detail::dot(r, r)) / b_norm;
    if (rel <= opt.rel_tol) {
      info.iterations = it;
      info.rel_residual = rel;
      info.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      return x;
    }
    precondition(r, z);
    const double rz_next = detail::dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < N; ++i) p[i] = z[i] + beta * p[i];
  }
  throw solver_error("no convergence within " + std::to_string(max_iters) +
                     " iterations (relative residual " +
                     std::to_string(std::sqrt(detail::dot(r, r)) / b_norm) +
                     ")");
}

/// Power bookkeeping for one solved band: input vs the sum of boundary
/// absorption, partition-face absorption and the volumetric air sink.
inline void energy_balance(const VoxelGrid& g, const AirProperties& air,
                           std::size_t band, ExchangeModel model,
                           const std::vector<double>& w, BandSolveInfo& info) {
  const double c = air.speed_of_sound;
  const double area = g.h * g.h;
  double out = 0.0;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::array<std::size_t, 3> lim = g.n;
    lim[axis] += 1;
    for (std::size_t i = 0; i < lim[0]; ++i)
      for (std::size_t j = 0; j < lim[1]; ++j)
        for (std::size_t k = 0; k < lim[2]; ++k) {
          const std::size_t f = g.face_index(axis, i, j, k);
          const auto kind = static_cast<FaceKind>(g.face_kind[axis][f]);
          if (kind != FaceKind::boundary && kind != FaceKind::partition)
            continue;
          const FaceSpec& spec = g.face_specs[g.face_data[axis][f]];
          std::array<std::size_t, 3> chi{i, j, k};
          std::array<std::size_t, 3> clo{i, j, k};
          const bool at_lo = chi[axis] == 0;
          const bool at_hi = chi[axis] == g.n[axis];
          if (!at_lo) clo[axis] -= 1;
          const std::size_t lo =
              at_lo ? VoxelGrid::npos : g.cell_index(clo[0], clo[1], clo[2]);
          const std::size_t hi =
              at_hi ? VoxelGrid::npos : g.cell_index(chi[0], chi[1], chi[2]);
          if (kind == FaceKind::partition) {
            out += exchange_coefficient(model, spec.alpha_lo[band], c) * area *
                   w[lo];
            out += exchange_coefficient(model, spec.alpha_hi[band], c) * area *
                   w[hi];
          } else {
            const std::size_t air_cell =
                (lo != VoxelGrid::npos && g.is_air(g.cell[lo])) ? lo : hi;
            out += exchange_coefficient(model, spec.alpha_lo[band], c) * area *
                   w[air_cell];
          }
        }
  }
  if (air.attenuation[band] > 0.0) {
    const double vol = area * g.h;
    double wsum = 0.0;
    for (std::size_t cidx = 0; cidx < g.cell_count(); ++cidx)
      if (g.is_air(g.cell[cidx])) wsum += w[cidx];
    out += c * air.attenuation[band] * vol * wsum;
  }
  info.output_w = out;
  info.imbalance_pct = info.input_w > 0.0
                           ? 100.0 * std::abs(info.input_w - out) / info.input_w
                           : 0.0;
}

/// Assemble and solve every band of a voxelized scene. Bands are
/// independent; `threads` > 1 solves them concurrently with identical
/// results, at the cost of holding several systems in memory.
inline Solution solve_scene(const VoxelGrid& g, const SceneSpec& scene,
                            const SolveOptions& opt = {}) {
  Solution sol;
  std::vector<BandSpectrum> powers;
  powers.reserve(scene.sources.size());
  for (const auto& src : scene.sources)
    powers.push_back(src.power_w(scene.air, scene.radiation));

  auto run_band = [&](std::size_t band) {
    BandSystem sys = assemble_band(g, scene.air, band, opt.model);
    double input = 0.0;
    for (std::size_t s = 0; s < scene.sources.size(); ++s) {
      add_point_source(sys, g, scene.sources[s].position, powers[s][band]);
      input += powers[s][band];
    }
    BandSolveInfo info;
    info.input_w = input;
    std::vector<double> w = solve_band(sys, opt, info);
    std::size_t negatives = 0;
    for (double& v : w)
      if (v < 0.0) {
        v = 0.0;
        ++negatives;
      }
    info.negative_cells = negatives;
    energy_balance(g, scene.air, band, opt.model, w, info);
    sol.w[band] = std::move(w);
    sol.info[band] = info;
  };

  if (opt.threads <= 1) {
    for (std::size_t band = 0; band < kNumBands; ++band) run_band(band);
  } else {
    std::vector<std::thread> pool;
    const unsigned width = std::min<unsigned>(opt.threads, kNumBands);
    for (unsigned t = 0; t < width; ++t) pool.emplace_back([&, t] {
      for (std::size_t band = t; band < kNumBands; band += width)
        run_band(band);
    });
    for (auto& th : pool) th.join();
  }
  return sol;
}

}  // namespace blindsim
