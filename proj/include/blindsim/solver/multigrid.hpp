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

#include "blindsim/solver/system.hpp"

namespace blindsim {

namespace detail {

/// One red-black half sweep: update the cells whose index parity matches
/// `color` (0 red, 1 black) in place.
inline void rb_half_sweep(const BandSystem& A, const std::vector<double>& b,
                          std::vector<double>& x, int color) {
  const std::size_t n0 = A.n[0], n1 = A.n[1], n2 = A.n[2];
  const std::size_t s0 = n1 * n2;
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const std::size_t row = (i * n1 + j) * n2;
      const std::size_t frow1 = (i * (n1 + 1) + j) * n2;
      const std::size_t frow2 = (i * n1 + j) * (n2 + 1);
      std::size_t k = (i + j + static_cast<std::size_t>(color)) % 2;
      for (; k < n2; k += 2) {
        const std::size_t c = row + k;
        double acc = b[c];
        if (i > 0) acc += A.link[0][c] * x[c - s0];
        if (i + 1 < n0) acc += A.link[0][c + s0] * x[c + s0];
        if (j > 0) acc += A.link[1][frow1 + k] * x[c - n2];
        if (j + 1 < n1) acc += A.link[1][frow1 + n2 + k] * x[c + n2];
        if (k > 0) acc += A.link[2][frow2 + k] * x[c - 1];
        if (k + 1 < n2) acc += A.link[2][frow2 + k + 1] * x[c + 1];
        x[c] = acc / A.diag[c];
      }
    }
}

/// Lexicographic Gauss-Seidel pass over every cell, forward or backward.
/// A forward+backward pair is one symmetric sweep.
inline void gs_full_sweep(const BandSystem& A, const std::vector<double>& b,
                          std::vector<double>& x, bool forward) {
  const std::size_t n0 = A.n[0], n1 = A.n[1], n2 = A.n[2];
  const std::size_t s0 = n1 * n2;
  const std::size_t N = A.size();
  for (std::size_t step = 0; step < N; ++step) {
    const std::size_t c = forward ? step : N - 1 - step;
    const std::size_t k = c % n2;
    const std::size_t j = (c / n2) % n1;
    const std::size_t i = c / s0;
    const std::size_t frow1 = (i * (n1 + 1) + j) * n2;
    const std::size_t frow2 = (i * n1 + j) * (n2 + 1);
    double acc = b[c];
    if (i > 0) acc += A.link[0][c] * x[c - s0];
    if (i + 1 < n0) acc += A.link[0][c + s0] * x[c + s0];
    if (j > 0) acc += A.link[1][frow1 + k] * x[c - n2];
    if (j + 1 < n1) acc += A.link[1][frow1 + n2 + k] * x[c + n2];
    if (k > 0) acc += A.link[2][frow2 + k] * x[c - 1];
    if (k + 1 < n2) acc += A.link[2][frow2 + k + 1] * x[c + 1];
    x[c] = acc / A.diag[c];
  }
}

/// Galerkin coarsening with 2x2x2 cell agglomeration and piecewise-constant
/// transfer. The coarse operator keeps the 7-point structure: crossing links
/// add up across the coarse face, interior links fold into the diagonal.
inline BandSystem agglomerate(const BandSystem& f) {
  BandSystem c;
  for (std::size_t a = 0; a < 3; ++a) c.n[a] = (f.n[a] + 1) / 2;
  c.h = f.h * 2.0;
  const std::size_t N = c.n[0] * c.n[1] * c.n[2];
  c.diag.assign(N, 0.0);
  c.rhs.assign(N, 0.0);
  c.active.assign(N, 1);
  c.link[0].assign((c.n[0] + 1) * c.n[1] * c.n[2], 0.0);
  c.link[1].assign(c.n[0] * (c.n[1] + 1) * c.n[2], 0.0);
  c.link[2].assign(c.n[0] * c.n[1] * (c.n[2] + 1), 0.0);

  const std::size_t n0 = f.n[0], n1 = f.n[1], n2 = f.n[2];
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        c.diag[c.cell_index(i / 2, j / 2, k / 2)] +=
            f.diag[f.cell_index(i, j, k)];

  auto fold = [&](std::size_t axis, std::size_t i, std::size_t j,
                  std::size_t k, double L) {
    if (L == 0.0) return;
    std::array<std::size_t, 3> hi{i, j, k};
    std::array<std::size_t, 3> lo{i, j, k};
    lo[axis] -= 1;
    const std::size_t cl = lo[axis] / 2;
    const std::size_t ch = hi[axis] / 2;
    std::array<std::size_t, 3> cc{hi[0] / 2, hi[1] / 2, hi[2] / 2};
    if (cl == ch) {
      c.diag[c.cell_index(cc[0], cc[1], cc[2])] -= 2.0 * L;
    } else {
      std::array<std::size_t, 3> fc = cc;
      fc[axis] = ch;
      c.link[axis][c.face_index(axis, fc[0], fc[1], fc[2])] += L;
    }
  };

  for (std::size_t i = 1; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        fold(0, i, j, k, f.link[0][f.face_index(0, i, j, k)]);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 1; j < n1; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        fold(1, i, j, k, f.link[1][f.face_index(1, i, j, k)]);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 1; k < n2; ++k)
        fold(2, i, j, k, f.link[2][f.face_index(2, i, j, k)]);
  return c;
}

}  // namespace detail

/// Geometric multigrid V-cycle used as a CG preconditioner. Smoothing is
/// red-black Gauss-Seidel with adjoint ordering on the way up, and the
/// coarsest level runs a fixed number of symmetric sweeps, so one cycle is
/// a symmetric positive definite operator and every run of it is
/// bit-reproducible.
class MultigridPreconditioner {
 public:
  explicit MultigridPreconditioner(const BandSystem& fine,
                                   std::size_t coarsest_max = 2000,
                                   std::size_t coarsest_sweeps = 30,
                                   std::size_t smooth_sweeps = 2)
      : fine_(&fine),
        coarsest_sweeps_(coarsest_sweeps),
        smooth_sweeps_(smooth_sweeps) {
    levels_.emplace_back();  // level 0 borrows `fine`
    while (sys(levels_.size() - 1).size() > coarsest_max) {
      const BandSystem& prev = sys(levels_.size() - 1);
      if (prev.n[0] <= 1 && prev.n[1] <= 1 && prev.n[2] <= 1) break;
      Level lvl;
      lvl.owned = detail::agglomerate(prev);
      levels_.push_back(std::move(lvl));
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      const std::size_t n = sys(l).size();
      levels_[l].x.assign(n, 0.0);
      levels_[l].b.assign(n, 0.0);
      levels_[l].r.assign(n, 0.0);
    }
  }

  std::size_t depth() const { return levels_.size(); }

  /// z = M^{-1} r via one V-cycle from a zero initial guess.
  void apply(const std::vector<double>& r, std::vector<double>& z) {
    levels_[0].b = r;
    const std::size_t L = levels_.size();
    for (std::size_t l = 0; l + 1 < L; ++l) {
      Level& fine = levels_[l];
      const BandSystem& A = sys(l);
      std::fill(fine.x.begin(), fine.x.end(), 0.0);
      for (std::size_t s = 0; s < smooth_sweeps_; ++s) {
        detail::rb_half_sweep(A, fine.b, fine.x, 0);
        detail::rb_half_sweep(A, fine.b, fine.x, 1);
      }
      A.apply(fine.x, fine.r);
      for (std::size_t c = 0; c < fine.r.size(); ++c)
        fine.r[c] = fine.b[c] - fine.r[c];
      restrict_to(l + 1, fine.r);
    }

    Level& bottom = levels_.back();
    const BandSystem& Ab = sys(L - 1);
    std::fill(bottom.x.begin(), bottom.x.end(), 0.0);
    for (std::size_t s = 0; s < coarsest_sweeps_; ++s) {
      detail::gs_full_sweep(Ab, bottom.b, bottom.x, true);
      detail::gs_full_sweep(Ab, bottom.b, bottom.x, false);
    }

    for (std::size_t l = L - 1; l-- > 0;) {
      Level& fine = levels_[l];
      const BandSystem& A = sys(l);
      prolong_add(l + 1, fine.x);
      for (std::size_t s = 0; s < smooth_sweeps_; ++s) {
        detail::rb_half_sweep(A, fine.b, fine.x, 1);
        detail::rb_half_sweep(A, fine.b, fine.x, 0);
      }
    }
    z = levels_[0].x;
  }

 private:
  struct Level {
    BandSystem owned;  // empty on level 0, which borrows the fine system
    std::vector<double> x, b, r;
  };

  const BandSystem& sys(std::size_t l) const {
    return l == 0 ? *fine_ : levels_[l].owned;
  }

  void restrict_to(std::size_t coarse, const std::vector<double>& fine_r) {
    Level& cl = levels_[coarse];
    const BandSystem& ca = sys(coarse);
    const BandSystem& fa = sys(coarse - 1);
    std::fill(cl.b.begin(), cl.b.end(), 0.0);
    for (std::size_t i = 0; i < fa.n[0]; ++i)
      for (std::size_t j = 0; j < fa.n[1]; ++j)
        for (std::size_t k = 0; k < fa.n[2]; ++k)
          cl.b[ca.cell_index(i / 2, j / 2, k / 2)] +=
              fine_r[fa.cell_index(i, j, k)];
  }

  void prolong_add(std::size_t coarse, std::vector<double>& fine_x) {
    Level& cl = levels_[coarse];
    const BandSystem& ca = sys(coarse);
    const BandSystem& fa = sys(coarse - 1);
    for (std::size_t i = 0; i < fa.n[0]; ++i)
      for (std::size_t j = 0; j < fa.n[1]; ++j)
        for (std::size_t k = 0; k < fa.n[2]; ++k)
          fine_x[fa.cell_index(i, j, k)] +=
              cl.x[ca.cell_index(i / 2, j / 2, k / 2)];
  }

  const BandSystem* fine_;
  std::vector<Level> levels_;
  std::size_t coarsest_sweeps_;
  std::size_t smooth_sweeps_;
};

}  // namespace blindsim
