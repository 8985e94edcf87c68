#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace ringpet {

/// Square pixel grid centered on the scanner axis.
struct ImageGrid {
  int width = 64;
  int height = 64;
  double voxel_size_mm = 2.78;

  double x_min() const { return -0.5 * width * voxel_size_mm; }
  double y_min() const { return -0.5 * height * voxel_size_mm; }
  size_t num_voxels() const { return static_cast<size_t>(width) * height; }
};

/// Walk the segment p0 -> p1 (mm) through the grid, calling
/// visit(voxel_index, intersection_length_mm) for every pixel crossed.
/// Intersection lengths sum to the in-grid portion of the segment.
template <typename Visitor>
inline void trace_segment(const ImageGrid& grid, std::array<double, 2> p0, std::array<double, 2> p1,
                          Visitor&& visit) {
  const double dx = p1[0] - p0[0];
  const double dy = p1[1] - p0[1];
  const double seg_len = std::hypot(dx, dy);
  if (seg_len <= 0.0) return;

  // Clip the parameter range [0,1] against the grid slab on each axis.
  double tmin = 0.0, tmax = 1.0;
  const double xs = grid.x_min(), ys = grid.y_min();
  const double xe = xs + grid.width * grid.voxel_size_mm;
  const double ye = ys + grid.height * grid.voxel_size_mm;
  const auto clip = [&](double p, double d, double lo, double hi) {
    if (d == 0.0) return p >= lo && p <= hi;
    double t0 = (lo - p) / d, t1 = (hi - p) / d;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    return true;
  };
  if (!clip(p0[0], dx, xs, xe) || !clip(p0[1], dy, ys, ye)) return;
  if (tmin >= tmax) return;

  const double v = grid.voxel_size_mm;
  // Entry point nudged inside to get stable starting indices.
  const double t_entry = tmin + 1e-12 * (tmax - tmin);
  double ex = p0[0] + t_entry * dx;
  double ey = p0[1] + t_entry * dy;
  int ix = std::clamp(static_cast<int>(std::floor((ex - xs) / v)), 0, grid.width - 1);
  int iy = std::clamp(static_cast<int>(std::floor((ey - ys) / v)), 0, grid.height - 1);

  const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
  const double inf = std::numeric_limits<double>::infinity();
  const double dt_x = step_x != 0 ? v / std::fabs(dx) : inf;
  const double dt_y = step_y != 0 ? v / std::fabs(dy) : inf;

  // Parameter value of the next axis crossing in each direction.
  double tx = inf, ty = inf;
  if (step_x > 0)
    tx = ((xs + (ix + 1) * v) - p0[0]) / dx;
  else if (step_x < 0)
    tx = ((xs + ix * v) - p0[0]) / dx;
  if (step_y > 0)
    ty = ((ys + (iy + 1) * v) - p0[1]) / dy;
  else if (step_y < 0)
    ty = ((ys + iy * v) - p0[1]) / dy;

  double t = tmin;
  while (t < tmax) {
    double t_next = std::min({tx, ty, tmax});
    if (t_next > t) {
      visit(static_cast<size_t>(iy) * grid.width + ix, (t_next - t) * seg_len);
    }
    t = t_next;
    if (t >= tmax) break;
    if (tx <= ty) {
      ix += step_x;
      tx += dt_x;
      if (ix < 0 || ix >= grid.width) break;
    } else {
      iy += step_y;
      ty += dt_y;
      if (iy < 0 || iy >= grid.height) break;
    }
  }
}

/// Line integral of img along the segment (mm-weighted pixel sum).
double line_integral(const ImageGrid& grid, const double* img, std::array<double, 2> p0,
                     std::array<double, 2> p1);

}  // namespace ringpet
