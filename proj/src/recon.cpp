#include "ringpet/recon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ringpet/errors.hpp"

namespace ringpet {

namespace {

constexpr double kPi = std::numbers::pi;

struct BinRay {
  std::array<double, 2> p0, p1;
};

// Center ray of bin (a, s): normal angle phi = (a + 0.5) * pi / D at signed
// distance s_mm from the axis, spanning the full field of view.
inline BinRay bin_ray(const ScannerGeometry& geom, int a, int s) {
  const int d = geom.crystals_per_ring;
  const double phi = (a + 0.5) * kPi / d;
  const double s_mm = (s - d) * geom.radius_mm / d;
  const double nx = std::cos(phi), ny = std::sin(phi);
  const double ux = -ny, uy = nx;
  const double reach = geom.radius_mm;
  return {{s_mm * nx - reach * ux, s_mm * ny - reach * uy},
          {s_mm * nx + reach * ux, s_mm * ny + reach * uy}};
}

}  // namespace

SystemModel make_system_model(const ScannerGeometry& geom, const ImageGrid& grid,
                              const BinMask& valid, const VoxelImage* mu,
                              const EfficiencyMap* eff, int ring_a, int ring_b) {
  geom.validate();
  if (valid.angle_bins != geom.angle_bins() || valid.radial_bins != geom.radial_bins())
    throw ShapeError("make_system_model: bin mask does not match geometry");
  SystemModel model;
  model.geom = geom;
  model.grid = grid;
  model.valid = valid;
  model.bin_factor.assign(model.num_bins(), 1.0);

  if (mu) {
    if (mu->width != grid.width || mu->height != grid.height)
      throw ShapeError("make_system_model: mu grid mismatch");
    ImageGrid mu_grid{mu->width, mu->height, mu->voxel_size_mm};
    for (int a = 0; a < geom.angle_bins(); ++a) {
      for (int s = 0; s < geom.radial_bins(); ++s) {
        const size_t b = static_cast<size_t>(a) * geom.radial_bins() + s;
        if (!model.valid.valid[b]) continue;
        const BinRay ray = bin_ray(geom, a, s);
        model.bin_factor[b] *= std::exp(-line_integral(mu_grid, mu->values.data(), ray.p0, ray.p1));
      }
    }
  }
  if (eff) {
    const int d = geom.crystals_per_ring;
    std::vector<double> eff_sum(model.num_bins(), 0.0);
    std::vector<int> eff_n(model.num_bins(), 0);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const LorBin bin = lor_to_bin(geom, i, j);
        const size_t b = static_cast<size_t>(bin.angle_index) * geom.radial_bins() + bin.radial_index;
        eff_sum[b] += eff->at(ring_a, i) * eff->at(ring_b, j);
        ++eff_n[b];
      }
    }
    for (size_t b = 0; b < model.bin_factor.size(); ++b)
      if (eff_n[b] > 0) model.bin_factor[b] *= eff_sum[b] / eff_n[b];
  }
  return model;
}

void project(const SystemModel& model, const std::vector<double>& image,
             std::vector<double>& sino) {
  if (image.size() != model.grid.num_voxels()) throw ShapeError("project: image size mismatch");
  sino.assign(model.num_bins(), 0.0);
  const int A = model.angle_bins(), S = model.radial_bins();
  for (int a = 0; a < A; ++a) {
    for (int s = 0; s < S; ++s) {
      const size_t b = static_cast<size_t>(a) * S + s;
      if (!model.valid.valid[b]) continue;
      const BinRay ray = bin_ray(model.geom, a, s);
      double acc = 0.0;
      trace_segment(model.grid, ray.p0, ray.p1,
                    [&](size_t idx, double len) { acc += image[idx] * len; });
      sino[b] = model.bin_factor[b] * acc;
    }
  }
}

void backproject(const SystemModel& model, const std::vector<double>& sino,
                 std::vector<double>& image) {
  if (sino.size() != model.num_bins()) throw ShapeError("backproject: sinogram size mismatch");
  image.assign(model.grid.num_voxels(), 0.0);
  const int A = model.angle_bins(), S = model.radial_bins();
  for (int a = 0; a < A; ++a) {
    for (int s = 0; s < S; ++s) {
      const size_t b = static_cast<size_t>(a) * S + s;
      if (!model.valid.valid[b]) continue;
      const double w = model.bin_factor[b] * sino[b];
      if (w == 0.0) continue;
      const BinRay ray = bin_ray(model.geom, a, s);
      trace_segment(model.grid, ray.p0, ray.p1,
                    [&](size_t idx, double len) { image[idx] += w * len; });
    }
  }
}

namespace {

// Backprojection restricted to one angle subset, accumulating factor * w.
void backproject_subset(const SystemModel& model, const std::vector<double>& sino, int subset,
                        int num_subsets, std::vector<double>& image) {
  std::fill(image.begin(), image.end(), 0.0);
  const int A = model.angle_bins(), S = model.radial_bins();
  for (int a = subset; a < A; a += num_subsets) {
    for (int s = 0; s < S; ++s) {
      const size_t b = static_cast<size_t>(a) * S + s;
      if (!model.valid.valid[b]) continue;
      const double w = model.bin_factor[b] * sino[b];
      if (w == 0.0) continue;
      const BinRay ray = bin_ray(model.geom, a, s);
      trace_segment(model.grid, ray.p0, ray.p1,
                    [&](size_t idx, double len) { image[idx] += w * len; });
    }
  }
}

void project_subset(const SystemModel& model, const std::vector<double>& image, int subset,
                    int num_subsets, std::vector<double>& sino) {
  const int A = model.angle_bins(), S = model.radial_bins();
  for (int a = subset; a < A; a += num_subsets) {
    for (int s = 0; s < S; ++s) {
      const size_t b = static_cast<size_t>(a) * S + s;
      if (!model.valid.valid[b]) continue;
      const BinRay ray = bin_ray(model.geom, a, s);
      double acc = 0.0;
      trace_segment(model.grid, ray.p0, ray.p1,
                    [&](size_t idx, double len) { acc += image[idx] * len; });
      sino[b] = model.bin_factor[b] * acc;
    }
  }
}

}  // namespace

std::vector<double> osem_reconstruct(const Sinogram& y, const SystemModel& model,
                                     const OsemOptions& opts) {
  if (y.angle_bins != model.angle_bins() || y.radial_bins != model.radial_bins())
    throw ShapeError("osem_reconstruct: sinogram does not match model");
  if (opts.num_subsets < 1 || opts.num_subsets > model.angle_bins())
    throw ConfigError("osem_reconstruct: num_subsets must be in [1, angle_bins]");
  if (opts.num_iterations < 0) throw ConfigError("osem_reconstruct: num_iterations must be >= 0");
  for (size_t b = 0; b < y.counts.size(); ++b)
    if (model.valid.valid[b] && (!std::isfinite(y.counts[b]) || y.counts[b] < 0.0))
      throw DataError("osem_reconstruct: counts must be finite and >= 0 on valid bins");

  const size_t nvox = model.grid.num_voxels();
  std::vector<double> x(nvox, 1.0);
  if (opts.initial) {
    if (opts.initial->size() != nvox) throw ShapeError("osem_reconstruct: initial image size mismatch");
    for (double v : *opts.initial)
      if (!(v > 0.0)) throw DataError("osem_reconstruct: initial image must be strictly positive");
    x = *opts.initial;
  }

  const int K = opts.num_subsets;
  std::vector<std::vector<double>> sens(K, std::vector<double>(nvox));
  std::vector<double> ones(model.num_bins(), 1.0);
  double sens_total = 0.0;
  for (int k = 0; k < K; ++k) {
    backproject_subset(model, ones, k, K, sens[k]);
    for (double v : sens[k]) sens_total += v;
  }
  if (sens_total <= 0.0) throw DataError("osem_reconstruct: model has all-zero sensitivity");

  std::vector<double> q(model.num_bins(), 0.0);
  std::vector<double> ratio(model.num_bins(), 0.0);
  std::vector<double> corr(nvox);
  for (int it = 0; it < opts.num_iterations; ++it) {
    for (int k = 0; k < K; ++k) {
      project_subset(model, x, k, K, q);
      for (int a = k; a < model.angle_bins(); a += K) {
        for (int s = 0; s < model.radial_bins(); ++s) {
          const size_t b = static_cast<size_t>(a) * model.radial_bins() + s;
          ratio[b] = (model.valid.valid[b] && q[b] > 0.0) ? y.counts[b] / q[b] : 0.0;
        }
      }
      backproject_subset(model, ratio, k, K, corr);
      for (size_t v = 0; v < nvox; ++v) {
        x[v] = sens[k][v] > 0.0 ? x[v] * corr[v] / sens[k][v] : 0.0;
      }
    }
  }
  return x;
}

double poisson_log_likelihood(const SystemModel& model, const std::vector<double>& image,
                              const Sinogram& y) {
  std::vector<double> q;
  project(model, image, q);
  double ll = 0.0;
  for (size_t b = 0; b < q.size(); ++b) {
    if (!model.valid.valid[b]) continue;
    const double qb = std::max(q[b], 1e-30);
    if (y.counts[b] > 0.0) ll += y.counts[b] * std::log(qb);
    ll -= q[b];
  }
  return ll;
}

namespace {

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& z : a) z /= static_cast<double>(n);
  }
}

}  // namespace

std::vector<double> fbp_reconstruct(const Sinogram& y, const ScannerGeometry& geom,
                                    const ImageGrid& grid) {
  geom.validate();
  if (y.angle_bins != geom.angle_bins() || y.radial_bins != geom.radial_bins())
    throw ShapeError("fbp_reconstruct: sinogram does not match geometry");
  const int A = y.angle_bins, S = y.radial_bins;
  const int d = geom.crystals_per_ring;
  const double ds = geom.radius_mm / d;

  size_t m = 1;
  while (m < 2 * static_cast<size_t>(S)) m <<= 1;

  // Band-limited ramp kernel sampled at the radial pitch, laid out
  // circularly so frequency-domain multiplication is a linear convolution.
  std::vector<std::complex<double>> ramp(m, 0.0);
  ramp[0] = 1.0 / (4.0 * ds * ds);
  for (int n = 1; n < S; ++n) {
    const double h = (n % 2 == 1) ? -1.0 / (kPi * kPi * n * n * ds * ds) : 0.0;
    ramp[n] = h;
    ramp[m - n] = h;
  }
  fft_radix2(ramp, false);

  std::vector<double> filtered(static_cast<size_t>(A) * S);
  std::vector<std::complex<double>> row(m);
  for (int a = 0; a < A; ++a) {
    std::fill(row.begin(), row.end(), std::complex<double>(0.0, 0.0));
    for (int s = 0; s < S; ++s) row[s] = y.counts[y.index(a, s)];
    fft_radix2(row, false);
    for (size_t k = 0; k < m; ++k) row[k] *= ramp[k];
    fft_radix2(row, true);
    for (int s = 0; s < S; ++s) filtered[static_cast<size_t>(a) * S + s] = row[s].real() * ds;
  }

  std::vector<double> image(grid.num_voxels(), 0.0);
  const double dphi = kPi / A;
  for (int a = 0; a < A; ++a) {
    const double phi = (a + 0.5) * kPi / d;
    const double c = std::cos(phi), sn = std::sin(phi);
    const double* frow = &filtered[static_cast<size_t>(a) * S];
    for (int iy = 0; iy < grid.height; ++iy) {
      const double py = grid.y_min() + (iy + 0.5) * grid.voxel_size_mm;
      for (int ix = 0; ix < grid.width; ++ix) {
        const double px = grid.x_min() + (ix + 0.5) * grid.voxel_size_mm;
        const double u = (px * c + py * sn) / ds + d;
        const int u0 = static_cast<int>(std::floor(u));
        if (u0 < 0 || u0 + 1 >= S) continue;
        const double f = u - u0;
        image[static_cast<size_t>(iy) * grid.width + ix] +=
            dphi * ((1.0 - f) * frow[u0] + f * frow[u0 + 1]);
      }
    }
  }
  return image;
}

}  // namespace ringpet
