#pragma once

#include <optional>
#include <vector>

#include "ringpet/geometry.hpp"
#include "ringpet/phantom.hpp"
#include "ringpet/raytrace.hpp"
#include "ringpet/simulate.hpp"
#include "ringpet/sinogram.hpp"

namespace ringpet {

/// Forward model y = A x for one slice. Each valid bin (a, s) integrates
/// the image along its center ray; per-bin attenuation and efficiency
/// factors are folded into the model so project and backproject stay an
/// exact adjoint pair.
struct SystemModel {
  ScannerGeometry geom;
  ImageGrid grid;
  BinMask valid;
  std::vector<double> bin_factor;  // multiplicative, size A*S

  int angle_bins() const { return geom.angle_bins(); }
  int radial_bins() const { return geom.radial_bins(); }
  size_t num_bins() const { return static_cast<size_t>(angle_bins()) * radial_bins(); }
};

/// Build the model. `mu` folds exp(-line integral) into each bin;
/// `eff` folds the mean crystal-pair efficiency of the pairs mapping to
/// each bin. Either may be null.
SystemModel make_system_model(const ScannerGeometry& geom, const ImageGrid& grid,
                              const BinMask& valid, const VoxelImage* mu = nullptr,
                              const EfficiencyMap* eff = nullptr, int ring_a = 0, int ring_b = 0);

/// y = A x. `sino` is overwritten (angle-major A*S).
void project(const SystemModel& model, const std::vector<double>& image, std::vector<double>& sino);

/// x = A^T y. `image` is overwritten.
void backproject(const SystemModel& model, const std::vector<double>& sino,
                 std::vector<double>& image);

struct OsemOptions {
  int num_subsets = 7;
  int num_iterations = 10;
  std::optional<std::vector<double>> initial;  // default: ones
};

/// Ordered-subsets EM with interleaved angle strides (subset k takes
/// angles congruent to k). num_subsets = 1 is plain MLEM. Voxels with zero
/// subset sensitivity are frozen at 0.
std::vector<double> osem_reconstruct(const Sinogram& y, const SystemModel& model,
                                     const OsemOptions& opts);

/// Poisson log-likelihood sum_b [y_b log(Ax)_b - (Ax)_b] over valid bins.
double poisson_log_likelihood(const SystemModel& model, const std::vector<double>& image,
                              const Sinogram& y);

/// Filtered backprojection: frequency-domain ramp filter along the radial
/// axis of each angle row, then interpolating backprojection. Linear in y.
std::vector<double> fbp_reconstruct(const Sinogram& y, const ScannerGeometry& geom,
                                    const ImageGrid& grid);

}  // namespace ringpet
