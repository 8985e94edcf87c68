#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ringpet {

/// Tissue classes carried by the attenuation model. Cerebrospinal fluid
/// regions are labeled Muscle for attenuation purposes (water-equivalent
/// at 511 keV).
enum class TissueClass : uint8_t {
  Air = 0,
  GreyMatter,
  WhiteMatter,
  Bone,
  Muscle,
  Fat,
  Blood,
};

/// Linear attenuation coefficient at 511 keV in 1/mm.
double mu_lookup(TissueClass tissue);

struct VoxelImage {
  int width = 0;
  int height = 0;
  double voxel_size_mm = 2.78;
  std::vector<double> values;  // row-major, y * width + x

  static VoxelImage zeros(int width, int height, double voxel_size_mm = 2.78);
  double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
  size_t size() const { return values.size(); }
};

struct TissueMap {
  int width = 0;
  int height = 0;
  std::vector<TissueClass> classes;  // row-major

  TissueClass at(int x, int y) const { return classes[static_cast<size_t>(y) * width + x]; }
};

/// Activity levels per region; region means land on these values exactly
/// because activity is constant inside each region.
struct PhantomSpec {
  int size = 64;
  double voxel_size_mm = 2.78;
  double grey_activity = 4.0;
  double white_activity = 1.0;
  double csf_activity = 0.0;
  double blood_activity = 0.0;
  /// Relative size of per-subject shape perturbations.
  double shape_jitter = 0.06;
};

/// Synthetic head slice: skull ring, grey shell, white core, ventricles,
/// with seeded per-subject perturbations of the ellipse axes and rotation.
/// axial_fraction in [0, 1] selects the cross-section of the head
/// ellipsoid; 0.5 is the widest slice.
std::pair<VoxelImage, TissueMap> make_brain_phantom(const PhantomSpec& spec, uint64_t seed,
                                                    double axial_fraction = 0.5);

/// Stack of num_planes slices of one subject, widest near the middle.
std::vector<std::pair<VoxelImage, TissueMap>> make_brain_volume(const PhantomSpec& spec,
                                                                int num_planes, uint64_t seed);

/// Per-voxel attenuation map from tissue classes.
VoxelImage mu_map(const TissueMap& tissues, double voxel_size_mm);

}  // namespace ringpet
