#include "ringpet/phantom.hpp"

#include <cmath>

#include "ringpet/errors.hpp"
#include "ringpet/rng.hpp"

namespace ringpet {

double mu_lookup(TissueClass tissue) {
  // Narrow-beam values at 511 keV, 1/mm. Soft tissues sit near water
  // (0.0096/mm); cranial bone is markedly higher.
  switch (tissue) {
    case TissueClass::Air:
      return 0.0;
    case TissueClass::GreyMatter:
      return 0.0096;
    case TissueClass::WhiteMatter:
      return 0.0095;
    case TissueClass::Bone:
      return 0.0172;
    case TissueClass::Muscle:
      return 0.0100;
    case TissueClass::Fat:
      return 0.0090;
    case TissueClass::Blood:
      return 0.0101;
  }
  throw DataError("mu_lookup: unknown tissue class");
}

VoxelImage VoxelImage::zeros(int width, int height, double voxel_size_mm) {
  VoxelImage img;
  img.width = width;
  img.height = height;
  img.voxel_size_mm = voxel_size_mm;
  img.values.assign(static_cast<size_t>(width) * height, 0.0);
  return img;
}

namespace {

struct Ellipse {
  double cx, cy;      // center, normalized [-1, 1] coords
  double ax, ay;      // semi-axes
  double rot;         // radians
  double radius(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    const double c = std::cos(rot), s = std::sin(rot);
    const double u = (c * dx + s * dy) / ax;
    const double v = (-s * dx + c * dy) / ay;
    return std::sqrt(u * u + v * v);
  }
};

struct HeadShape {
  Ellipse head;
  Ellipse vent_left, vent_right;
  double blood_x, blood_y, blood_r;
};

HeadShape subject_shape(const PhantomSpec& spec, uint64_t seed) {
  Rng rng(seed, 0x7048414e544f4dULL);
  const double j = spec.shape_jitter;
  HeadShape hs;
  hs.head.cx = rng.uniform(-0.02, 0.02);
  hs.head.cy = rng.uniform(-0.02, 0.02);
  hs.head.ax = 0.80 * (1.0 + rng.uniform(-j, j));
  hs.head.ay = 0.92 * (1.0 + rng.uniform(-j, j));
  hs.head.rot = rng.uniform(-0.20, 0.20);

  const double vsep = 0.16 * (1.0 + rng.uniform(-j, j));
  const double vax = 0.07 * (1.0 + rng.uniform(-j, j));
  const double vay = 0.22 * (1.0 + rng.uniform(-j, j));
  const double vrot = rng.uniform(-0.15, 0.15);
  hs.vent_left = {hs.head.cx - vsep, hs.head.cy - 0.05, vax, vay, vrot + 0.25};
  hs.vent_right = {hs.head.cx + vsep, hs.head.cy - 0.05, vax, vay, vrot - 0.25};

  hs.blood_x = hs.head.cx;
  hs.blood_y = hs.head.cy + 0.60 * hs.head.ay;
  hs.blood_r = 0.035 * (1.0 + rng.uniform(-j, j));
  return hs;
}

}  // namespace

std::pair<VoxelImage, TissueMap> make_brain_phantom(const PhantomSpec& spec, uint64_t seed,
                                                    double axial_fraction) {
  if (spec.size < 16) throw ConfigError("phantom: size must be >= 16");
  if (spec.grey_activity < 0 || spec.white_activity < 0 || spec.csf_activity < 0 ||
      spec.blood_activity < 0)
    throw ConfigError("phantom: activity ratios must be >= 0");

  const HeadShape hs = subject_shape(spec, seed);
  // Cross-section of the head ellipsoid at this axial position.
  const double z = (axial_fraction - 0.5) / 0.62;
  const double axial_scale = std::sqrt(std::max(0.25, 1.0 - z * z));
  const bool vents_present = std::fabs(axial_fraction - 0.5) < 0.22;

  const int n = spec.size;
  VoxelImage img = VoxelImage::zeros(n, n, spec.voxel_size_mm);
  TissueMap tissues;
  tissues.width = n;
  tissues.height = n;
  tissues.classes.assign(static_cast<size_t>(n) * n, TissueClass::Air);

  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double px = (2.0 * (x + 0.5) / n - 1.0);
      const double py = (2.0 * (y + 0.5) / n - 1.0);
      Ellipse head = hs.head;
      head.ax *= axial_scale;
      head.ay *= axial_scale;
      const double r = head.radius(px, py);
      if (r > 1.0) continue;

      TissueClass cls;
      double act = 0.0;
      if (r > 0.95) {
        cls = TissueClass::Fat;  // scalp
      } else if (r > 0.91) {
        cls = TissueClass::Muscle;
      } else if (r > 0.84) {
        cls = TissueClass::Bone;  // skull
      } else {
        const double db = std::hypot(px - hs.blood_x, py - hs.blood_y * axial_scale);
        if (vents_present &&
            (hs.vent_left.radius(px, py) < axial_scale || hs.vent_right.radius(px, py) < axial_scale)) {
          cls = TissueClass::Muscle;  // ventricles: CSF, water-equivalent
          act = spec.csf_activity;
        } else if (db < hs.blood_r) {
          cls = TissueClass::Blood;
          act = spec.blood_activity;
        } else if (r > 0.62) {
          cls = TissueClass::GreyMatter;
          act = spec.grey_activity;
        } else {
          cls = TissueClass::WhiteMatter;
          act = spec.white_activity;
        }
      }
      tissues.classes[static_cast<size_t>(y) * n + x] = cls;
      img.at(x, y) = act;
    }
  }
  return {std::move(img), std::move(tissues)};
}

std::vector<std::pair<VoxelImage, TissueMap>> make_brain_volume(const PhantomSpec& spec,
                                                                int num_planes, uint64_t seed) {
  if (num_planes < 1) throw ConfigError("phantom: num_planes must be >= 1");
  std::vector<std::pair<VoxelImage, TissueMap>> planes;
  planes.reserve(num_planes);
  for (int p = 0; p < num_planes; ++p) {
    const double frac = num_planes == 1 ? 0.5 : 0.30 + 0.40 * p / (num_planes - 1);
    planes.push_back(make_brain_phantom(spec, seed, frac));
  }
  return planes;
}

VoxelImage mu_map(const TissueMap& tissues, double voxel_size_mm) {
  VoxelImage mu = VoxelImage::zeros(tissues.width, tissues.height, voxel_size_mm);
  for (size_t k = 0; k < tissues.classes.size(); ++k) mu.values[k] = mu_lookup(tissues.classes[k]);
  return mu;
}

}  // namespace ringpet
