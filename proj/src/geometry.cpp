#include "ringpet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ringpet/errors.hpp"

namespace ringpet {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ScannerGeometry::validate() const {
  if (crystals_per_ring < 4) throw ConfigError("geometry: crystals_per_ring must be >= 4");
  if (crystals_per_ring % 2 != 0) throw ConfigError("geometry: crystals_per_ring must be even");
  if (num_rings < 1) throw ConfigError("geometry: num_rings must be >= 1");
  if (!(radius_mm > 0.0)) throw ConfigError("geometry: radius_mm must be positive");
}

double DetectorMask::inactive_fraction() const {
  size_t inactive = 0;
  for (uint8_t a : crystal_active)
    if (!a) ++inactive;
  return crystal_active.empty() ? 0.0 : static_cast<double>(inactive) / crystal_active.size();
}

size_t BinMask::valid_count() const {
  size_t n = 0;
  for (uint8_t v : valid)
    if (v) ++n;
  return n;
}

std::array<double, 3> crystal_position(const ScannerGeometry& geom, int ring, int i) {
  if (i < 0 || i >= geom.crystals_per_ring) throw BoundsError("crystal_position: crystal index out of range");
  if (ring < 0 || ring >= geom.num_rings) throw BoundsError("crystal_position: ring index out of range");
  const double theta = 2.0 * kPi * i / geom.crystals_per_ring;
  return {geom.radius_mm * std::cos(theta), geom.radius_mm * std::sin(theta),
          ring * geom.crystal_axial_spacing_mm};
}

LorBin lor_to_bin(const ScannerGeometry& geom, int i, int j) {
  const int d = geom.crystals_per_ring;
  if (i < 0 || i >= d || j < 0 || j >= d) throw BoundsError("lor_to_bin: crystal index out of range");
  if (i == j) throw DataError("lor_to_bin: degenerate LOR (i == j)");

  const double ti = 2.0 * kPi * i / d;
  const double tj = 2.0 * kPi * j / d;
  const double uix = std::cos(tj) - std::cos(ti);
  const double uiy = std::sin(tj) - std::sin(ti);
  // Unit normal of the LOR, canonicalized so its angle lies in [0, pi).
  double nx = -uiy, ny = uix;
  const double nn = std::hypot(nx, ny);
  nx /= nn;
  ny /= nn;
  double s = geom.radius_mm * (nx * std::cos(ti) + ny * std::sin(ti));
  if (ny < 0.0 || (ny == 0.0 && nx < 0.0)) {
    nx = -nx;
    ny = -ny;
    s = -s;
  }
  const double phi = std::atan2(ny, nx);  // in [0, pi)

  int a = static_cast<int>(std::floor(phi / kPi * d));
  a = std::clamp(a, 0, d - 1);
  const int sbin = static_cast<int>(std::lround(s / geom.radius_mm * d)) + d;
  return LorBin{a, sbin};
}

namespace {

std::vector<AngularInterval> normalize_gaps(const std::vector<AngularInterval>& gaps) {
  std::vector<AngularInterval> out;
  out.reserve(gaps.size());
  for (const auto& g : gaps) {
    if (!std::isfinite(g.start_deg) || !std::isfinite(g.end_deg))
      throw ConfigError("mask: non-finite gap endpoint");
    double s = std::fmod(g.start_deg, 360.0);
    if (s < 0.0) s += 360.0;
    double e = std::fmod(g.end_deg, 360.0);
    if (e < 0.0) e += 360.0;
    if (e == 0.0 && g.end_deg != 0.0) e = 360.0;
    if (s >= e) throw ConfigError("mask: malformed gap interval (start >= end after normalization)");
    out.push_back({s, e});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.start_deg < b.start_deg; });
  for (size_t k = 1; k < out.size(); ++k) {
    if (out[k].start_deg < out[k - 1].end_deg)
      throw ConfigError("mask: overlapping gap intervals");
  }
  return out;
}

bool in_gaps(const std::vector<AngularInterval>& gaps, double angle_deg) {
  for (const auto& g : gaps)
    if (angle_deg >= g.start_deg && angle_deg < g.end_deg) return true;
  return false;
}

BinMask bin_mask_from_pattern(const ScannerGeometry& geom, const std::vector<uint8_t>& ring_pattern) {
  const int d = geom.crystals_per_ring;
  BinMask mask;
  mask.angle_bins = geom.angle_bins();
  mask.radial_bins = geom.radial_bins();
  mask.valid.assign(static_cast<size_t>(mask.angle_bins) * mask.radial_bins, 0);
  for (int i = 0; i < d; ++i) {
    if (!ring_pattern[i]) continue;
    for (int j = i + 1; j < d; ++j) {
      if (!ring_pattern[j]) continue;
      const LorBin b = lor_to_bin(geom, i, j);
      mask.valid[static_cast<size_t>(b.angle_index) * mask.radial_bins + b.radial_index] = 1;
    }
  }
  return mask;
}

}  // namespace

std::pair<DetectorMask, BinMask> build_masks(const ScannerGeometry& geom, const GapSpec& spec) {
  geom.validate();
  DetectorMask mask;
  mask.angular_gaps = normalize_gaps(spec.gaps);
  std::set<int> rings;
  for (int r : spec.inactive_rings) {
    if (r < 0 || r >= geom.num_rings) throw ConfigError("mask: inactive ring index out of range");
    rings.insert(r);
  }
  mask.inactive_rings.assign(rings.begin(), rings.end());
  mask.num_rings = geom.num_rings;
  mask.crystals_per_ring = geom.crystals_per_ring;
  mask.crystal_active.assign(static_cast<size_t>(geom.num_rings) * geom.crystals_per_ring, 1);

  // Angular pattern shared by all rings; dead rings cleared wholesale.
  std::vector<uint8_t> ring_pattern(geom.crystals_per_ring, 1);
  for (int i = 0; i < geom.crystals_per_ring; ++i) {
    const double angle = 360.0 * i / geom.crystals_per_ring;
    if (in_gaps(mask.angular_gaps, angle)) ring_pattern[i] = 0;
  }
  for (int r = 0; r < geom.num_rings; ++r) {
    const bool ring_dead = rings.count(r) != 0;
    for (int i = 0; i < geom.crystals_per_ring; ++i) {
      mask.crystal_active[static_cast<size_t>(r) * geom.crystals_per_ring + i] =
          ring_dead ? 0 : ring_pattern[i];
    }
  }
  return {std::move(mask), bin_mask_from_pattern(geom, ring_pattern)};
}

BinMask complete_bin_mask(const ScannerGeometry& geom) {
  geom.validate();
  std::vector<uint8_t> all_active(geom.crystals_per_ring, 1);
  return bin_mask_from_pattern(geom, all_active);
}

}  // namespace ringpet
