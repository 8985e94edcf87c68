#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace ringpet {

/// Cylindrical scanner layout. Crystals sit at uniform angular pitch
/// 2*pi/D on each of R rings; the sinogram grid derived from it is
/// D angle bins by 2D+1 radial bins per ring-pair slice.
struct ScannerGeometry {
  double radius_mm = 253.71;
  int crystals_per_ring = 182;  // D, must be even
  int num_rings = 42;           // R
  double crystal_axial_spacing_mm = 5.37;

  int angle_bins() const { return crystals_per_ring; }
  int radial_bins() const { return 2 * crystals_per_ring + 1; }
  int num_slices() const { return num_rings * num_rings; }

  /// Throws ConfigError when the invariants (D even, D >= 4, R >= 1,
  /// radius > 0) do not hold.
  void validate() const;
};

/// Half-open angular interval [start_deg, end_deg) in degrees, both
/// endpoints in [0, 360].
struct AngularInterval {
  double start_deg = 0.0;
  double end_deg = 0.0;
};

/// Requested incompleteness: angular sectors to disable plus whole rings.
struct GapSpec {
  std::vector<AngularInterval> gaps;
  std::vector<int> inactive_rings;
};

/// Per-crystal activity flags derived from a GapSpec.
struct DetectorMask {
  std::vector<AngularInterval> angular_gaps;  // normalized, sorted
  std::vector<int> inactive_rings;            // sorted, unique
  int num_rings = 0;
  int crystals_per_ring = 0;
  std::vector<uint8_t> crystal_active;  // ring-major, R x D

  bool active(int ring, int crystal) const {
    return crystal_active[static_cast<size_t>(ring) * crystals_per_ring + crystal] != 0;
  }
  /// Fraction of inactive crystals over the whole scanner.
  double inactive_fraction() const;
};

struct LorBin {
  int angle_index = 0;   // a in [0, D)
  int radial_index = 0;  // s in [0, 2D+1)
};

/// Transaxial sinogram-bin validity grid (shared by every ring pair whose
/// two rings are active).
struct BinMask {
  int angle_bins = 0;
  int radial_bins = 0;
  std::vector<uint8_t> valid;  // angle-major

  bool at(int a, int s) const { return valid[static_cast<size_t>(a) * radial_bins + s] != 0; }
  size_t valid_count() const;
};

/// Center of crystal `i` on ring `ring`: (rho cos(2 pi i / D),
/// rho sin(2 pi i / D), ring * axial_spacing).
std::array<double, 3> crystal_position(const ScannerGeometry& geom, int ring, int i);

/// Map the LOR joining transaxial crystals i and j to its sinogram bin.
/// The normal angle phi in [0, pi) gives a = floor(phi / pi * D) and the
/// signed perpendicular distance s from the axis gives
/// s_bin = round(s / rho * D) + D. Symmetric under swapping i and j.
LorBin lor_to_bin(const ScannerGeometry& geom, int i, int j);

/// Derive the crystal mask and the transaxial bin validity mask. A crystal
/// is inactive iff its center angle falls inside a gap or its ring is
/// listed; a bin is valid iff at least one pair of active crystals maps to
/// it.
std::pair<DetectorMask, BinMask> build_masks(const ScannerGeometry& geom, const GapSpec& spec);

/// Bin validity of the complete scanner (no gaps). The outermost radial
/// bins are geometrically unreachable even with every crystal active.
BinMask complete_bin_mask(const ScannerGeometry& geom);

}  // namespace ringpet
