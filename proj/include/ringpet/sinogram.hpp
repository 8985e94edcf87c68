#pragma once

#include <cstdint>
#include <vector>

namespace ringpet {

/// One ring-pair (michelogram) slice: D x (2D+1) grid of counts or
/// expectations plus per-bin validity.
struct Sinogram {
  int angle_bins = 0;
  int radial_bins = 0;
  int slice_id = 0;
  std::vector<double> counts;  // angle-major
  std::vector<uint8_t> valid;

  static Sinogram zeros(int angle_bins, int radial_bins, int slice_id = 0);

  size_t index(int a, int s) const { return static_cast<size_t>(a) * radial_bins + s; }
  double& at(int a, int s) { return counts[index(a, s)]; }
  double at(int a, int s) const { return counts[index(a, s)]; }
  bool is_valid(int a, int s) const { return valid[index(a, s)] != 0; }
  double sum() const;
  size_t size() const { return counts.size(); }
};

/// All R*R slices of one acquisition, indexed by ring_a * R + ring_b.
struct SinogramVolume {
  int num_rings = 0;
  int angle_bins = 0;
  int radial_bins = 0;
  std::vector<Sinogram> slices;

  int slice_index(int ring_a, int ring_b) const { return ring_a * num_rings + ring_b; }
  int num_slices() const { return num_rings * num_rings; }
};

}  // namespace ringpet
