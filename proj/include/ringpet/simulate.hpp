#pragma once

#include <cstdint>
#include <vector>

#include "ringpet/geometry.hpp"
#include "ringpet/phantom.hpp"
#include "ringpet/sinogram.hpp"

namespace ringpet {

/// Per-crystal sensitivity factors, Normal(1, spread) truncated at 0.5.
struct EfficiencyMap {
  int num_rings = 0;
  int crystals_per_ring = 0;
  std::vector<double> factors;  // ring-major

  double at(int ring, int crystal) const {
    return factors[static_cast<size_t>(ring) * crystals_per_ring + crystal];
  }
  static EfficiencyMap uniform(const ScannerGeometry& geom);
};

EfficiencyMap sample_efficiencies(const ScannerGeometry& geom, uint64_t seed, double spread = 0.10);

struct ListmodeEvent {
  uint16_t ring_a = 0;
  uint16_t crystal_a = 0;
  uint16_t ring_b = 0;
  uint16_t crystal_b = 0;
};

/// Transaxial crystal pairs (i < j) enumerated in a fixed order.
inline size_t pair_count(int crystals_per_ring) {
  return static_cast<size_t>(crystals_per_ring) * (crystals_per_ring - 1) / 2;
}
size_t pair_index(int i, int j, int crystals_per_ring);
std::pair<int, int> pair_from_index(size_t k, int crystals_per_ring);

/// Expected coincidence rate per transaxial crystal pair of one ring-pair
/// slice: eps_i * eps_j * exp(-int mu) * int activity, line integrals taken
/// between the two crystal centers. `background` adds a uniform term per
/// pair (stand-in for scatter; default off).
struct PairRates {
  int crystals_per_ring = 0;
  int ring_a = 0;
  int ring_b = 0;
  std::vector<double> rate;  // pair-indexed

  double total() const;
};

PairRates expected_pair_rates(const ScannerGeometry& geom, const VoxelImage& activity,
                              const VoxelImage& mu, const EfficiencyMap& eff, int ring_a,
                              int ring_b, double background = 0.0);

/// Poisson events for one slice. Counts are drawn for every pair from a
/// stream keyed by (seed, pair index); pairs touching an inactive crystal
/// emit nothing, so a masked run reproduces the complete run's draws
/// exactly on the surviving pairs.
std::vector<ListmodeEvent> generate_listmode(const ScannerGeometry& geom, const PairRates& rates,
                                             const DetectorMask* mask, double n_scale,
                                             uint64_t seed);

/// Bin a listmode stream into R*R slices; each event lands in exactly one
/// bin of slice ring_a * R + ring_b.
SinogramVolume bin_events(const ScannerGeometry& geom, const std::vector<ListmodeEvent>& events);

/// Same draws as generate_listmode but binned directly (no event list).
/// `validity` stamps the slice's valid mask; invalid bins are forced to 0.
Sinogram simulate_slice(const ScannerGeometry& geom, const PairRates& rates,
                        const DetectorMask* mask, const BinMask& validity, double n_scale,
                        uint64_t seed);

/// Axially blended activity/attenuation plane seen by ring pair (ra, rb):
/// linear interpolation of the stacked planes at (ra + rb) / 2.
VoxelImage midplane(const std::vector<VoxelImage>& planes, int ring_a, int ring_b);

}  // namespace ringpet
