#include "ringpet/simulate.hpp"

#include <cmath>

#include "ringpet/errors.hpp"
#include "ringpet/raytrace.hpp"
#include "ringpet/rng.hpp"

namespace ringpet {

double Sinogram::sum() const {
  double s = 0.0;
  for (double c : counts) s += c;
  return s;
}

Sinogram Sinogram::zeros(int angle_bins, int radial_bins, int slice_id) {
  Sinogram s;
  s.angle_bins = angle_bins;
  s.radial_bins = radial_bins;
  s.slice_id = slice_id;
  s.counts.assign(static_cast<size_t>(angle_bins) * radial_bins, 0.0);
  s.valid.assign(s.counts.size(), 1);
  return s;
}

EfficiencyMap EfficiencyMap::uniform(const ScannerGeometry& geom) {
  EfficiencyMap m;
  m.num_rings = geom.num_rings;
  m.crystals_per_ring = geom.crystals_per_ring;
  m.factors.assign(static_cast<size_t>(geom.num_rings) * geom.crystals_per_ring, 1.0);
  return m;
}

EfficiencyMap sample_efficiencies(const ScannerGeometry& geom, uint64_t seed, double spread) {
  geom.validate();
  if (spread < 0.0) throw ConfigError("sample_efficiencies: spread must be >= 0");
  EfficiencyMap m = EfficiencyMap::uniform(geom);
  if (spread == 0.0) return m;
  Rng rng(seed, 0x45464643ULL);
  for (auto& f : m.factors) {
    double v = rng.normal(1.0, spread);
    while (v < 0.5) v = rng.normal(1.0, spread);  // truncate
    f = v;
  }
  return m;
}

size_t pair_index(int i, int j, int crystals_per_ring) {
  const size_t d = crystals_per_ring;
  return static_cast<size_t>(i) * d - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_from_index(size_t k, int crystals_per_ring) {
  const int d = crystals_per_ring;
  int i = 0;
  size_t row = static_cast<size_t>(d) - 1;
  while (k >= row) {
    k -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + static_cast<int>(k)};
}

double PairRates::total() const {
  double s = 0.0;
  for (double r : rate) s += r;
  return s;
}

PairRates expected_pair_rates(const ScannerGeometry& geom, const VoxelImage& activity,
                              const VoxelImage& mu, const EfficiencyMap& eff, int ring_a,
                              int ring_b, double background) {
  geom.validate();
  if (activity.width != mu.width || activity.height != mu.height)
    throw ShapeError("expected_pair_rates: activity and mu grids differ");
  for (double v : activity.values)
    if (!std::isfinite(v)) throw DataError("expected_pair_rates: non-finite activity");
  if (background < 0.0) throw ConfigError("expected_pair_rates: background must be >= 0");

  const int d = geom.crystals_per_ring;
  ImageGrid grid{activity.width, activity.height, activity.voxel_size_mm};

  std::vector<std::array<double, 2>> pos(d);
  for (int i = 0; i < d; ++i) {
    const auto p = crystal_position(geom, 0, i);
    pos[i] = {p[0], p[1]};
  }

  PairRates rates;
  rates.crystals_per_ring = d;
  rates.ring_a = ring_a;
  rates.ring_b = ring_b;
  rates.rate.resize(pair_count(d));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      double l_act = 0.0, l_mu = 0.0;
      trace_segment(grid, pos[i], pos[j], [&](size_t idx, double len) {
        l_act += activity.values[idx] * len;
        l_mu += mu.values[idx] * len;
      });
      const double e = eff.at(ring_a, i) * eff.at(ring_b, j);
      rates.rate[pair_index(i, j, d)] = e * std::exp(-l_mu) * l_act + background;
    }
  }
  return rates;
}

namespace {

inline uint64_t slice_stream(uint64_t seed, int ring_a, int ring_b) {
  return seed ^ (0x53494d55ULL + static_cast<uint64_t>(ring_a) * 0x1f123bb5ULL +
                 static_cast<uint64_t>(ring_b) * 0x5851f42dULL);
}

// One Poisson draw per pair, keyed by (seed, pair index) so order and
// masking cannot change any draw.
inline uint64_t pair_count_draw(uint64_t slice_seed, size_t k, double mean) {
  Rng rng(slice_seed, k);
  return rng.poisson(mean);
}

}  // namespace

std::vector<ListmodeEvent> generate_listmode(const ScannerGeometry& geom, const PairRates& rates,
                                             const DetectorMask* mask, double n_scale,
                                             uint64_t seed) {
  const int d = geom.crystals_per_ring;
  if (rates.crystals_per_ring != d) throw ShapeError("generate_listmode: rate table does not match geometry");
  for (double r : rates.rate)
    if (!std::isfinite(r) || r < 0.0) throw DataError("generate_listmode: rates must be finite and >= 0");

  const uint64_t sseed = slice_stream(seed, rates.ring_a, rates.ring_b);
  std::vector<ListmodeEvent> events;
  for (size_t k = 0; k < rates.rate.size(); ++k) {
    const uint64_t n = pair_count_draw(sseed, k, n_scale * rates.rate[k]);
    if (n == 0) continue;
    const auto [i, j] = pair_from_index(k, d);
    if (mask && (!mask->active(rates.ring_a, i) || !mask->active(rates.ring_b, j))) continue;
    ListmodeEvent ev;
    ev.ring_a = static_cast<uint16_t>(rates.ring_a);
    ev.crystal_a = static_cast<uint16_t>(i);
    ev.ring_b = static_cast<uint16_t>(rates.ring_b);
    ev.crystal_b = static_cast<uint16_t>(j);
    events.insert(events.end(), n, ev);
  }
  return events;
}

SinogramVolume bin_events(const ScannerGeometry& geom, const std::vector<ListmodeEvent>& events) {
  geom.validate();
  SinogramVolume vol;
  vol.num_rings = geom.num_rings;
  vol.angle_bins = geom.angle_bins();
  vol.radial_bins = geom.radial_bins();
  vol.slices.reserve(vol.num_slices());
  for (int s = 0; s < vol.num_slices(); ++s)
    vol.slices.push_back(Sinogram::zeros(vol.angle_bins, vol.radial_bins, s));

  for (const auto& ev : events) {
    if (ev.ring_a >= geom.num_rings || ev.ring_b >= geom.num_rings ||
        ev.crystal_a >= geom.crystals_per_ring || ev.crystal_b >= geom.crystals_per_ring)
      throw DataError("bin_events: event references an invalid crystal");
    const LorBin bin = lor_to_bin(geom, ev.crystal_a, ev.crystal_b);
    Sinogram& slice = vol.slices[vol.slice_index(ev.ring_a, ev.ring_b)];
    slice.at(bin.angle_index, bin.radial_index) += 1.0;
  }
  return vol;
}

Sinogram simulate_slice(const ScannerGeometry& geom, const PairRates& rates,
                        const DetectorMask* mask, const BinMask& validity, double n_scale,
                        uint64_t seed) {
  const int d = geom.crystals_per_ring;
  if (rates.crystals_per_ring != d) throw ShapeError("simulate_slice: rate table does not match geometry");
  Sinogram sino = Sinogram::zeros(geom.angle_bins(), geom.radial_bins(),
                                  rates.ring_a * geom.num_rings + rates.ring_b);
  sino.valid = validity.valid;

  const bool ring_dead =
      mask && (std::find(mask->inactive_rings.begin(), mask->inactive_rings.end(), rates.ring_a) !=
                   mask->inactive_rings.end() ||
               std::find(mask->inactive_rings.begin(), mask->inactive_rings.end(), rates.ring_b) !=
                   mask->inactive_rings.end());
  if (ring_dead) {
    std::fill(sino.valid.begin(), sino.valid.end(), 0);
    return sino;
  }

  const uint64_t sseed = slice_stream(seed, rates.ring_a, rates.ring_b);
  for (size_t k = 0; k < rates.rate.size(); ++k) {
    const uint64_t n = pair_count_draw(sseed, k, n_scale * rates.rate[k]);
    if (n == 0) continue;
    const auto [i, j] = pair_from_index(k, d);
    if (mask && (!mask->active(rates.ring_a, i) || !mask->active(rates.ring_b, j))) continue;
    const LorBin bin = lor_to_bin(geom, i, j);
    sino.at(bin.angle_index, bin.radial_index) += static_cast<double>(n);
  }
  return sino;
}

VoxelImage midplane(const std::vector<VoxelImage>& planes, int ring_a, int ring_b) {
  if (planes.empty()) throw DataError("midplane: empty plane stack");
  const int np = static_cast<int>(planes.size());
  if (ring_a < 0 || ring_a >= np || ring_b < 0 || ring_b >= np)
    throw BoundsError("midplane: ring index out of range");
  const double m = 0.5 * (ring_a + ring_b);
  const int i0 = static_cast<int>(std::floor(m));
  const int i1 = std::min(i0 + 1, np - 1);
  const double w = m - i0;
  if (w == 0.0) return planes[i0];
  VoxelImage out = planes[i0];
  for (size_t k = 0; k < out.values.size(); ++k)
    out.values[k] = (1.0 - w) * planes[i0].values[k] + w * planes[i1].values[k];
  return out;
}

}  // namespace ringpet
