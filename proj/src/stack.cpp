#include "ringpet/stack.hpp"

#include <algorithm>

#include "ringpet/errors.hpp"
#include "ringpet/rng.hpp"

namespace ringpet {

std::array<int, 5> five_channel_indices(int j, int num_slices, int ring_count) {
  if (j < 0 || j >= num_slices) throw BoundsError("five_channel_indices: slice index out of range");
  const auto guard = [&](int idx) { return (idx < 0 || idx >= num_slices) ? j : idx; };
  return {guard(j - ring_count), guard(j - 1), j, guard(j + 1), guard(j + ring_count)};
}

FiveChannelSample assemble_five_channel(const SinogramVolume& masked,
                                        const SinogramVolume& complete, int j, int volume_id) {
  if (masked.num_rings != complete.num_rings || masked.angle_bins != complete.angle_bins ||
      masked.radial_bins != complete.radial_bins)
    throw ShapeError("assemble_five_channel: masked and complete volumes differ");
  const int n = masked.num_slices();
  if (j < 0 || j >= n) throw BoundsError("assemble_five_channel: slice index out of range");

  FiveChannelSample sample;
  sample.slice = j;
  sample.volume_id = volume_id;
  sample.angle_bins = masked.angle_bins;
  sample.radial_bins = masked.radial_bins;
  sample.channel_slices = five_channel_indices(j, n, masked.num_rings);

  const size_t plane = static_cast<size_t>(masked.angle_bins) * masked.radial_bins;
  sample.input.resize(5 * plane);
  sample.target.resize(5 * plane);
  for (int c = 0; c < 5; ++c) {
    const Sinogram& in = masked.slices[sample.channel_slices[c]];
    const Sinogram& tg = complete.slices[sample.channel_slices[c]];
    std::copy(in.counts.begin(), in.counts.end(), sample.input.begin() + c * plane);
    std::copy(tg.counts.begin(), tg.counts.end(), sample.target.begin() + c * plane);
  }
  sample.valid = masked.slices[j].valid;
  return sample;
}

FoldSplit kfold_split(const std::vector<int>& ids, int k, uint64_t seed) {
  if (k < 1) throw ConfigError("kfold_split: k must be >= 1");
  if (static_cast<size_t>(k) > ids.size()) throw ConfigError("kfold_split: k exceeds number of ids");

  std::vector<int> shuffled = ids;
  Rng rng(seed, 0x4b464f4cULL);
  for (size_t i = shuffled.size(); i > 1; --i) {
    const size_t j = rng.below(i);
    std::swap(shuffled[i - 1], shuffled[j]);
  }

  FoldSplit split;
  split.num_folds = k;
  split.seed = seed;
  split.folds.resize(k);
  const size_t base = shuffled.size() / k;
  const size_t extra = shuffled.size() % k;
  size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const size_t sz = base + (static_cast<size_t>(f) < extra ? 1 : 0);
    split.folds[f].assign(shuffled.begin() + pos, shuffled.begin() + pos + sz);
    pos += sz;
  }
  return split;
}

}  // namespace ringpet
