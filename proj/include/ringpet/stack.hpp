#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ringpet/sinogram.hpp"

namespace ringpet {

/// One training example: the slice stack [j-R, j-1, j, j+1, j+R] of the
/// masked volume and the matching complete slices. Out-of-range neighbor
/// indices fall back to j itself.
struct FiveChannelSample {
  int slice = 0;
  int volume_id = 0;
  int angle_bins = 0;
  int radial_bins = 0;
  std::array<int, 5> channel_slices{};
  std::vector<double> input;   // 5 x A x S, channel-major
  std::vector<double> target;  // 5 x A x S
  std::vector<uint8_t> valid;  // A x S validity of the central masked slice
};

/// Channel slice indices for slice j of a volume with num_slices slices
/// and ring count R.
std::array<int, 5> five_channel_indices(int j, int num_slices, int ring_count);

/// Stack the five input channels from `masked` and the matching targets
/// from `complete` for slice j.
FiveChannelSample assemble_five_channel(const SinogramVolume& masked,
                                        const SinogramVolume& complete, int j, int volume_id = 0);

struct FoldSplit {
  int num_folds = 0;
  uint64_t seed = 0;
  std::vector<std::vector<int>> folds;  // partition of the id set
};

/// Deterministic shuffled k-fold partition; fold sizes differ by at most
/// one (larger folds first).
FoldSplit kfold_split(const std::vector<int>& ids, int k, uint64_t seed);

}  // namespace ringpet
