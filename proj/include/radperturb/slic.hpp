#pragma once

#include <cstdint>
#include <vector>

#include "radperturb/preprocess.hpp"
#include "radperturb/volume.hpp"

namespace radperturb {

/// Supervoxel label map: labels in [0, n_labels) forming a total partition
/// of the grid.
struct SupervoxelLabels {
  Grid grid;
  std::vector<int> labels;
  int n_labels = 0;
};

/// Target mean supervoxel volume and the merge floor, in cm^3.
inline constexpr double kSupervoxelMeanVolumeCm3 = 0.5;
inline constexpr double kSupervoxelMinVolumeCm3 = 0.25;
inline constexpr double kSlicCompactness = 0.05;
inline constexpr int kSlicIterations = 10;

/// Initial cluster count so each supervoxel occupies ~0.5 cm^3 on average.
int slic_initial_cluster_count(std::size_t n_voxels, double voxel_volume_cm3);

/// SLIC clustering over (intensity, x, y, z). Intensities are clamped to the
/// re-segmentation range extended by 10% on both sides, mapped to [0, 1] and
/// pre-smoothed with a one-voxel Gaussian. Ten k-means iterations with
/// compactness 0.05; a post-pass merges connected fragments smaller than
/// 0.25 cm^3 into their largest neighbour. Deterministic regardless of seed
/// (the seed parameter is reserved; randomness lives in supervoxel
/// selection).
SupervoxelLabels slic_supervoxels(const Volume& volume,
                                  const ResegmentationSpec& reseg,
                                  double spacing_mm, std::uint64_t seed);

/// Selection law over per-supervoxel overlap fractions: the highest overlap
/// is always kept, overlap >= 0.90 is always kept, overlap < 0.20 never, and
/// anything between is kept with probability equal to the overlap (one
/// uniform draw per supervoxel keyed by (seed, label)).
std::vector<bool> select_supervoxels(const std::vector<double>& overlaps,
                                     std::uint64_t seed);

inline constexpr double kOverlapAlwaysSelect = 0.90;
inline constexpr double kOverlapNeverSelect = 0.20;

/// Supervoxel-based contour randomisation: crop to 25 mm around the ROI,
/// cluster the cropped image, select supervoxels by their overlap with the
/// mask, morphologically close the union, and paste the result back into the
/// full grid.
RoiMask randomize_contour(const Volume& volume, const RoiMask& mask,
                          const ResegmentationSpec& reseg, std::uint64_t seed);

inline constexpr double kContourCropMarginMm = 25.0;

}  // namespace radperturb
