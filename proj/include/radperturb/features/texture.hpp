#pragma once

#include <array>
#include <vector>

#include "radperturb/features/discretise.hpp"

namespace radperturb::features {

/// The 13 unique 3-D directions at Chebyshev distance 1 (one of each
/// antipodal pair), in pinned order.
const std::array<std::array<int, 3>, 13>& texture_directions();

// ---------------------------------------------------------------------------
// Grey level co-occurrence matrix

/// Symmetric co-occurrence counts for one direction; empty when the
/// direction has no in-ROI voxel pairs. counts[i][j] over levels 1..Ng maps
/// to index i-1, j-1.
std::vector<std::vector<double>> glcm_matrix(const DiscretisedRoi& roi,
                                             const std::array<int, 3>& dir);

struct GlcmFeatures {
  double joint_max = 0.0;
  double joint_entropy = 0.0;
  double angular_second_moment = 0.0;
  double contrast = 0.0;
  double dissimilarity = 0.0;
  double inverse_difference = 0.0;
  double inverse_difference_moment = 0.0;
  double correlation = 0.0;  // NaN when every direction is degenerate
};

/// Features per direction, averaged over directions with at least one pair.
GlcmFeatures glcm_features(const DiscretisedRoi& roi);

// ---------------------------------------------------------------------------
// Grey level run length matrix

/// counts[level-1][length-1] of maximal equal-level runs along `dir`;
/// out-of-ROI voxels break runs.
std::vector<std::vector<double>> glrlm_matrix(const DiscretisedRoi& roi,
                                              const std::array<int, 3>& dir);

struct GlrlmFeatures {
  double short_run_emphasis = 0.0;
  double long_run_emphasis = 0.0;
  double low_grey_level_run_emphasis = 0.0;
  double high_grey_level_run_emphasis = 0.0;
  double grey_level_non_uniformity = 0.0;
  double run_length_non_uniformity = 0.0;
  double run_percentage = 0.0;
};

GlrlmFeatures glrlm_features(const DiscretisedRoi& roi);

// ---------------------------------------------------------------------------
// Grey level size / distance zone matrices (zones are 26-connected
// equal-level components of the intensity mask)

struct Zone {
  int level = 0;
  std::int64_t size = 0;
  int distance = 0;  // min city-block steps to outside the morphological mask
};

std::vector<Zone> find_zones(const DiscretisedRoi& roi,
                             const RoiMask& morphological_mask);

struct GlszmFeatures {
  double small_zone_emphasis = 0.0;
  double large_zone_emphasis = 0.0;
  double grey_level_non_uniformity = 0.0;
  double zone_size_non_uniformity = 0.0;
  double zone_percentage = 0.0;
};

GlszmFeatures glszm_features(const DiscretisedRoi& roi,
                             const RoiMask& morphological_mask);

struct GldzmFeatures {
  double small_distance_emphasis = 0.0;
  double large_distance_emphasis = 0.0;
  double grey_level_non_uniformity = 0.0;
  double zone_distance_non_uniformity = 0.0;
};

GldzmFeatures gldzm_features(const DiscretisedRoi& roi,
                             const RoiMask& morphological_mask);

// ---------------------------------------------------------------------------
// Neighbourhood grey tone difference matrix (26-neighbourhood restricted to
// in-ROI voxels)

struct NgtdmFeatures {
  double coarseness = 0.0;  // capped at 1e6 for the 1/0 singularity
  double contrast = 0.0;
  double busyness = 0.0;
  double complexity = 0.0;
  double strength = 0.0;
  bool valid = true;  // false when no voxel has an in-ROI neighbour
};

inline constexpr double kCoarsenessCap = 1e6;

NgtdmFeatures ngtdm_features(const DiscretisedRoi& roi);

// ---------------------------------------------------------------------------
// Neighbouring grey level dependence matrix (alpha = 0, delta = 1)

/// counts[level-1][j] where column j holds dependence count j (number of
/// 26-neighbours with an equal level).
std::vector<std::vector<double>> ngldm_matrix(const DiscretisedRoi& roi);

struct NgldmFeatures {
  double low_dependence_emphasis = 0.0;
  double high_dependence_emphasis = 0.0;
  double dependence_count_non_uniformity = 0.0;
  double dependence_count_entropy = 0.0;
};

NgldmFeatures ngldm_features(const DiscretisedRoi& roi);

}  // namespace radperturb::features
