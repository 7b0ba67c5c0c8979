#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace radperturb::features {

struct AutocorrelationFeatures {
  double moran_i = 0.0;
  double geary_c = 0.0;
  int repetitions = 0;
};

inline constexpr std::size_t kAutocorrelationSampleSize = 100;
inline constexpr double kAutocorrelationSemTarget = 0.002;
inline constexpr int kAutocorrelationMinRepetitions = 10;
inline constexpr int kAutocorrelationMaxRepetitions = 1000;

/// Moran's I and Geary's C with inverse-Euclidean-distance weights over the
/// ROI voxel positions (mm). ROIs larger than the sample size are estimated
/// on repeated seeded 100-voxel subsamples until the standard error of the
/// running means drops below the target; smaller ROIs are computed exactly.
/// Inputs are canonicalised by position so voxel enumeration order cannot
/// change the result.
AutocorrelationFeatures moran_geary(
    std::span<const double> intensities,
    std::span<const std::array<double, 3>> positions, std::uint64_t seed);

}  // namespace radperturb::features
