#pragma once

#include <cstdint>

#include "radperturb/volume.hpp"

namespace radperturb {

struct NoiseEstimate {
  double sigma_noise = 0.0;  // Hounsfield units, >= 0
};

/// Normalisation constant for the median-of-absolutes noise estimator.
/// kNoiseMedianConstant follows the published pipeline; the canonical
/// median-absolute-deviation constant is provided as an alternative.
inline constexpr double kNoiseMedianConstant = 0.6754;
inline constexpr double kCanonicalMadConstant = 0.6745;

/// Estimate the image noise level: a stationary coiflet-1 high-pass filter is
/// run along x then y in every axial slice (reflective boundaries), and the
/// noise sigma is the median of the absolute filtered values divided by the
/// normalisation constant. Run this on the original, unperturbed image.
NoiseEstimate estimate_noise_sigma(const Volume& volume,
                                   double median_constant = kNoiseMedianConstant);

/// Add i.i.d. Gaussian noise with the estimated sigma, keyed per voxel by
/// (seed, linear index), then round to integer Hounsfield units.
Volume add_noise(const Volume& volume, const NoiseEstimate& estimate,
                 std::uint64_t seed);

struct RotateResult {
  Volume volume;
  RoiMask mask;
};

/// In-plane rotation about each axial slice's world centre. The image is
/// sampled bilinearly and rounded to integer HU; the mask is sampled
/// bilinearly and left fractional (thresholding happens after
/// interpolation). theta = 0 returns bit-identical copies.
RotateResult rotate_inplane(const Volume& volume, const RoiMask& mask,
                            double theta_deg);

/// Grow (tau > 0) or shrink (tau < 0) a binary mask to exactly
/// floor(V0 * (1 + tau)) voxels: iterate 6-neighbour dilation/erosion until
/// overshoot, then add/remove the deficit by sampling the rim (symmetric
/// difference of the last two masks) without replacement.
RoiMask adapt_volume(const RoiMask& mask, double tau, std::uint64_t seed);

}  // namespace radperturb
