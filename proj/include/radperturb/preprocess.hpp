#pragma once

#include <array>

#include "radperturb/volume.hpp"

namespace radperturb {

/// Resampling request: isotropic target spacing, anti-alias smoothing
/// parameter beta in (0, 1], and a sub-voxel grid shift per axis expressed
/// as a fraction of the target spacing.
struct InterpolationSpec {
  double target_spacing = 1.0;
  double beta = 0.93;
  std::array<double, 3> shift{0.0, 0.0, 0.0};
};

/// Re-segmentation window in Hounsfield units plus the outlier cut
/// expressed in standard deviations of the range-filtered ROI.
struct ResegmentationSpec {
  double range_low = -300.0;
  double range_high = 200.0;
  double outlier_sigma = 3.0;
};

/// Pre-interpolation Gaussian width, in voxel units of the input grid:
/// sigma^2 = -8 (d_out / d_in)^2 ln(beta). beta = 1 disables smoothing.
double gaussian_sigma(double beta, double spacing_in, double spacing_out);

/// Separable Gaussian convolution with per-axis sigma in voxel units.
/// Kernels are truncated at ceil(4 sigma), renormalised to unit sum, and
/// applied with half-sample reflective boundaries. sigma = 0 skips an axis.
Volume gaussian_prefilter(const Volume& volume,
                          const std::array<double, 3>& sigma_voxels);

struct ResampleResult {
  Volume volume;
  RoiMask mask;
};

/// Resample image and mask to an isotropic grid, centre-aligned to the input
/// world bounding box and then shifted by shift * target_spacing per axis.
/// The image is prefiltered per axis (only when downsampling on that axis)
/// and sampled trilinearly with nearest-boundary extension; the mask is
/// sampled trilinearly without prefiltering, zero outside the input extent,
/// and left fractional.
ResampleResult resample(const Volume& volume, const RoiMask& mask,
                        const InterpolationSpec& spec);

/// Voxel-wise round-half-away-from-zero to integer Hounsfield units.
Volume round_hu(const Volume& volume);

/// Occupancy >= threshold maps to 1, else 0 (inclusive at the threshold).
RoiMask threshold_mask(const RoiMask& mask, double threshold = 0.5);

/// Build the intensity mask: keep morphological voxels with intensity inside
/// [range_low, range_high], then drop voxels deviating more than
/// outlier_sigma standard deviations from the mean of the range-filtered set.
/// The morphological mask is returned unchanged.
RoiPair resegment(const Volume& volume, const RoiMask& morphological,
                  const ResegmentationSpec& spec);

}  // namespace radperturb
