#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "radperturb/volume.hpp"

namespace radperturb {

/// Synthetic test subject: an ellipsoidal ROI with smooth intensity texture
/// inside a noisy background volume. Purely a test substrate; no anatomical
/// realism intended.
struct PhantomSpec {
  std::array<int, 3> dims{48, 48, 48};
  std::array<double, 3> spacing{2.0, 2.0, 2.0};
  std::array<double, 3> semi_axes_mm{14.0, 12.0, 10.0};
  /// NaN components mean "grid centre".
  std::array<double, 3> centre_mm{
      std::numeric_limits<double>::quiet_NaN(),
      std::numeric_limits<double>::quiet_NaN(),
      std::numeric_limits<double>::quiet_NaN()};
  double base_hu = 40.0;
  double background_hu = -80.0;
  double modulation_amplitude_hu = 25.0;
  double correlation_length_mm = 6.0;
  double noise_sigma_hu = 8.0;
};

struct PhantomPair {
  Volume image;
  RoiMask mask;  // fractional on the ellipsoid boundary
};

/// Deterministic per (spec, seed). The mask holds the analytic ellipsoid
/// occupancy (8-point supersampling on boundary voxels); the image holds the
/// rounded base/background plus a smoothed seeded modulation field inside the
/// ROI and i.i.d. noise everywhere.
PhantomPair generate_phantom(const PhantomSpec& spec, std::uint64_t seed);

/// Controlled acquisition difference for the second image of a pair.
struct AcquisitionDelta {
  double noise_scale = 1.0;
  double smoothing_sigma_voxels = 0.0;
};

struct RetestPair {
  PhantomPair first;
  PhantomPair second;
};

/// Same underlying texture; the second image re-noised with
/// noise_sigma * noise_scale (same noise draws) and smoothed. A (1, 0) delta
/// reproduces the first image exactly.
RetestPair generate_retest_pair(const PhantomSpec& spec,
                                const AcquisitionDelta& delta,
                                std::uint64_t seed);

}  // namespace radperturb
