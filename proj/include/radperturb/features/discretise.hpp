#pragma once

#include <span>
#include <string>
#include <vector>

#include "radperturb/volume.hpp"

namespace radperturb::features {

/// Grey-level discretisation: fixed bin number over the ROI intensity range,
/// or fixed bin size anchored at the lower edge of the re-segmentation range.
struct DiscretisationSpec {
  enum class Method { fixed_bin_number, fixed_bin_size };

  Method method = Method::fixed_bin_number;
  int bins = 32;           // fixed_bin_number
  double bin_width = 6.0;  // fixed_bin_size, Hounsfield units
  double anchor = 0.0;     // fixed_bin_size lower edge

  static DiscretisationSpec fbn(int bins);
  static DiscretisationSpec fbs(double width, double anchor);

  /// "fbn32" / "fbs6" tag used inside feature identifiers.
  std::string tag() const;
};

/// Levels for a plain intensity list; levels are 1-based, 0 is reserved for
/// out-of-ROI voxels in the grid form.
struct DiscretisedValues {
  std::vector<int> levels;
  int n_levels = 0;
};

DiscretisedValues discretise_values(std::span<const double> intensities,
                                    const DiscretisationSpec& spec);

/// Grid-form discretisation of the intensity-mask voxels; level 0 marks
/// voxels outside the intensity mask.
struct DiscretisedRoi {
  Grid grid;
  std::vector<int> levels;
  int n_levels = 0;

  int at(int x, int y, int z) const { return levels[grid.linear(x, y, z)]; }
  std::size_t roi_voxel_count() const;
};

DiscretisedRoi discretise(const Volume& volume, const RoiMask& intensity_mask,
                          const DiscretisationSpec& spec);

}  // namespace radperturb::features
