#include "radperturb/features/discretise.hpp"

#include <algorithm>
#include <cmath>

#include "radperturb/errors.hpp"
#include "radperturb/features/feature_vector.hpp"

namespace radperturb::features {

DiscretisationSpec DiscretisationSpec::fbn(int bins) {
  if (bins < 2) fail(errc::spec_invalid, "fixed bin number needs >= 2 bins");
  DiscretisationSpec spec;
  spec.method = Method::fixed_bin_number;
  spec.bins = bins;
  return spec;
}

DiscretisationSpec DiscretisationSpec::fbs(double width, double anchor) {
  if (!(width > 0.0)) fail(errc::spec_invalid, "bin width must be > 0");
  DiscretisationSpec spec;
  spec.method = Method::fixed_bin_size;
  spec.bin_width = width;
  spec.anchor = anchor;
  return spec;
}

std::string DiscretisationSpec::tag() const {
  if (method == Method::fixed_bin_number)
    return "fbn" + std::to_string(bins);
  return "fbs" + format_compact(bin_width);
}

DiscretisedValues discretise_values(std::span<const double> intensities,
                                    const DiscretisationSpec& spec) {
  if (intensities.empty()) fail(errc::empty_roi, "no intensities to discretise");

  DiscretisedValues out;
  out.levels.resize(intensities.size());

  if (spec.method == DiscretisationSpec::Method::fixed_bin_number) {
    const auto [lo_it, hi_it] =
        std::minmax_element(intensities.begin(), intensities.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
      std::fill(out.levels.begin(), out.levels.end(), 1);
      out.n_levels = 1;
      return out;
    }
    const double n = static_cast<double>(spec.bins);
    for (std::size_t i = 0; i < intensities.size(); ++i) {
      const int level = static_cast<int>(
                            std::floor(n * (intensities[i] - lo) / (hi - lo))) +
                        1;
      out.levels[i] = std::min(level, spec.bins);
    }
    out.n_levels = spec.bins;
    return out;
  }

  int max_level = 1;
  for (std::size_t i = 0; i < intensities.size(); ++i) {
    const int level =
        static_cast<int>(
            std::floor((intensities[i] - spec.anchor) / spec.bin_width)) +
        1;
    out.levels[i] = std::max(1, level);
    max_level = std::max(max_level, out.levels[i]);
  }
  out.n_levels = max_level;
  return out;
}

std::size_t DiscretisedRoi::roi_voxel_count() const {
  std::size_t n = 0;
  for (int level : levels) n += level > 0;
  return n;
}

DiscretisedRoi discretise(const Volume& volume, const RoiMask& intensity_mask,
                          const DiscretisationSpec& spec) {
  if (!volume.grid.same_geometry(intensity_mask.grid))
    fail(errc::geometry_mismatch, "volume and mask grids differ");

  std::vector<double> roi_values;
  std::vector<std::size_t> roi_indices;
  for (std::size_t i = 0; i < intensity_mask.occupancy.size(); ++i) {
    if (intensity_mask.occupancy[i] != 1.0) continue;
    roi_values.push_back(volume.values[i]);
    roi_indices.push_back(i);
  }
  const DiscretisedValues values = discretise_values(roi_values, spec);

  DiscretisedRoi out;
  out.grid = volume.grid;
  out.levels.assign(volume.values.size(), 0);
  for (std::size_t j = 0; j < roi_indices.size(); ++j)
    out.levels[roi_indices[j]] = values.levels[j];
  out.n_levels = values.n_levels;
  return out;
}

}  // namespace radperturb::features
