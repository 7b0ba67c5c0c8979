#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace radperturb {

/// On-disk scalar types supported by the MetaImage subset.
enum class ElementType { Int8, Int16, Int32, Float32, Float64 };

std::size_t element_size(ElementType type);
const char* element_type_name(ElementType type);

/// Axis-aligned voxel lattice. world = origin + index * spacing, with the
/// x index varying fastest in the linear buffer.
struct Grid {
  std::array<int, 3> dims{1, 1, 1};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  std::array<double, 3> origin{0.0, 0.0, 0.0};

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }

  std::size_t linear(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(y) +
                static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(z));
  }

  bool contains(int x, int y, int z) const {
    return x >= 0 && x < dims[0] && y >= 0 && y < dims[1] && z >= 0 &&
           z < dims[2];
  }

  std::array<double, 3> world(int x, int y, int z) const {
    return {origin[0] + x * spacing[0], origin[1] + y * spacing[1],
            origin[2] + z * spacing[2]};
  }

  /// Centre of the voxel-centre bounding box along one axis.
  double centre(int axis) const {
    return origin[axis] + 0.5 * (dims[axis] - 1) * spacing[axis];
  }

  bool same_geometry(const Grid& other) const {
    return dims == other.dims && spacing == other.spacing &&
           origin == other.origin;
  }

  bool isotropic() const {
    return spacing[0] == spacing[1] && spacing[1] == spacing[2];
  }

  void validate() const;  // throws SpecInvalid on bad dims/spacing
};

/// 3-D scalar image. Intensities are kept as 64-bit reals throughout the
/// pipeline; integer Hounsfield semantics are restored by explicit rounding.
struct Volume {
  Grid grid;
  std::vector<double> values;
  ElementType stored_type = ElementType::Int16;

  Volume() = default;
  explicit Volume(const Grid& g, double fill = 0.0);

  double& at(int x, int y, int z) { return values[grid.linear(x, y, z)]; }
  double at(int x, int y, int z) const { return values[grid.linear(x, y, z)]; }
};

/// Region-of-interest occupancy grid aligned to a Volume. Values live in
/// [0, 1]; interpolation produces fractional occupancy, thresholding
/// binarises it.
struct RoiMask {
  Grid grid;
  std::vector<double> occupancy;

  RoiMask() = default;
  explicit RoiMask(const Grid& g, double fill = 0.0);

  double& at(int x, int y, int z) { return occupancy[grid.linear(x, y, z)]; }
  double at(int x, int y, int z) const {
    return occupancy[grid.linear(x, y, z)];
  }

  bool is_binary() const;
  bool empty() const;  // no voxel with occupancy > 0
};

/// Morphological mask plus the re-segmented intensity mask derived from it.
/// Invariant: intensity is a voxel-wise subset of morphological.
struct RoiPair {
  RoiMask morphological;
  RoiMask intensity;
};

struct CropResult {
  Volume volume;
  RoiMask mask;
};

/// Restrict both grids to the mask bounding box expanded by `margin_mm`
/// (rounded up to whole voxels per axis) and clipped to the original extent.
/// World coordinates of retained voxels are unchanged.
CropResult crop_to_roi(const Volume& volume, const RoiMask& mask,
                       double margin_mm);

/// Number of occupancy-1 voxels. Requires a binarised mask.
std::int64_t count_voxels(const RoiMask& mask);

/// Reinterpret a loaded volume as an occupancy mask, validating range.
RoiMask mask_from_volume(const Volume& volume);

/// Inclusive index bounding box of occupancy > 0.
struct IndexBox {
  std::array<int, 3> lo;
  std::array<int, 3> hi;
};
IndexBox mask_bounding_box(const RoiMask& mask);  // throws EmptyMask

}  // namespace radperturb
