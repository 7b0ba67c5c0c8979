#include "radperturb/volume.hpp"

#include <cmath>
#include <limits>

#include "radperturb/errors.hpp"

namespace radperturb {

std::size_t element_size(ElementType type) {
  switch (type) {
    case ElementType::Int8: return 1;
    case ElementType::Int16: return 2;
    case ElementType::Int32: return 4;
    case ElementType::Float32: return 4;
    case ElementType::Float64: return 8;
  }
  return 0;
}

const char* element_type_name(ElementType type) {
  switch (type) {
    case ElementType::Int8: return "MET_CHAR";
    case ElementType::Int16: return "MET_SHORT";
    case ElementType::Int32: return "MET_INT";
    case ElementType::Float32: return "MET_FLOAT";
    case ElementType::Float64: return "MET_DOUBLE";
  }
  return "MET_SHORT";
}

void Grid::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 1) fail(errc::spec_invalid, "grid dims must be >= 1");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      fail(errc::spec_invalid, "grid spacing must be > 0");
    if (!std::isfinite(origin[a]))
      fail(errc::spec_invalid, "grid origin must be finite");
  }
}

Volume::Volume(const Grid& g, double fill) : grid(g) {
  grid.validate();
  values.assign(grid.voxel_count(), fill);
}

RoiMask::RoiMask(const Grid& g, double fill) : grid(g) {
  grid.validate();
  occupancy.assign(grid.voxel_count(), fill);
}

bool RoiMask::is_binary() const {
  for (double v : occupancy)
    if (v != 0.0 && v != 1.0) return false;
  return true;
}

bool RoiMask::empty() const {
  for (double v : occupancy)
    if (v > 0.0) return false;
  return true;
}

IndexBox mask_bounding_box(const RoiMask& mask) {
  IndexBox box{{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
                std::numeric_limits<int>::max()},
               {-1, -1, -1}};
  const auto& d = mask.grid.dims;
  for (int z = 0; z < d[2]; ++z)
    for (int y = 0; y < d[1]; ++y)
      for (int x = 0; x < d[0]; ++x) {
        if (mask.at(x, y, z) <= 0.0) continue;
        box.lo[0] = std::min(box.lo[0], x);
        box.lo[1] = std::min(box.lo[1], y);
        box.lo[2] = std::min(box.lo[2], z);
        box.hi[0] = std::max(box.hi[0], x);
        box.hi[1] = std::max(box.hi[1], y);
        box.hi[2] = std::max(box.hi[2], z);
      }
  if (box.hi[0] < 0) fail(errc::empty_mask, "mask has no positive occupancy");
  return box;
}

CropResult crop_to_roi(const Volume& volume, const RoiMask& mask,
                       double margin_mm) {
  if (!volume.grid.same_geometry(mask.grid))
    fail(errc::geometry_mismatch, "volume and mask grids differ");
  const IndexBox box = mask_bounding_box(mask);

  std::array<int, 3> lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    const int pad =
        static_cast<int>(std::ceil(margin_mm / volume.grid.spacing[a]));
    lo[a] = std::max(0, box.lo[a] - pad);
    hi[a] = std::min(volume.grid.dims[a] - 1, box.hi[a] + pad);
  }

  Grid out = volume.grid;
  for (int a = 0; a < 3; ++a) {
    out.dims[a] = hi[a] - lo[a] + 1;
    out.origin[a] = volume.grid.origin[a] + lo[a] * volume.grid.spacing[a];
  }

  CropResult result{Volume(out), RoiMask(out)};
  result.volume.stored_type = volume.stored_type;
  for (int z = 0; z < out.dims[2]; ++z)
    for (int y = 0; y < out.dims[1]; ++y)
      for (int x = 0; x < out.dims[0]; ++x) {
        result.volume.at(x, y, z) =
            volume.at(x + lo[0], y + lo[1], z + lo[2]);
        result.mask.at(x, y, z) = mask.at(x + lo[0], y + lo[1], z + lo[2]);
      }
  return result;
}

std::int64_t count_voxels(const RoiMask& mask) {
  std::int64_t count = 0;
  for (double v : mask.occupancy) {
    if (v == 1.0)
      ++count;
    else if (v != 0.0)
      fail(errc::not_binarised, "mask holds fractional occupancy");
  }
  return count;
}

RoiMask mask_from_volume(const Volume& volume) {
  RoiMask mask(volume.grid);
  for (std::size_t i = 0; i < volume.values.size(); ++i) {
    const double v = volume.values[i];
    if (v < 0.0 || v > 1.0)
      fail(errc::spec_invalid, "mask occupancy outside [0, 1]");
    mask.occupancy[i] = v;
  }
  return mask;
}

}  // namespace radperturb
