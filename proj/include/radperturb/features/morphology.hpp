#pragma once

#include <array>
#include <vector>

#include "radperturb/volume.hpp"

namespace radperturb::features {

/// Triangle soup in world millimetres, consistently wound.
struct TriMesh {
  std::vector<std::array<double, 3>> vertices;  // 3 consecutive = 1 triangle

  std::size_t triangle_count() const { return vertices.size() / 3; }
};

/// Marching cubes over the binary occupancy field at iso-level 0.5. The mask
/// is conceptually padded with background so the surface is closed; binary
/// input places vertices at edge midpoints.
TriMesh marching_cubes(const RoiMask& mask);

/// Divergence-theorem volume of a closed mesh, mm^3.
double mesh_volume(const TriMesh& mesh);

/// Summed triangle areas, mm^2.
double mesh_surface_area(const TriMesh& mesh);

struct MorphologyFeatures {
  double volume_voxel = 0.0;   // voxel count * voxel volume
  double volume_mesh = 0.0;
  double surface_area = 0.0;
  double sphericity = 0.0;     // pi^(1/3) (6V)^(2/3) / A
  double compactness1 = 0.0;   // V / (sqrt(pi) A^(3/2))
};

MorphologyFeatures morphology_features(const RoiMask& morphological_mask);

}  // namespace radperturb::features
