#include "radperturb/features/morphology.hpp"

#include <cmath>
#include <numbers>

#include "radperturb/errors.hpp"

namespace radperturb::features {
namespace {

#include "mc_tables.inc"

constexpr int kEdgeCorners[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                     {4, 5}, {5, 6}, {6, 7}, {7, 4},
                                     {0, 4}, {1, 5}, {2, 6}, {3, 7}};

constexpr int kCornerOffsets[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0},
                                      {0, 1, 0}, {0, 0, 1}, {1, 0, 1},
                                      {1, 1, 1}, {0, 1, 1}};

}  // namespace

TriMesh marching_cubes(const RoiMask& mask) {
  const Grid& g = mask.grid;
  // One layer of implicit zero padding on every side; cell corner indices
  // run over [-1, dims] per axis.
  auto sample = [&](int x, int y, int z) -> double {
    if (!g.contains(x, y, z)) return 0.0;
    return mask.at(x, y, z) != 0.0 ? 1.0 : 0.0;
  };

  constexpr double kIso = 0.5;
  TriMesh mesh;
  for (int z = -1; z < g.dims[2]; ++z)
    for (int y = -1; y < g.dims[1]; ++y)
      for (int x = -1; x < g.dims[0]; ++x) {
        double value[8];
        int cube_index = 0;
        for (int c = 0; c < 8; ++c) {
          value[c] = sample(x + kCornerOffsets[c][0], y + kCornerOffsets[c][1],
                            z + kCornerOffsets[c][2]);
          if (value[c] < kIso) cube_index |= 1 << c;
        }
        if (kEdgeTable[cube_index] == 0) continue;

        std::array<std::array<double, 3>, 12> edge_vertex;
        for (int e = 0; e < 12; ++e) {
          if (!(kEdgeTable[cube_index] & (1 << e))) continue;
          const int* a = kCornerOffsets[kEdgeCorners[e][0]];
          const int* b = kCornerOffsets[kEdgeCorners[e][1]];
          const double va = value[kEdgeCorners[e][0]];
          const double vb = value[kEdgeCorners[e][1]];
          const double t = (kIso - va) / (vb - va);  // 0.5 on binary input
          for (int axis = 0; axis < 3; ++axis) {
            const double ia = (axis == 0 ? x : axis == 1 ? y : z) +
                              (axis == 0 ? a[0] : axis == 1 ? a[1] : a[2]);
            const double ib = (axis == 0 ? x : axis == 1 ? y : z) +
                              (axis == 0 ? b[0] : axis == 1 ? b[1] : b[2]);
            const double index = ia + t * (ib - ia);
            edge_vertex[e][axis] = g.origin[axis] + index * g.spacing[axis];
          }
        }

        const int* tri = kTriTable[cube_index];
        for (int i = 0; tri[i] != -1; i += 3) {
          mesh.vertices.push_back(edge_vertex[tri[i]]);
          mesh.vertices.push_back(edge_vertex[tri[i + 1]]);
          mesh.vertices.push_back(edge_vertex[tri[i + 2]]);
        }
      }
  return mesh;
}

double mesh_volume(const TriMesh& mesh) {
  double six_volume = 0.0;
  for (std::size_t i = 0; i + 2 < mesh.vertices.size(); i += 3) {
    const auto& a = mesh.vertices[i];
    const auto& b = mesh.vertices[i + 1];
    const auto& c = mesh.vertices[i + 2];
    six_volume += a[0] * (b[1] * c[2] - b[2] * c[1]) -
                  a[1] * (b[0] * c[2] - b[2] * c[0]) +
                  a[2] * (b[0] * c[1] - b[1] * c[0]);
  }
  return std::abs(six_volume) / 6.0;
}

double mesh_surface_area(const TriMesh& mesh) {
  double area = 0.0;
  for (std::size_t i = 0; i + 2 < mesh.vertices.size(); i += 3) {
    const auto& a = mesh.vertices[i];
    const auto& b = mesh.vertices[i + 1];
    const auto& c = mesh.vertices[i + 2];
    const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
    const double cx = uy * vz - uz * vy;
    const double cy = uz * vx - ux * vz;
    const double cz = ux * vy - uy * vx;
    area += 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
  }
  return area;
}

MorphologyFeatures morphology_features(const RoiMask& morphological_mask) {
  if (!morphological_mask.is_binary())
    fail(errc::not_binarised, "morphological mask must be binarised");
  if (morphological_mask.empty())
    fail(errc::empty_mask, "morphological mask is empty");

  const Grid& g = morphological_mask.grid;
  std::int64_t count = 0;
  for (double v : morphological_mask.occupancy) count += v == 1.0;

  MorphologyFeatures out;
  out.volume_voxel =
      static_cast<double>(count) * g.spacing[0] * g.spacing[1] * g.spacing[2];

  const TriMesh mesh = marching_cubes(morphological_mask);
  if (mesh.triangle_count() < 4)
    fail(errc::degenerate_mesh, "mesh has fewer than 4 triangles");
  out.volume_mesh = mesh_volume(mesh);
  out.surface_area = mesh_surface_area(mesh);

  const double v = out.volume_mesh;
  const double a = out.surface_area;
  out.sphericity =
      std::pow(std::numbers::pi, 1.0 / 3.0) * std::pow(6.0 * v, 2.0 / 3.0) / a;
  out.compactness1 = v / (std::sqrt(std::numbers::pi) * std::pow(a, 1.5));
  return out;
}

}  // namespace radperturb::features
