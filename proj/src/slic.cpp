#include "radperturb/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "radperturb/errors.hpp"
#include "radperturb/rng.hpp"

namespace radperturb {
namespace {

constexpr int kNeighbours6[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                    {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};

struct Cluster {
  double intensity = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
};

// Squared intensity gradient used to nudge initial centres off edges.
double gradient_sq(const Volume& v, int x, int y, int z) {
  const Grid& g = v.grid;
  auto value = [&](int ix, int iy, int iz) {
    ix = std::clamp(ix, 0, g.dims[0] - 1);
    iy = std::clamp(iy, 0, g.dims[1] - 1);
    iz = std::clamp(iz, 0, g.dims[2] - 1);
    return v.at(ix, iy, iz);
  };
  const double dx = value(x + 1, y, z) - value(x - 1, y, z);
  const double dy = value(x, y + 1, z) - value(x, y - 1, z);
  const double dz = value(x, y, z + 1) - value(x, y, z - 1);
  return dx * dx + dy * dy + dz * dz;
}

// 6-connected components of a label map; returns per-voxel component id and
// fills sizes. Component ids are assigned in scan order, so the result is
// deterministic.
int connected_components(const Grid& g, const std::vector<int>& labels,
                         std::vector<int>& component,
                         std::vector<std::int64_t>& sizes) {
  component.assign(labels.size(), -1);
  sizes.clear();
  int n_components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (component[start] >= 0) continue;
    const int label = labels[start];
    const int id = n_components++;
    sizes.push_back(0);
    stack.assign(1, start);
    component[start] = id;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++sizes[id];
      const int z = static_cast<int>(i / (static_cast<std::size_t>(g.dims[0]) * g.dims[1]));
      const std::size_t rem = i % (static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
      const int y = static_cast<int>(rem / g.dims[0]);
      const int x = static_cast<int>(rem % g.dims[0]);
      for (const auto& o : kNeighbours6) {
        const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
        if (!g.contains(nx, ny, nz)) continue;
        const std::size_t j = g.linear(nx, ny, nz);
        if (component[j] >= 0 || labels[j] != label) continue;
        component[j] = id;
        stack.push_back(j);
      }
    }
  }
  return n_components;
}

void close_6(std::vector<char>& mask, const Grid& g) {
  auto dilate = [&g](const std::vector<char>& in, std::vector<char>& out) {
    out = in;
    for (int z = 0; z < g.dims[2]; ++z)
      for (int y = 0; y < g.dims[1]; ++y)
        for (int x = 0; x < g.dims[0]; ++x) {
          if (!in[g.linear(x, y, z)]) continue;
          for (const auto& o : kNeighbours6) {
            const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
            if (g.contains(nx, ny, nz)) out[g.linear(nx, ny, nz)] = 1;
          }
        }
  };
  auto erode = [&g](const std::vector<char>& in, std::vector<char>& out) {
    out = in;
    for (int z = 0; z < g.dims[2]; ++z)
      for (int y = 0; y < g.dims[1]; ++y)
        for (int x = 0; x < g.dims[0]; ++x) {
          const std::size_t i = g.linear(x, y, z);
          if (!in[i]) continue;
          for (const auto& o : kNeighbours6) {
            const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
            // Outside the grid counts as foreground in this erosion half, so
            // closing never removes voxels of the input set.
            if (!g.contains(nx, ny, nz)) continue;
            if (!in[g.linear(nx, ny, nz)]) {
              out[i] = 0;
              break;
            }
          }
        }
  };
  std::vector<char> tmp;
  dilate(mask, tmp);
  erode(tmp, mask);
}

}  // namespace

int slic_initial_cluster_count(std::size_t n_voxels, double voxel_volume_cm3) {
  return static_cast<int>(std::ceil(static_cast<double>(n_voxels) *
                                    voxel_volume_cm3 /
                                    kSupervoxelMeanVolumeCm3));
}

SupervoxelLabels slic_supervoxels(const Volume& volume,
                                  const ResegmentationSpec& reseg,
                                  double spacing_mm, std::uint64_t seed) {
  (void)seed;  // clustering is pinned deterministic
  const Grid& g = volume.grid;
  if (!g.isotropic() || g.spacing[0] != spacing_mm)
    fail(errc::not_isotropic, "supervoxels need the isotropic working grid");

  // Intensity normalisation: clamp to the re-segmentation range extended by
  // 10% on both sides, then map to [0, 1].
  const double width = reseg.range_high - reseg.range_low;
  const double lo = reseg.range_low - 0.1 * width;
  const double hi = reseg.range_high + 0.1 * width;
  Volume scaled = volume;
  for (double& v : scaled.values)
    v = (std::clamp(v, lo, hi) - lo) / (hi - lo);
  scaled = gaussian_prefilter(scaled, {1.0, 1.0, 1.0});

  const std::size_t n_voxels = g.voxel_count();
  const double voxel_volume_cm3 =
      (spacing_mm * spacing_mm * spacing_mm) / 1000.0;
  const int n_est = slic_initial_cluster_count(n_voxels, voxel_volume_cm3);

  // Regular lattice of initial centres, nudged to the lowest-gradient voxel
  // in a 3^3 neighbourhood.
  const double step =
      std::cbrt(static_cast<double>(n_voxels) / static_cast<double>(n_est));
  std::array<int, 3> lattice{};
  for (int a = 0; a < 3; ++a)
    lattice[a] = std::max(
        1, static_cast<int>(std::round(static_cast<double>(g.dims[a]) / step)));

  std::vector<Cluster> clusters;
  clusters.reserve(static_cast<std::size_t>(lattice[0]) * lattice[1] * lattice[2]);
  for (int cz = 0; cz < lattice[2]; ++cz)
    for (int cy = 0; cy < lattice[1]; ++cy)
      for (int cx = 0; cx < lattice[0]; ++cx) {
        const std::array<int, 3> cell{cx, cy, cz};
        std::array<int, 3> centre{};
        for (int a = 0; a < 3; ++a) {
          const double pos =
              (cell[a] + 0.5) * static_cast<double>(g.dims[a]) / lattice[a] - 0.5;
          centre[a] = std::clamp(static_cast<int>(std::round(pos)), 0,
                                 g.dims[a] - 1);
        }
        double best = std::numeric_limits<double>::infinity();
        std::array<int, 3> best_idx = centre;
        for (int dz = -1; dz <= 1; ++dz)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              const int x = centre[0] + dx, y = centre[1] + dy,
                        z = centre[2] + dz;
              if (!g.contains(x, y, z)) continue;
              const double grad = gradient_sq(scaled, x, y, z);
              if (grad < best) {
                best = grad;
                best_idx = {x, y, z};
              }
            }
        clusters.push_back({scaled.at(best_idx[0], best_idx[1], best_idx[2]),
                            static_cast<double>(best_idx[0]),
                            static_cast<double>(best_idx[1]),
                            static_cast<double>(best_idx[2])});
      }

  const double step_f =
      std::cbrt(static_cast<double>(n_voxels) / static_cast<double>(clusters.size()));
  const int window = std::max(1, static_cast<int>(std::ceil(step_f)));
  const double spatial_norm = 1.0 / (step_f * step_f);
  const double colour_norm = 1.0 / (kSlicCompactness * kSlicCompactness);

  std::vector<int> labels(n_voxels, -1);
  std::vector<double> best_dist(n_voxels);
  for (int iter = 0; iter < kSlicIterations; ++iter) {
    std::fill(best_dist.begin(), best_dist.end(),
              std::numeric_limits<double>::infinity());
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      const Cluster& cl = clusters[ci];
      const int x0 = std::max(0, static_cast<int>(std::floor(cl.x)) - window);
      const int x1 = std::min(g.dims[0] - 1,
                              static_cast<int>(std::ceil(cl.x)) + window);
      const int y0 = std::max(0, static_cast<int>(std::floor(cl.y)) - window);
      const int y1 = std::min(g.dims[1] - 1,
                              static_cast<int>(std::ceil(cl.y)) + window);
      const int z0 = std::max(0, static_cast<int>(std::floor(cl.z)) - window);
      const int z1 = std::min(g.dims[2] - 1,
                              static_cast<int>(std::ceil(cl.z)) + window);
      for (int z = z0; z <= z1; ++z)
        for (int y = y0; y <= y1; ++y)
          for (int x = x0; x <= x1; ++x) {
            const std::size_t i = g.linear(x, y, z);
            const double di = scaled.values[i] - cl.intensity;
            const double dx = x - cl.x, dy = y - cl.y, dz = z - cl.z;
            const double dist = di * di * colour_norm +
                                (dx * dx + dy * dy + dz * dz) * spatial_norm;
            if (dist < best_dist[i]) {
              best_dist[i] = dist;
              labels[i] = static_cast<int>(ci);
            }
          }
    }
    // Any voxel outside every search window joins the nearest centre.
    for (std::size_t i = 0; i < n_voxels; ++i) {
      if (labels[i] >= 0) continue;
      const int z = static_cast<int>(i / (static_cast<std::size_t>(g.dims[0]) * g.dims[1]));
      const std::size_t rem = i % (static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
      const int y = static_cast<int>(rem / g.dims[0]);
      const int x = static_cast<int>(rem % g.dims[0]);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        const double dx = x - clusters[ci].x, dy = y - clusters[ci].y,
                     dz = z - clusters[ci].z;
        const double d = dx * dx + dy * dy + dz * dz;
        if (d < best) {
          best = d;
          labels[i] = static_cast<int>(ci);
        }
      }
    }

    // Update step: move centres to the mean of their members.
    std::vector<Cluster> sums(clusters.size());
    std::vector<std::int64_t> counts(clusters.size(), 0);
    for (std::size_t i = 0; i < n_voxels; ++i) {
      const int z = static_cast<int>(i / (static_cast<std::size_t>(g.dims[0]) * g.dims[1]));
      const std::size_t rem = i % (static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
      const int y = static_cast<int>(rem / g.dims[0]);
      const int x = static_cast<int>(rem % g.dims[0]);
      Cluster& sum = sums[static_cast<std::size_t>(labels[i])];
      sum.intensity += scaled.values[i];
      sum.x += x;
      sum.y += y;
      sum.z += z;
      ++counts[static_cast<std::size_t>(labels[i])];
    }
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      if (counts[ci] == 0) continue;  // keep the stale centre
      const double inv = 1.0 / static_cast<double>(counts[ci]);
      clusters[ci] = {sums[ci].intensity * inv, sums[ci].x * inv,
                      sums[ci].y * inv, sums[ci].z * inv};
    }
  }

  // Connectivity enforcement: split assignments into 6-connected components
  // and merge fragments below the size floor into their largest neighbour.
  std::vector<int> component;
  std::vector<std::int64_t> sizes;
  int n_components = connected_components(g, labels, component, sizes);

  const std::int64_t min_voxels = static_cast<std::int64_t>(
      std::ceil(kSupervoxelMinVolumeCm3 / voxel_volume_cm3));
  while (true) {
    // Smallest undersized component, by (size, id).
    int victim = -1;
    for (int id = 0; id < n_components; ++id) {
      if (sizes[id] <= 0 || sizes[id] >= min_voxels) continue;
      if (victim < 0 || sizes[id] < sizes[victim]) victim = id;
    }
    if (victim < 0) break;

    // Largest 6-adjacent neighbour component (ties -> smallest id).
    int best_neighbour = -1;
    for (int z = 0; z < g.dims[2]; ++z)
      for (int y = 0; y < g.dims[1]; ++y)
        for (int x = 0; x < g.dims[0]; ++x) {
          if (component[g.linear(x, y, z)] != victim) continue;
          for (const auto& o : kNeighbours6) {
            const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
            if (!g.contains(nx, ny, nz)) continue;
            const int other = component[g.linear(nx, ny, nz)];
            if (other == victim) continue;
            if (best_neighbour < 0 || sizes[other] > sizes[best_neighbour] ||
                (sizes[other] == sizes[best_neighbour] &&
                 other < best_neighbour))
              best_neighbour = other;
          }
        }
    if (best_neighbour < 0) break;  // grid is a single undersized region

    for (std::size_t i = 0; i < component.size(); ++i)
      if (component[i] == victim) component[i] = best_neighbour;
    sizes[best_neighbour] += sizes[victim];
    sizes[victim] = 0;
  }

  // Compact ids.
  std::vector<int> remap(static_cast<std::size_t>(n_components), -1);
  int next_id = 0;
  for (std::size_t i = 0; i < component.size(); ++i) {
    int& id = remap[static_cast<std::size_t>(component[i])];
    if (id < 0) id = next_id++;
    component[i] = id;
  }

  SupervoxelLabels result;
  result.grid = g;
  result.labels = std::move(component);
  result.n_labels = next_id;
  return result;
}

std::vector<bool> select_supervoxels(const std::vector<double>& overlaps,
                                     std::uint64_t seed) {
  if (overlaps.empty()) return {};
  std::vector<bool> selected(overlaps.size(), false);

  std::size_t best = 0;
  for (std::size_t k = 1; k < overlaps.size(); ++k)
    if (overlaps[k] > overlaps[best]) best = k;
  selected[best] = true;  // the new mask must not remain empty

  const CounterRng rng(seed);
  for (std::size_t k = 0; k < overlaps.size(); ++k) {
    const double overlap = overlaps[k];
    if (overlap >= kOverlapAlwaysSelect) {
      selected[k] = true;
    } else if (overlap < kOverlapNeverSelect) {
      continue;
    } else if (rng.uniform(k) <= overlap) {
      selected[k] = true;
    }
  }
  return selected;
}

RoiMask randomize_contour(const Volume& volume, const RoiMask& mask,
                          const ResegmentationSpec& reseg,
                          std::uint64_t seed) {
  if (!volume.grid.same_geometry(mask.grid))
    fail(errc::geometry_mismatch, "volume and mask grids differ");
  if (!mask.is_binary()) fail(errc::not_binarised, "mask must be binarised");
  if (mask.empty()) fail(errc::empty_mask, "mask is empty");

  const CropResult cropped = crop_to_roi(volume, mask, kContourCropMarginMm);
  const Grid& cg = cropped.volume.grid;
  const SupervoxelLabels sv =
      slic_supervoxels(cropped.volume, reseg, cg.spacing[0], seed);

  std::vector<std::int64_t> sv_size(static_cast<std::size_t>(sv.n_labels), 0);
  std::vector<std::int64_t> sv_hits(static_cast<std::size_t>(sv.n_labels), 0);
  for (std::size_t i = 0; i < sv.labels.size(); ++i) {
    const auto label = static_cast<std::size_t>(sv.labels[i]);
    ++sv_size[label];
    if (cropped.mask.occupancy[i] == 1.0) ++sv_hits[label];
  }
  std::vector<double> overlaps(static_cast<std::size_t>(sv.n_labels), 0.0);
  for (std::size_t k = 0; k < overlaps.size(); ++k)
    overlaps[k] = static_cast<double>(sv_hits[k]) / static_cast<double>(sv_size[k]);

  const std::vector<bool> selected = select_supervoxels(overlaps, seed);

  std::vector<char> merged(sv.labels.size(), 0);
  for (std::size_t i = 0; i < sv.labels.size(); ++i)
    merged[i] = selected[static_cast<std::size_t>(sv.labels[i])] ? 1 : 0;
  close_6(merged, cg);

  // Paste the randomised region back into the original geometry.
  RoiMask result(mask.grid, 0.0);
  std::array<int, 3> offset{};
  for (int a = 0; a < 3; ++a)
    offset[a] = static_cast<int>(std::llround(
        (cg.origin[a] - mask.grid.origin[a]) / mask.grid.spacing[a]));
  for (int z = 0; z < cg.dims[2]; ++z)
    for (int y = 0; y < cg.dims[1]; ++y)
      for (int x = 0; x < cg.dims[0]; ++x)
        if (merged[cg.linear(x, y, z)])
          result.at(x + offset[0], y + offset[1], z + offset[2]) = 1.0;
  return result;
}

}  // namespace radperturb
