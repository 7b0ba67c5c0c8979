#include "radperturb/features/texture.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "radperturb/errors.hpp"

namespace radperturb::features {
namespace {

void require_roi(const DiscretisedRoi& roi) {
  if (roi.roi_voxel_count() == 0) fail(errc::empty_roi, "no ROI voxels");
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

const std::array<std::array<int, 3>, 13>& texture_directions() {
  // One direction per antipodal pair: dz > 0, or dz == 0 && dy > 0, or
  // dz == dy == 0 && dx > 0.
  static const std::array<std::array<int, 3>, 13> dirs = {{{1, 0, 0},
                                                           {0, 1, 0},
                                                           {1, 1, 0},
                                                           {-1, 1, 0},
                                                           {0, 0, 1},
                                                           {1, 0, 1},
                                                           {-1, 0, 1},
                                                           {0, 1, 1},
                                                           {0, -1, 1},
                                                           {1, 1, 1},
                                                           {-1, 1, 1},
                                                           {1, -1, 1},
                                                           {-1, -1, 1}}};
  return dirs;
}

// ---------------------------------------------------------------------------
// GLCM

std::vector<std::vector<double>> glcm_matrix(const DiscretisedRoi& roi,
                                             const std::array<int, 3>& dir) {
  require_roi(roi);
  const Grid& g = roi.grid;
  const int ng = roi.n_levels;
  std::vector<std::vector<double>> counts(
      static_cast<std::size_t>(ng), std::vector<double>(static_cast<std::size_t>(ng), 0.0));
  bool any = false;
  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        const int a = roi.at(x, y, z);
        if (a == 0) continue;
        const int nx = x + dir[0], ny = y + dir[1], nz = z + dir[2];
        if (!g.contains(nx, ny, nz)) continue;
        const int b = roi.at(nx, ny, nz);
        if (b == 0) continue;
        counts[a - 1][b - 1] += 1.0;
        counts[b - 1][a - 1] += 1.0;  // symmetric by construction
        any = true;
      }
  if (!any) return {};
  return counts;
}

GlcmFeatures glcm_features(const DiscretisedRoi& roi) {
  require_roi(roi);
  GlcmFeatures mean;
  int used = 0;
  int correlation_used = 0;
  double correlation_sum = 0.0;

  for (const auto& dir : texture_directions()) {
    const auto counts = glcm_matrix(roi, dir);
    if (counts.empty()) continue;
    const int ng = static_cast<int>(counts.size());

    double total = 0.0;
    for (const auto& row : counts)
      for (double c : row) total += c;

    GlcmFeatures f;
    std::vector<double> marginal(static_cast<std::size_t>(ng), 0.0);
    for (int i = 0; i < ng; ++i)
      for (int j = 0; j < ng; ++j) {
        const double p = counts[i][j] / total;
        if (p == 0.0) continue;
        const int diff = i - j;
        f.joint_max = std::max(f.joint_max, p);
        f.joint_entropy -= p * std::log2(p);
        f.angular_second_moment += p * p;
        f.contrast += p * diff * diff;
        f.dissimilarity += p * std::abs(diff);
        f.inverse_difference += p / (1.0 + std::abs(diff));
        f.inverse_difference_moment += p / (1.0 + diff * diff);
        marginal[static_cast<std::size_t>(i)] += p;
      }

    // Correlation from the (equal) row/column marginals of the symmetric
    // matrix; degenerate when the marginal variance is zero.
    double mu = 0.0;
    for (int i = 0; i < ng; ++i) mu += (i + 1.0) * marginal[i];
    double var = 0.0;
    for (int i = 0; i < ng; ++i)
      var += marginal[i] * ((i + 1.0) - mu) * ((i + 1.0) - mu);
    if (var > 0.0) {
      double cross = 0.0;
      for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j)
          cross += (i + 1.0) * (j + 1.0) * counts[i][j] / total;
      correlation_sum += (cross - mu * mu) / var;
      ++correlation_used;
    }

    mean.joint_max += f.joint_max;
    mean.joint_entropy += f.joint_entropy;
    mean.angular_second_moment += f.angular_second_moment;
    mean.contrast += f.contrast;
    mean.dissimilarity += f.dissimilarity;
    mean.inverse_difference += f.inverse_difference;
    mean.inverse_difference_moment += f.inverse_difference_moment;
    ++used;
  }

  if (used == 0) fail(errc::empty_roi, "no direction has voxel pairs");
  const double inv = 1.0 / static_cast<double>(used);
  mean.joint_max *= inv;
  mean.joint_entropy *= inv;
  mean.angular_second_moment *= inv;
  mean.contrast *= inv;
  mean.dissimilarity *= inv;
  mean.inverse_difference *= inv;
  mean.inverse_difference_moment *= inv;
  mean.correlation = correlation_used > 0
                         ? correlation_sum / correlation_used
                         : nan();
  return mean;
}

// ---------------------------------------------------------------------------
// GLRLM

std::vector<std::vector<double>> glrlm_matrix(const DiscretisedRoi& roi,
                                              const std::array<int, 3>& dir) {
  require_roi(roi);
  const Grid& g = roi.grid;
  const int ng = roi.n_levels;
  const int max_run = std::max({g.dims[0], g.dims[1], g.dims[2]});
  std::vector<std::vector<double>> counts(
      static_cast<std::size_t>(ng),
      std::vector<double>(static_cast<std::size_t>(max_run), 0.0));

  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        // Line starts: the predecessor along dir lies outside the grid.
        if (g.contains(x - dir[0], y - dir[1], z - dir[2])) continue;
        int level = 0;
        int run = 0;
        int cx = x, cy = y, cz = z;
        while (g.contains(cx, cy, cz)) {
          const int v = roi.at(cx, cy, cz);
          if (v == level && v != 0) {
            ++run;
          } else {
            if (level != 0) counts[level - 1][run - 1] += 1.0;
            level = v;
            run = v != 0 ? 1 : 0;
          }
          cx += dir[0];
          cy += dir[1];
          cz += dir[2];
        }
        if (level != 0) counts[level - 1][run - 1] += 1.0;
      }
  return counts;
}

GlrlmFeatures glrlm_features(const DiscretisedRoi& roi) {
  require_roi(roi);
  const double n_voxels = static_cast<double>(roi.roi_voxel_count());

  GlrlmFeatures mean;
  int used = 0;
  for (const auto& dir : texture_directions()) {
    const auto counts = glrlm_matrix(roi, dir);
    double total = 0.0;
    for (const auto& row : counts)
      for (double c : row) total += c;
    if (total == 0.0) continue;

    GlrlmFeatures f;
    std::vector<double> by_length(counts.empty() ? 0 : counts[0].size(), 0.0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < counts[i].size(); ++j) {
        const double c = counts[i][j];
        if (c == 0.0) continue;
        const double level = static_cast<double>(i + 1);
        const double length = static_cast<double>(j + 1);
        f.short_run_emphasis += c / (length * length);
        f.long_run_emphasis += c * length * length;
        f.low_grey_level_run_emphasis += c / (level * level);
        f.high_grey_level_run_emphasis += c * level * level;
        row_sum += c;
        by_length[j] += c;
      }
      f.grey_level_non_uniformity += row_sum * row_sum;
    }
    for (double c : by_length) f.run_length_non_uniformity += c * c;

    f.short_run_emphasis /= total;
    f.long_run_emphasis /= total;
    f.low_grey_level_run_emphasis /= total;
    f.high_grey_level_run_emphasis /= total;
    f.grey_level_non_uniformity /= total;
    f.run_length_non_uniformity /= total;
    f.run_percentage = total / n_voxels;

    mean.short_run_emphasis += f.short_run_emphasis;
    mean.long_run_emphasis += f.long_run_emphasis;
    mean.low_grey_level_run_emphasis += f.low_grey_level_run_emphasis;
    mean.high_grey_level_run_emphasis += f.high_grey_level_run_emphasis;
    mean.grey_level_non_uniformity += f.grey_level_non_uniformity;
    mean.run_length_non_uniformity += f.run_length_non_uniformity;
    mean.run_percentage += f.run_percentage;
    ++used;
  }
  if (used == 0) fail(errc::empty_roi, "no runs in any direction");
  const double inv = 1.0 / static_cast<double>(used);
  mean.short_run_emphasis *= inv;
  mean.long_run_emphasis *= inv;
  mean.low_grey_level_run_emphasis *= inv;
  mean.high_grey_level_run_emphasis *= inv;
  mean.grey_level_non_uniformity *= inv;
  mean.run_length_non_uniformity *= inv;
  mean.run_percentage *= inv;
  return mean;
}

// ---------------------------------------------------------------------------
// Zones (GLSZM / GLDZM)

std::vector<Zone> find_zones(const DiscretisedRoi& roi,
                             const RoiMask& morphological_mask) {
  require_roi(roi);
  const Grid& g = roi.grid;
  if (!g.same_geometry(morphological_mask.grid))
    fail(errc::geometry_mismatch, "mask grid differs from the ROI grid");

  // City-block distance to outside the morphological mask; border voxels of
  // the mask read 1. Multi-source BFS seeded from the virtual outside.
  std::vector<int> distance(g.voxel_count(), 0);
  std::deque<std::size_t> queue;
  static constexpr int kSteps[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                       {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        const std::size_t i = g.linear(x, y, z);
        if (morphological_mask.occupancy[i] != 1.0) continue;
        bool border = false;
        for (const auto& o : kSteps) {
          const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
          if (!g.contains(nx, ny, nz) ||
              morphological_mask.occupancy[g.linear(nx, ny, nz)] != 1.0) {
            border = true;
            break;
          }
        }
        if (border) {
          distance[i] = 1;
          queue.push_back(i);
        }
      }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const int z = static_cast<int>(i / (static_cast<std::size_t>(g.dims[0]) * g.dims[1]));
    const std::size_t rem = i % (static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
    const int y = static_cast<int>(rem / g.dims[0]);
    const int x = static_cast<int>(rem % g.dims[0]);
    for (const auto& o : kSteps) {
      const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
      if (!g.contains(nx, ny, nz)) continue;
      const std::size_t j = g.linear(nx, ny, nz);
      if (morphological_mask.occupancy[j] != 1.0 || distance[j] != 0) continue;
      distance[j] = distance[i] + 1;
      queue.push_back(j);
    }
  }

  // 26-connected equal-level components.
  std::vector<char> visited(g.voxel_count(), 0);
  std::vector<Zone> zones;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < roi.levels.size(); ++start) {
    if (roi.levels[start] == 0 || visited[start]) continue;
    Zone zone;
    zone.level = roi.levels[start];
    zone.distance = std::numeric_limits<int>::max();
    stack.assign(1, start);
    visited[start] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++zone.size;
      zone.distance = std::min(zone.distance, distance[i]);
      const int z = static_cast<int>(i / (static_cast<std::size_t>(g.dims[0]) * g.dims[1]));
      const std::size_t rem = i % (static_cast<std::size_t>(g.dims[0]) * g.dims[1]);
      const int y = static_cast<int>(rem / g.dims[0]);
      const int x = static_cast<int>(rem % g.dims[0]);
      for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0 && dz == 0) continue;
            const int nx = x + dx, ny = y + dy, nz = z + dz;
            if (!g.contains(nx, ny, nz)) continue;
            const std::size_t j = g.linear(nx, ny, nz);
            if (visited[j] || roi.levels[j] != zone.level) continue;
            visited[j] = 1;
            stack.push_back(j);
          }
    }
    // Intensity-mask voxels always lie inside the morphological mask, so the
    // distance map is positive there; guard all the same.
    if (zone.distance <= 0) zone.distance = 1;
    zones.push_back(zone);
  }
  return zones;
}

GlszmFeatures glszm_features(const DiscretisedRoi& roi,
                             const RoiMask& morphological_mask) {
  const auto zones = find_zones(roi, morphological_mask);
  const double n_zones = static_cast<double>(zones.size());
  const double n_voxels = static_cast<double>(roi.roi_voxel_count());

  GlszmFeatures f;
  std::vector<double> by_level(static_cast<std::size_t>(roi.n_levels), 0.0);
  std::vector<double> by_size;
  for (const Zone& zone : zones) {
    const double s = static_cast<double>(zone.size);
    f.small_zone_emphasis += 1.0 / (s * s);
    f.large_zone_emphasis += s * s;
    by_level[static_cast<std::size_t>(zone.level - 1)] += 1.0;
    if (by_size.size() < static_cast<std::size_t>(zone.size))
      by_size.resize(static_cast<std::size_t>(zone.size), 0.0);
    by_size[static_cast<std::size_t>(zone.size - 1)] += 1.0;
  }
  for (double c : by_level) f.grey_level_non_uniformity += c * c;
  for (double c : by_size) f.zone_size_non_uniformity += c * c;
  f.small_zone_emphasis /= n_zones;
  f.large_zone_emphasis /= n_zones;
  f.grey_level_non_uniformity /= n_zones;
  f.zone_size_non_uniformity /= n_zones;
  f.zone_percentage = n_zones / n_voxels;
  return f;
}

GldzmFeatures gldzm_features(const DiscretisedRoi& roi,
                             const RoiMask& morphological_mask) {
  const auto zones = find_zones(roi, morphological_mask);
  const double n_zones = static_cast<double>(zones.size());

  GldzmFeatures f;
  std::vector<double> by_level(static_cast<std::size_t>(roi.n_levels), 0.0);
  std::vector<double> by_distance;
  for (const Zone& zone : zones) {
    const double d = static_cast<double>(zone.distance);
    f.small_distance_emphasis += 1.0 / (d * d);
    f.large_distance_emphasis += d * d;
    by_level[static_cast<std::size_t>(zone.level - 1)] += 1.0;
    if (by_distance.size() < static_cast<std::size_t>(zone.distance))
      by_distance.resize(static_cast<std::size_t>(zone.distance), 0.0);
    by_distance[static_cast<std::size_t>(zone.distance - 1)] += 1.0;
  }
  for (double c : by_level) f.grey_level_non_uniformity += c * c;
  for (double c : by_distance) f.zone_distance_non_uniformity += c * c;
  f.small_distance_emphasis /= n_zones;
  f.large_distance_emphasis /= n_zones;
  f.grey_level_non_uniformity /= n_zones;
  f.zone_distance_non_uniformity /= n_zones;
  return f;
}

// ---------------------------------------------------------------------------
// NGTDM

NgtdmFeatures ngtdm_features(const DiscretisedRoi& roi) {
  require_roi(roi);
  const Grid& g = roi.grid;
  const int ng = roi.n_levels;

  std::vector<double> n_i(static_cast<std::size_t>(ng) + 1, 0.0);
  std::vector<double> s_i(static_cast<std::size_t>(ng) + 1, 0.0);
  double n_valid = 0.0;

  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        const int level = roi.at(x, y, z);
        if (level == 0) continue;
        double sum = 0.0;
        int count = 0;
        for (int dz = -1; dz <= 1; ++dz)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              if (dx == 0 && dy == 0 && dz == 0) continue;
              const int nx = x + dx, ny = y + dy, nz = z + dz;
              if (!g.contains(nx, ny, nz)) continue;
              const int v = roi.at(nx, ny, nz);
              if (v == 0) continue;
              sum += v;
              ++count;
            }
        if (count == 0) continue;  // isolated voxel: no valid neighbourhood
        n_i[static_cast<std::size_t>(level)] += 1.0;
        s_i[static_cast<std::size_t>(level)] +=
            std::abs(level - sum / static_cast<double>(count));
        n_valid += 1.0;
      }

  NgtdmFeatures f;
  if (n_valid == 0.0) {
    f.valid = false;
    f.coarseness = nan();
    f.contrast = nan();
    f.busyness = nan();
    f.complexity = nan();
    f.strength = nan();
    return f;
  }

  std::vector<double> p(static_cast<std::size_t>(ng) + 1, 0.0);
  int levels_present = 0;
  double s_total = 0.0;
  double ps_total = 0.0;
  for (int i = 1; i <= ng; ++i) {
    p[static_cast<std::size_t>(i)] = n_i[static_cast<std::size_t>(i)] / n_valid;
    if (p[static_cast<std::size_t>(i)] > 0.0) ++levels_present;
    s_total += s_i[static_cast<std::size_t>(i)];
    ps_total += p[static_cast<std::size_t>(i)] * s_i[static_cast<std::size_t>(i)];
  }

  f.coarseness = ps_total > 0.0 ? 1.0 / ps_total : kCoarsenessCap;

  if (levels_present > 1) {
    double pair_sum = 0.0;
    for (int i = 1; i <= ng; ++i)
      for (int j = 1; j <= ng; ++j)
        pair_sum += p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j)] *
                    (i - j) * (i - j);
    f.contrast = pair_sum /
                 (static_cast<double>(levels_present) * (levels_present - 1)) *
                 (s_total / n_valid);
  }

  double busy_denominator = 0.0;
  double complexity = 0.0;
  double strength_numerator = 0.0;
  for (int i = 1; i <= ng; ++i) {
    if (p[static_cast<std::size_t>(i)] == 0.0) continue;
    for (int j = 1; j <= ng; ++j) {
      if (p[static_cast<std::size_t>(j)] == 0.0) continue;
      const double pi = p[static_cast<std::size_t>(i)];
      const double pj = p[static_cast<std::size_t>(j)];
      busy_denominator += std::abs(i * pi - j * pj);
      complexity += std::abs(i - j) *
                    (pi * s_i[static_cast<std::size_t>(i)] +
                     pj * s_i[static_cast<std::size_t>(j)]) /
                    (pi + pj);
      strength_numerator += (pi + pj) * (i - j) * (i - j);
    }
  }
  f.busyness = busy_denominator > 0.0 ? ps_total / busy_denominator : 0.0;
  f.complexity = complexity / n_valid;
  f.strength = s_total > 0.0 ? strength_numerator / s_total : 0.0;
  return f;
}

// ---------------------------------------------------------------------------
// NGLDM

std::vector<std::vector<double>> ngldm_matrix(const DiscretisedRoi& roi) {
  require_roi(roi);
  const Grid& g = roi.grid;
  std::vector<std::vector<double>> counts(
      static_cast<std::size_t>(roi.n_levels),
      std::vector<double>(27, 0.0));  // dependence counts 0..26

  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        const int level = roi.at(x, y, z);
        if (level == 0) continue;
        int dependence = 0;
        for (int dz = -1; dz <= 1; ++dz)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              if (dx == 0 && dy == 0 && dz == 0) continue;
              const int nx = x + dx, ny = y + dy, nz = z + dz;
              if (!g.contains(nx, ny, nz)) continue;
              if (roi.at(nx, ny, nz) == level) ++dependence;  // alpha = 0
            }
        counts[static_cast<std::size_t>(level - 1)]
              [static_cast<std::size_t>(dependence)] += 1.0;
      }
  return counts;
}

NgldmFeatures ngldm_features(const DiscretisedRoi& roi) {
  const auto counts = ngldm_matrix(roi);
  double total = 0.0;
  for (const auto& row : counts)
    for (double c : row) total += c;

  NgldmFeatures f;
  std::vector<double> by_dependence(27, 0.0);
  for (const auto& row : counts)
    for (std::size_t j = 0; j < row.size(); ++j) by_dependence[j] += row[j];

  for (std::size_t j = 0; j < by_dependence.size(); ++j) {
    const double c = by_dependence[j];
    if (c == 0.0) continue;
    const double jj = static_cast<double>(j + 1);  // column index, count + 1
    f.low_dependence_emphasis += c / (jj * jj);
    f.high_dependence_emphasis += c * jj * jj;
    f.dependence_count_non_uniformity += c * c;
  }
  for (const auto& row : counts)
    for (double c : row) {
      if (c == 0.0) continue;
      const double p = c / total;
      f.dependence_count_entropy -= p * std::log2(p);
    }
  f.low_dependence_emphasis /= total;
  f.high_dependence_emphasis /= total;
  f.dependence_count_non_uniformity /= total;
  return f;
}

}  // namespace radperturb::features
