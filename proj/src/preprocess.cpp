#include "radperturb/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "radperturb/errors.hpp"

namespace radperturb {
namespace {

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * (k * k) / (sigma * sigma));
    kernel[k + radius] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;
  return kernel;
}

void convolve_axis(std::vector<double>& values, const Grid& grid, int axis,
                   const std::vector<double>& kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  const int n = grid.dims[axis];
  const std::array<std::size_t, 3> stride{
      1, static_cast<std::size_t>(grid.dims[0]),
      static_cast<std::size_t>(grid.dims[0]) * grid.dims[1]};

  std::vector<double> line(n);
  const int n_a = grid.dims[(axis + 1) % 3];
  const int n_b = grid.dims[(axis + 2) % 3];
  for (int b = 0; b < n_b; ++b)
    for (int a = 0; a < n_a; ++a) {
      const std::size_t base = static_cast<std::size_t>(a) * stride[(axis + 1) % 3] +
                               static_cast<std::size_t>(b) * stride[(axis + 2) % 3];
      for (int i = 0; i < n; ++i) line[i] = values[base + i * stride[axis]];
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k)
          acc += kernel[k + radius] * line[reflect_index(i + k, n)];
        values[base + i * stride[axis]] = acc;
      }
    }
}

// Trilinear sampling at continuous index u. Outside handling is selected by
// the caller: clamp to the boundary value (image) or read zeros (mask).
double sample_trilinear(const std::vector<double>& values, const Grid& grid,
                        std::array<double, 3> u, bool zero_outside) {
  if (!zero_outside) {
    for (int a = 0; a < 3; ++a)
      u[a] = std::clamp(u[a], 0.0, static_cast<double>(grid.dims[a] - 1));
  }
  std::array<int, 3> i0{};
  std::array<double, 3> t{};
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor(u[a]);
    i0[a] = static_cast<int>(f);
    t[a] = u[a] - f;
  }
  double acc = 0.0;
  for (int corner = 0; corner < 8; ++corner) {
    double w = 1.0;
    std::array<int, 3> idx{};
    for (int a = 0; a < 3; ++a) {
      const int bit = (corner >> a) & 1;
      idx[a] = i0[a] + bit;
      w *= bit ? t[a] : 1.0 - t[a];
    }
    if (w == 0.0) continue;
    double v;
    if (grid.contains(idx[0], idx[1], idx[2])) {
      v = values[grid.linear(idx[0], idx[1], idx[2])];
    } else if (zero_outside) {
      v = 0.0;
    } else {
      const int cx = std::clamp(idx[0], 0, grid.dims[0] - 1);
      const int cy = std::clamp(idx[1], 0, grid.dims[1] - 1);
      const int cz = std::clamp(idx[2], 0, grid.dims[2] - 1);
      v = values[grid.linear(cx, cy, cz)];
    }
    acc += w * v;
  }
  return acc;
}

}  // namespace

double gaussian_sigma(double beta, double spacing_in, double spacing_out) {
  if (!(beta > 0.0) || beta > 1.0)
    fail(errc::invalid_beta, "beta must lie in (0, 1]");
  if (!(spacing_in > 0.0) || !(spacing_out > 0.0))
    fail(errc::spec_invalid, "spacings must be > 0");
  if (beta == 1.0) return 0.0;
  const double ratio = spacing_out / spacing_in;
  return std::sqrt(-8.0 * ratio * ratio * std::log(beta));
}

Volume gaussian_prefilter(const Volume& volume,
                          const std::array<double, 3>& sigma_voxels) {
  for (double s : sigma_voxels)
    if (s < 0.0) fail(errc::spec_invalid, "sigma must be >= 0");
  Volume out = volume;
  for (int axis = 0; axis < 3; ++axis) {
    if (sigma_voxels[axis] == 0.0) continue;
    convolve_axis(out.values, out.grid, axis, gaussian_kernel(sigma_voxels[axis]));
  }
  return out;
}

ResampleResult resample(const Volume& volume, const RoiMask& mask,
                        const InterpolationSpec& spec) {
  if (!volume.grid.same_geometry(mask.grid))
    fail(errc::geometry_mismatch, "volume and mask grids differ");
  if (!(spec.target_spacing > 0.0))
    fail(errc::spec_invalid, "target spacing must be > 0");
  for (double s : spec.shift)
    if (s < 0.0 || s >= 1.0)
      fail(errc::spec_invalid, "shift fractions must lie in [0, 1)");

  const Grid& in = volume.grid;
  const double s = spec.target_spacing;

  Grid out;
  for (int a = 0; a < 3; ++a) {
    out.dims[a] = std::max(
        1, static_cast<int>(std::ceil(in.dims[a] * in.spacing[a] / s)));
    out.spacing[a] = s;
    out.origin[a] =
        in.centre(a) - 0.5 * (out.dims[a] - 1) * s + spec.shift[a] * s;
  }

  // Anti-alias only on axes that are actually downsampled.
  std::array<double, 3> sigma{0.0, 0.0, 0.0};
  for (int a = 0; a < 3; ++a)
    if (s > in.spacing[a]) sigma[a] = gaussian_sigma(spec.beta, in.spacing[a], s);
  const Volume filtered = gaussian_prefilter(volume, sigma);

  ResampleResult result{Volume(out), RoiMask(out)};
  result.volume.stored_type = volume.stored_type;
  for (int z = 0; z < out.dims[2]; ++z)
    for (int y = 0; y < out.dims[1]; ++y)
      for (int x = 0; x < out.dims[0]; ++x) {
        std::array<double, 3> u{};
        const std::array<int, 3> idx{x, y, z};
        for (int a = 0; a < 3; ++a)
          u[a] = (out.origin[a] + idx[a] * s - in.origin[a]) / in.spacing[a];
        result.volume.at(x, y, z) =
            sample_trilinear(filtered.values, in, u, /*zero_outside=*/false);
        result.mask.at(x, y, z) =
            std::clamp(sample_trilinear(mask.occupancy, in, u, true), 0.0, 1.0);
      }
  return result;
}

Volume round_hu(const Volume& volume) {
  Volume out = volume;
  for (double& v : out.values) v = std::round(v);
  return out;
}

RoiMask threshold_mask(const RoiMask& mask, double threshold) {
  RoiMask out = mask;
  for (double& v : out.occupancy) v = v >= threshold ? 1.0 : 0.0;
  return out;
}

RoiPair resegment(const Volume& volume, const RoiMask& morphological,
                  const ResegmentationSpec& spec) {
  if (!volume.grid.same_geometry(morphological.grid))
    fail(errc::geometry_mismatch, "volume and mask grids differ");
  if (!(spec.range_low < spec.range_high))
    fail(errc::spec_invalid, "re-segmentation range is empty");
  if (!morphological.is_binary())
    fail(errc::not_binarised, "morphological mask must be binarised");
  if (morphological.empty()) fail(errc::empty_mask, "morphological mask empty");

  RoiPair pair{morphological, RoiMask(morphological.grid)};

  // Range filter first; outlier statistics are computed over the voxels that
  // survive it (population standard deviation, two-pass).
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < morphological.occupancy.size(); ++i) {
    if (morphological.occupancy[i] != 1.0) continue;
    const double v = volume.values[i];
    if (v < spec.range_low || v > spec.range_high) continue;
    pair.intensity.occupancy[i] = 1.0;
    sum += v;
    ++n;
  }
  if (n == 0)
    fail(errc::empty_intensity_mask, "no ROI voxel inside the range");

  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < pair.intensity.occupancy.size(); ++i) {
    if (pair.intensity.occupancy[i] != 1.0) continue;
    const double d = volume.values[i] - mean;
    ss += d * d;
  }
  const double sigma = std::sqrt(ss / static_cast<double>(n));

  std::size_t kept = 0;
  for (std::size_t i = 0; i < pair.intensity.occupancy.size(); ++i) {
    if (pair.intensity.occupancy[i] != 1.0) continue;
    if (std::abs(volume.values[i] - mean) > spec.outlier_sigma * sigma)
      pair.intensity.occupancy[i] = 0.0;
    else
      ++kept;
  }
  if (kept == 0)
    fail(errc::empty_intensity_mask, "outlier filter removed every voxel");
  return pair;
}

}  // namespace radperturb
