#include "radperturb/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "radperturb/errors.hpp"
#include "radperturb/rng.hpp"

namespace radperturb {
namespace {

// Coiflet-1 decomposition high-pass filter (orthonormal, zero DC response).
constexpr int kCoif1Length = 6;
constexpr double kCoif1HighPass[kCoif1Length] = {
    0.0727326195128539,   0.3378976624578092, -0.8525720202122554,
    0.38486484686420286,  0.0727326195128539, -0.01565572813546454,
};

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// Correlation with the filter anchored at tap kCoif1Length / 2.
void highpass_axis(std::vector<double>& values, const Grid& grid, int axis) {
  const int anchor = kCoif1Length / 2;
  const int n = grid.dims[axis];
  const std::array<std::size_t, 3> stride{
      1, static_cast<std::size_t>(grid.dims[0]),
      static_cast<std::size_t>(grid.dims[0]) * grid.dims[1]};
  const int n_a = grid.dims[(axis + 1) % 3];
  const int n_b = grid.dims[(axis + 2) % 3];

  std::vector<double> line(n);
  for (int b = 0; b < n_b; ++b)
    for (int a = 0; a < n_a; ++a) {
      const std::size_t base =
          static_cast<std::size_t>(a) * stride[(axis + 1) % 3] +
          static_cast<std::size_t>(b) * stride[(axis + 2) % 3];
      for (int i = 0; i < n; ++i) line[i] = values[base + i * stride[axis]];
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < kCoif1Length; ++j)
          acc += kCoif1HighPass[j] * line[reflect_index(i + j - anchor, n)];
        values[base + i * stride[axis]] = acc;
      }
    }
}

double median_of(std::vector<double>& values) {
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double upper = values[mid];
  if (n % 2 == 1) return upper;
  std::nth_element(values.begin(), values.begin() + mid - 1,
                   values.begin() + mid);
  return 0.5 * (values[mid - 1] + upper);
}

double bilinear_slice(const Volume& volume, int z, double ux, double uy,
                      bool zero_outside) {
  const Grid& g = volume.grid;
  if (!zero_outside) {
    ux = std::clamp(ux, 0.0, static_cast<double>(g.dims[0] - 1));
    uy = std::clamp(uy, 0.0, static_cast<double>(g.dims[1] - 1));
  }
  const int ix = static_cast<int>(std::floor(ux));
  const int iy = static_cast<int>(std::floor(uy));
  const double tx = ux - ix;
  const double ty = uy - iy;
  double acc = 0.0;
  for (int corner = 0; corner < 4; ++corner) {
    const int bx = corner & 1;
    const int by = (corner >> 1) & 1;
    const double w = (bx ? tx : 1.0 - tx) * (by ? ty : 1.0 - ty);
    if (w == 0.0) continue;
    int x = ix + bx;
    int y = iy + by;
    double v;
    if (x >= 0 && x < g.dims[0] && y >= 0 && y < g.dims[1]) {
      v = volume.at(x, y, z);
    } else if (zero_outside) {
      v = 0.0;
    } else {
      x = std::clamp(x, 0, g.dims[0] - 1);
      y = std::clamp(y, 0, g.dims[1] - 1);
      v = volume.at(x, y, z);
    }
    acc += w * v;
  }
  return acc;
}

void dilate_6(const std::vector<char>& in, std::vector<char>& out,
              const Grid& g) {
  static constexpr int kOffsets[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                         {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
  out = in;
  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        if (!in[g.linear(x, y, z)]) continue;
        for (const auto& o : kOffsets) {
          const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
          if (g.contains(nx, ny, nz)) out[g.linear(nx, ny, nz)] = 1;
        }
      }
}

void erode_6(const std::vector<char>& in, std::vector<char>& out,
             const Grid& g) {
  static constexpr int kOffsets[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                         {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
  out = in;
  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        const std::size_t i = g.linear(x, y, z);
        if (!in[i]) continue;
        for (const auto& o : kOffsets) {
          const int nx = x + o[0], ny = y + o[1], nz = z + o[2];
          // Outside the grid counts as background, so edge voxels erode.
          if (!g.contains(nx, ny, nz) || !in[g.linear(nx, ny, nz)]) {
            out[i] = 0;
            break;
          }
        }
      }
}

std::int64_t count_set(const std::vector<char>& mask) {
  std::int64_t n = 0;
  for (char v : mask) n += v != 0;
  return n;
}

}  // namespace

NoiseEstimate estimate_noise_sigma(const Volume& volume,
                                   double median_constant) {
  if (volume.grid.dims[0] < kCoif1Length || volume.grid.dims[1] < kCoif1Length)
    fail(errc::volume_too_small,
         "x and y extents must be >= the filter length");
  if (!(median_constant > 0.0))
    fail(errc::spec_invalid, "median constant must be > 0");

  std::vector<double> diff = volume.values;
  highpass_axis(diff, volume.grid, 0);
  highpass_axis(diff, volume.grid, 1);
  for (double& v : diff) v = std::abs(v);
  return NoiseEstimate{median_of(diff) / median_constant};
}

Volume add_noise(const Volume& volume, const NoiseEstimate& estimate,
                 std::uint64_t seed) {
  if (estimate.sigma_noise < 0.0)
    fail(errc::spec_invalid, "noise sigma must be >= 0");
  Volume out = volume;
  const CounterRng rng(seed);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] =
        std::round(out.values[i] + estimate.sigma_noise * rng.normal(i));
  return out;
}

RotateResult rotate_inplane(const Volume& volume, const RoiMask& mask,
                            double theta_deg) {
  if (!volume.grid.same_geometry(mask.grid))
    fail(errc::geometry_mismatch, "volume and mask grids differ");
  if (theta_deg == 0.0) return {volume, mask};

  const Grid& g = volume.grid;
  const double theta = theta_deg * std::numbers::pi / 180.0;
  // Pull transform: output position rotated by -theta about the slice centre.
  const double c = std::cos(-theta);
  const double s = std::sin(-theta);
  const double cx = g.centre(0);
  const double cy = g.centre(1);

  RotateResult result{Volume(g), RoiMask(g)};
  result.volume.stored_type = volume.stored_type;
  Volume mask_volume(g);
  mask_volume.values = mask.occupancy;

  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        const double px = g.origin[0] + x * g.spacing[0] - cx;
        const double py = g.origin[1] + y * g.spacing[1] - cy;
        const double sx = cx + c * px - s * py;
        const double sy = cy + s * px + c * py;
        const double ux = (sx - g.origin[0]) / g.spacing[0];
        const double uy = (sy - g.origin[1]) / g.spacing[1];
        result.volume.at(x, y, z) =
            std::round(bilinear_slice(volume, z, ux, uy, false));
        result.mask.at(x, y, z) =
            std::clamp(bilinear_slice(mask_volume, z, ux, uy, true), 0.0, 1.0);
      }
  return result;
}

RoiMask adapt_volume(const RoiMask& mask, double tau, std::uint64_t seed) {
  if (!(tau > -1.0)) fail(errc::spec_invalid, "tau must be > -1");
  if (!mask.is_binary()) fail(errc::not_binarised, "mask must be binarised");
  if (mask.empty()) fail(errc::empty_mask, "mask is empty");
  if (tau == 0.0) return mask;

  const Grid& g = mask.grid;
  std::vector<char> current(mask.occupancy.size());
  for (std::size_t i = 0; i < current.size(); ++i)
    current[i] = mask.occupancy[i] == 1.0;

  const std::int64_t v0 = count_set(current);
  const std::int64_t target =
      static_cast<std::int64_t>(std::floor(static_cast<double>(v0) * (1.0 + tau)));

  std::vector<char> held = current;   // last mask not past the target
  std::int64_t held_count = v0;
  std::vector<char> next;
  std::int64_t next_count = held_count;
  while (true) {
    if (tau > 0.0)
      dilate_6(held, next, g);
    else
      erode_6(held, next, g);
    next_count = count_set(next);
    if (next_count == held_count) break;  // saturated at the grid extent
    if (next_count == 0) break;
    if (tau > 0.0 && next_count > target) break;
    if (tau < 0.0 && next_count < target) break;
    held.swap(next);
    held_count = next_count;
  }

  if (held_count != target) {
    // Complete on the rim: voxels toggled by the final over-/under-shooting
    // step, sampled without replacement.
    std::vector<std::size_t> rim;
    for (std::size_t i = 0; i < held.size(); ++i)
      if (held[i] != next[i]) rim.push_back(i);
    const std::int64_t deficit = std::llabs(target - held_count);
    const std::size_t take = static_cast<std::size_t>(
        std::min<std::int64_t>(deficit, static_cast<std::int64_t>(rim.size())));
    SequentialRng rng(seed);
    partial_shuffle(rim, take, rng);
    for (std::size_t i = 0; i < take; ++i) held[rim[i]] = tau > 0.0 ? 1 : 0;
  }

  RoiMask result(g);
  for (std::size_t i = 0; i < held.size(); ++i)
    result.occupancy[i] = held[i] ? 1.0 : 0.0;
  return result;
}

}  // namespace radperturb
