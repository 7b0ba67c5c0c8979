#include "radperturb/phantom.hpp"

#include <cmath>
#include <limits>

#include "radperturb/errors.hpp"
#include "radperturb/preprocess.hpp"
#include "radperturb/rng.hpp"

namespace radperturb {
namespace {

constexpr std::uint64_t kTextureDomain = 0x74657874ull;  // "text"
constexpr std::uint64_t kNoiseDomain = 0x6e6f6973ull;    // "nois"

struct Ellipsoid {
  std::array<double, 3> centre;
  std::array<double, 3> semi_axes;

  bool inside(double x, double y, double z) const {
    const double u = (x - centre[0]) / semi_axes[0];
    const double v = (y - centre[1]) / semi_axes[1];
    const double w = (z - centre[2]) / semi_axes[2];
    return u * u + v * v + w * w <= 1.0;
  }
};

Ellipsoid resolve_ellipsoid(const PhantomSpec& spec, const Grid& grid) {
  Ellipsoid e{spec.centre_mm, spec.semi_axes_mm};
  for (int a = 0; a < 3; ++a)
    if (std::isnan(e.centre[a])) e.centre[a] = grid.centre(a);
  return e;
}

void validate(const PhantomSpec& spec, const Grid& grid,
              const Ellipsoid& ellipsoid) {
  grid.validate();
  if (spec.noise_sigma_hu < 0.0)
    fail(errc::spec_invalid, "noise sigma must be >= 0");
  if (spec.modulation_amplitude_hu < 0.0)
    fail(errc::spec_invalid, "modulation amplitude must be >= 0");
  if (spec.correlation_length_mm < 0.0)
    fail(errc::spec_invalid, "correlation length must be >= 0");
  for (int a = 0; a < 3; ++a) {
    if (!(ellipsoid.semi_axes[a] > 0.0))
      fail(errc::spec_invalid, "semi-axes must be > 0");
    const double lo = grid.origin[a] - 0.5 * grid.spacing[a];
    const double hi =
        grid.origin[a] + (grid.dims[a] - 0.5) * grid.spacing[a];
    if (ellipsoid.centre[a] - ellipsoid.semi_axes[a] < lo ||
        ellipsoid.centre[a] + ellipsoid.semi_axes[a] > hi)
      fail(errc::spec_invalid, "ellipsoid does not fit inside the grid");
  }
}

/// Unrounded signal (base/background + smoothed modulation) and occupancy.
struct PhantomField {
  Volume signal;
  RoiMask mask;
};

PhantomField build_field(const PhantomSpec& spec, std::uint64_t seed) {
  Grid grid;
  grid.dims = spec.dims;
  grid.spacing = spec.spacing;
  const Ellipsoid ellipsoid = resolve_ellipsoid(spec, grid);
  validate(spec, grid, ellipsoid);

  PhantomField field{Volume(grid), RoiMask(grid)};

  // Occupancy: cheap centre test, 2x2x2 supersampling on boundary voxels.
  for (int z = 0; z < grid.dims[2]; ++z)
    for (int y = 0; y < grid.dims[1]; ++y)
      for (int x = 0; x < grid.dims[0]; ++x) {
        const auto w = grid.world(x, y, z);
        int hits = 0;
        for (int corner = 0; corner < 8; ++corner) {
          const double sx =
              w[0] + (((corner >> 0) & 1) ? 0.25 : -0.25) * grid.spacing[0];
          const double sy =
              w[1] + (((corner >> 1) & 1) ? 0.25 : -0.25) * grid.spacing[1];
          const double sz =
              w[2] + (((corner >> 2) & 1) ? 0.25 : -0.25) * grid.spacing[2];
          if (ellipsoid.inside(sx, sy, sz)) ++hits;
        }
        field.mask.at(x, y, z) = hits / 8.0;
      }

  for (std::size_t i = 0; i < field.signal.values.size(); ++i)
    field.signal.values[i] =
        field.mask.occupancy[i] >= 0.5 ? spec.base_hu : spec.background_hu;

  if (spec.modulation_amplitude_hu > 0.0) {
    Volume texture(grid);
    const CounterRng rng(hash_combine(seed, kTextureDomain));
    for (std::size_t i = 0; i < texture.values.size(); ++i)
      texture.values[i] = rng.normal(i);
    std::array<double, 3> sigma{};
    for (int a = 0; a < 3; ++a)
      sigma[a] = spec.correlation_length_mm / grid.spacing[a];
    texture = gaussian_prefilter(texture, sigma);

    // Smoothing shrinks the variance; rescale to the requested amplitude.
    double mean = 0.0;
    for (double v : texture.values) mean += v;
    mean /= static_cast<double>(texture.values.size());
    double var = 0.0;
    for (double v : texture.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(texture.values.size());
    const double scale =
        var > 0.0 ? spec.modulation_amplitude_hu / std::sqrt(var) : 0.0;
    for (std::size_t i = 0; i < field.signal.values.size(); ++i)
      if (field.mask.occupancy[i] >= 0.5)
        field.signal.values[i] += scale * (texture.values[i] - mean);
  }
  return field;
}

Volume finish_image(const PhantomField& field, const PhantomSpec& spec,
                    std::uint64_t seed, double noise_scale,
                    double smoothing_sigma_voxels) {
  Volume image = field.signal;
  if (spec.noise_sigma_hu > 0.0 && noise_scale != 0.0) {
    const CounterRng rng(hash_combine(seed, kNoiseDomain));
    for (std::size_t i = 0; i < image.values.size(); ++i)
      image.values[i] += noise_scale * spec.noise_sigma_hu * rng.normal(i);
  }
  if (smoothing_sigma_voxels > 0.0)
    image = gaussian_prefilter(
        image, {smoothing_sigma_voxels, smoothing_sigma_voxels,
                smoothing_sigma_voxels});
  for (double& v : image.values) v = std::round(v);
  image.stored_type = ElementType::Int16;
  return image;
}

}  // namespace

PhantomPair generate_phantom(const PhantomSpec& spec, std::uint64_t seed) {
  const PhantomField field = build_field(spec, seed);
  return {finish_image(field, spec, seed, 1.0, 0.0), field.mask};
}

RetestPair generate_retest_pair(const PhantomSpec& spec,
                                const AcquisitionDelta& delta,
                                std::uint64_t seed) {
  if (!(delta.noise_scale >= 0.0))
    fail(errc::spec_invalid, "noise scale must be >= 0");
  if (delta.smoothing_sigma_voxels < 0.0)
    fail(errc::spec_invalid, "smoothing sigma must be >= 0");
  const PhantomField field = build_field(spec, seed);
  RetestPair pair;
  pair.first = {finish_image(field, spec, seed, 1.0, 0.0), field.mask};
  pair.second = {finish_image(field, spec, seed, delta.noise_scale,
                              delta.smoothing_sigma_voxels),
                 field.mask};
  return pair;
}

}  // namespace radperturb
