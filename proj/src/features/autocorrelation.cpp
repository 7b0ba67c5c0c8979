#include "radperturb/features/autocorrelation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "radperturb/errors.hpp"
#include "radperturb/rng.hpp"

namespace radperturb::features {
namespace {

struct Sample {
  double intensity;
  std::array<double, 3> position;
};

struct MoranGeary {
  double moran;
  double geary;
};

MoranGeary compute_exact(std::span<const Sample> samples) {
  const std::size_t n = samples.size();
  double mean = 0.0;
  for (const Sample& s : samples) mean += s.intensity;
  mean /= static_cast<double>(n);

  double ss = 0.0;
  for (const Sample& s : samples) {
    const double d = s.intensity - mean;
    ss += d * d;
  }
  if (ss == 0.0) fail(errc::zero_variance, "ROI intensities are constant");

  double w_total = 0.0;
  double cross = 0.0;
  double diff_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& a = samples[i].position;
      const auto& b = samples[j].position;
      const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
      const double w = 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
      w_total += w;
      cross += w * (samples[i].intensity - mean) * (samples[j].intensity - mean);
      const double diff = samples[i].intensity - samples[j].intensity;
      diff_sq += w * diff * diff;
    }

  const double nn = static_cast<double>(n);
  return {nn / w_total * cross / ss,
          (nn - 1.0) / (2.0 * w_total) * diff_sq / ss};
}

}  // namespace

AutocorrelationFeatures moran_geary(
    std::span<const double> intensities,
    std::span<const std::array<double, 3>> positions, std::uint64_t seed) {
  if (intensities.size() != positions.size())
    fail(errc::spec_invalid, "intensity/position length mismatch");
  if (intensities.size() < 2)
    fail(errc::empty_roi, "need at least 2 ROI voxels");

  std::vector<Sample> samples(intensities.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    samples[i] = {intensities[i], positions[i]};
  // Canonical position order: the result must not depend on how the caller
  // enumerated the ROI.
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return a.position < b.position;
  });

  {
    double lo = samples.front().intensity, hi = lo;
    for (const Sample& s : samples) {
      lo = std::min(lo, s.intensity);
      hi = std::max(hi, s.intensity);
    }
    if (lo == hi) fail(errc::zero_variance, "ROI intensities are constant");
  }

  AutocorrelationFeatures out;
  if (samples.size() <= kAutocorrelationSampleSize) {
    const MoranGeary exact = compute_exact(samples);
    out.moran_i = exact.moran;
    out.geary_c = exact.geary;
    out.repetitions = 1;
    return out;
  }

  std::vector<std::size_t> indices(samples.size());
  std::vector<Sample> subset(kAutocorrelationSampleSize);
  double moran_sum = 0.0, moran_sq = 0.0;
  double geary_sum = 0.0, geary_sq = 0.0;
  int reps = 0;
  for (int attempt = 0;
       reps < kAutocorrelationMaxRepetitions &&
       attempt < 2 * kAutocorrelationMaxRepetitions;
       ++attempt) {
    std::iota(indices.begin(), indices.end(), 0);
    SequentialRng rng(hash_combine(seed, static_cast<std::uint64_t>(attempt)));
    partial_shuffle(indices, kAutocorrelationSampleSize, rng);
    for (std::size_t i = 0; i < kAutocorrelationSampleSize; ++i)
      subset[i] = samples[indices[i]];

    MoranGeary estimate{};
    try {
      estimate = compute_exact(subset);
    } catch (const Error& e) {
      if (e.code() != errc::zero_variance) throw;
      continue;  // constant subsample: draw a fresh one
    }
    ++reps;
    moran_sum += estimate.moran;
    moran_sq += estimate.moran * estimate.moran;
    geary_sum += estimate.geary;
    geary_sq += estimate.geary * estimate.geary;

    if (reps >= kAutocorrelationMinRepetitions) {
      const double n = static_cast<double>(reps);
      const double moran_var =
          std::max(0.0, (moran_sq - moran_sum * moran_sum / n) / (n - 1.0));
      const double geary_var =
          std::max(0.0, (geary_sq - geary_sum * geary_sum / n) / (n - 1.0));
      const double moran_sem = std::sqrt(moran_var / n);
      const double geary_sem = std::sqrt(geary_var / n);
      if (moran_sem < kAutocorrelationSemTarget &&
          geary_sem < kAutocorrelationSemTarget)
        break;
    }
  }

  if (reps == 0)
    fail(errc::zero_variance, "every subsample drew constant intensities");
  out.moran_i = moran_sum / static_cast<double>(reps);
  out.geary_c = geary_sum / static_cast<double>(reps);
  out.repetitions = reps;
  return out;
}

}  // namespace radperturb::features
