#include "radperturb/features/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "radperturb/errors.hpp"

namespace radperturb::features {
namespace {

double percentile_sorted(const std::vector<double>& sorted, double q) {
  const double rank = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(rank));
  const double t = rank - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

}  // namespace

double percentile(std::span<const double> values, double q) {
  if (values.empty()) fail(errc::empty_roi, "percentile of empty set");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return percentile_sorted(sorted, q);
}

IntensityStats intensity_statistics(std::span<const double> intensities) {
  if (intensities.empty()) fail(errc::empty_roi, "no intensities");

  // Working on sorted data makes every statistic invariant under input
  // permutation, bit for bit.
  std::vector<double> sorted(intensities.begin(), intensities.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  IntensityStats stats;
  double sum = 0.0;
  double energy = 0.0;
  for (double v : sorted) {
    sum += v;
    energy += v * v;
  }
  stats.mean = sum / n;
  stats.energy = energy;
  stats.rms = std::sqrt(energy / n);

  double m2 = 0.0, m3 = 0.0, m4 = 0.0, abs_dev = 0.0;
  for (double v : sorted) {
    const double d = v - stats.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
    abs_dev += std::abs(d);
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  stats.variance = m2;
  stats.mean_abs_dev = abs_dev / n;
  if (m2 > 0.0) {
    stats.skewness = m3 / std::pow(m2, 1.5);
    stats.kurtosis = m4 / (m2 * m2) - 3.0;
  }

  stats.minimum = sorted.front();
  stats.maximum = sorted.back();
  stats.range = stats.maximum - stats.minimum;
  stats.median = percentile_sorted(sorted, 0.5);
  stats.p10 = percentile_sorted(sorted, 0.10);
  stats.p90 = percentile_sorted(sorted, 0.90);
  const double p25 = percentile_sorted(sorted, 0.25);
  const double p75 = percentile_sorted(sorted, 0.75);
  stats.iqr = p75 - p25;

  double robust_sum = 0.0;
  std::size_t robust_n = 0;
  for (double v : sorted) {
    if (v < stats.p10 || v > stats.p90) continue;
    robust_sum += v;
    ++robust_n;
  }
  if (robust_n > 0) {
    const double robust_mean = robust_sum / static_cast<double>(robust_n);
    double robust_dev = 0.0;
    for (double v : sorted) {
      if (v < stats.p10 || v > stats.p90) continue;
      robust_dev += std::abs(v - robust_mean);
    }
    stats.robust_mean_abs_dev = robust_dev / static_cast<double>(robust_n);
  }

  double median_dev = 0.0;
  for (double v : sorted) median_dev += std::abs(v - stats.median);
  stats.median_abs_dev = median_dev / n;

  const double sigma = std::sqrt(m2);
  if (sigma == 0.0)
    stats.cov = 0.0;
  else if (stats.mean == 0.0)
    stats.cov = std::numeric_limits<double>::quiet_NaN();
  else
    stats.cov = sigma / stats.mean;

  const double q_sum = p75 + p25;
  stats.qcod = q_sum == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                            : (p75 - p25) / q_sum;
  return stats;
}

HistogramFeatures histogram_features(std::span<const int> levels,
                                     int n_levels) {
  if (levels.empty()) fail(errc::empty_roi, "no levels");
  if (n_levels < 1) fail(errc::spec_invalid, "n_levels must be >= 1");

  std::vector<double> counts(static_cast<std::size_t>(n_levels) + 1, 0.0);
  for (int level : levels) {
    if (level < 1 || level > n_levels)
      fail(errc::spec_invalid, "level outside [1, n_levels]");
    counts[static_cast<std::size_t>(level)] += 1.0;
  }
  const double n = static_cast<double>(levels.size());

  HistogramFeatures out;
  double mean = 0.0;
  for (int i = 1; i <= n_levels; ++i) mean += i * counts[i];
  mean /= n;
  out.mean = mean;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  double best_count = -1.0;
  for (int i = 1; i <= n_levels; ++i) {
    const double d = i - mean;
    m2 += counts[i] * d * d;
    m3 += counts[i] * d * d * d;
    m4 += counts[i] * d * d * d * d;
    const double p = counts[i] / n;
    if (p > 0.0) {
      out.entropy -= p * std::log2(p);
      out.uniformity += p * p;
    }
    if (counts[i] > best_count) {
      best_count = counts[i];
      out.mode = i;
    }
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  out.variance = m2;
  if (m2 > 0.0) {
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2) - 3.0;
  }

  std::vector<double> as_real(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i)
    as_real[i] = static_cast<double>(levels[i]);
  std::sort(as_real.begin(), as_real.end());
  out.median = percentile_sorted(as_real, 0.5);
  return out;
}

IvhFeatures ivh_features(std::span<const double> intensities) {
  if (intensities.empty()) fail(errc::empty_roi, "no intensities");

  std::vector<double> sorted(intensities.begin(), intensities.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double lo = sorted.front();
  const double hi = sorted.back();

  // Fraction of the ROI with intensity >= threshold.
  auto fraction_at_least = [&](double threshold) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), threshold);
    return static_cast<double>(sorted.end() - it) / n;
  };

  IvhFeatures out;
  for (std::size_t p = 0; p < kIvhPercentiles.size(); ++p) {
    const double x = kIvhPercentiles[p] / 100.0;
    out.volume_fraction[p] = fraction_at_least(lo + x * (hi - lo));
  }

  // Intensity at volume fraction: the lowest discrete value (1-HU steps over
  // the ROI range) present in at most x% of the volume; the top value when
  // nothing qualifies.
  for (std::size_t p = 0; p < kIvhPercentiles.size(); ++p) {
    const double x = kIvhPercentiles[p] / 100.0;
    double found = hi;
    for (double value = lo; value <= hi; value += 1.0) {
      if (fraction_at_least(value) <= x) {
        found = value;
        break;
      }
    }
    out.intensity[p] = found;
  }

  out.v10_minus_v90 = out.volume_fraction[0] - out.volume_fraction[4];
  out.i10_minus_i90 = out.intensity[0] - out.intensity[4];
  return out;
}

}  // namespace radperturb::features
