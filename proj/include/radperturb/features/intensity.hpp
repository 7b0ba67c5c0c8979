#pragma once

#include <array>
#include <span>

#include "radperturb/features/discretise.hpp"

namespace radperturb::features {

/// The 18 first-order intensity statistics.
struct IntensityStats {
  double mean = 0.0;
  double variance = 0.0;  // population
  double skewness = 0.0;
  double kurtosis = 0.0;  // excess (Fisher)
  double median = 0.0;
  double minimum = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
  double maximum = 0.0;
  double iqr = 0.0;
  double range = 0.0;
  double mean_abs_dev = 0.0;
  double robust_mean_abs_dev = 0.0;  // over [P10, P90]
  double median_abs_dev = 0.0;       // mean |x - median|
  double cov = 0.0;                  // sigma / mean
  double qcod = 0.0;                 // (P75 - P25) / (P75 + P25)
  double energy = 0.0;
  double rms = 0.0;
};

IntensityStats intensity_statistics(std::span<const double> intensities);

/// Linear-interpolation percentile, q in [0, 1], over a sorted copy.
double percentile(std::span<const double> values, double q);

/// Discretised first-order features.
struct HistogramFeatures {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // excess
  double median = 0.0;
  double mode = 0.0;  // lowest level on ties
  double entropy = 0.0;
  double uniformity = 0.0;
};

HistogramFeatures histogram_features(std::span<const int> levels,
                                     int n_levels);

/// Intensity-volume histogram built over discrete 1-HU steps spanning the
/// ROI intensity range. v[i]/x[i] follow the percentile order 10, 25, 50,
/// 75, 90.
struct IvhFeatures {
  std::array<double, 5> volume_fraction{};   // V10, V25, V50, V75, V90
  std::array<double, 5> intensity{};         // I10, I25, I50, I75, I90
  double v10_minus_v90 = 0.0;
  double i10_minus_i90 = 0.0;
};

inline constexpr std::array<double, 5> kIvhPercentiles{10.0, 25.0, 50.0, 75.0,
                                                       90.0};

IvhFeatures ivh_features(std::span<const double> intensities);

}  // namespace radperturb::features
