#include "radperturb/robustness.hpp"

#include <cmath>

#include "radperturb/errors.hpp"
#include "radperturb/fdist.hpp"

namespace radperturb {

IccResult icc_1_1(const MeasurementMatrix& m, double alpha) {
  if (m.n < 2) fail(errc::too_few_subjects, "need at least 2 subjects");
  if (m.k < 2) fail(errc::too_few_subjects, "need at least 2 measurements");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    fail(errc::spec_invalid, "alpha must lie in (0, 1)");

  const double n = static_cast<double>(m.n);
  const double k = static_cast<double>(m.k);

  double grand = 0.0;
  for (double v : m.values) grand += v;
  grand /= n * k;

  double ssb = 0.0;  // between subjects
  double ssw = 0.0;  // within subjects
  for (std::size_t i = 0; i < m.n; ++i) {
    double row_mean = 0.0;
    for (std::size_t j = 0; j < m.k; ++j) row_mean += m.at(i, j);
    row_mean /= k;
    const double d = row_mean - grand;
    ssb += d * d;
    for (std::size_t j = 0; j < m.k; ++j) {
      const double e = m.at(i, j) - row_mean;
      ssw += e * e;
    }
  }

  const double msb = k * ssb / (n - 1.0);
  const double msw = ssw / (n * (k - 1.0));
  if (msb == 0.0)
    fail(errc::degenerate_variance, "no between-subject variance");

  IccResult result;
  result.n_used = static_cast<int>(m.n);
  result.k = static_cast<int>(m.k);
  result.icc = (msb - msw) / (msb + (k - 1.0) * msw);

  // F-based interval (Shrout & Fleiss). With MSW = 0 the observed F is
  // infinite and the interval collapses onto the point estimate from above.
  const double df1 = n - 1.0;
  const double df2 = n * (k - 1.0);
  const double q = 1.0 - 0.5 * alpha;
  if (msw == 0.0) {
    result.ci_low = result.icc;
    result.ci_high = result.icc;
    return result;
  }
  const double f_obs = msb / msw;
  const double f_low = f_obs / f_quantile(q, df1, df2);
  const double f_high = f_obs * f_quantile(q, df2, df1);
  result.ci_low = (f_low - 1.0) / (f_low + k - 1.0);
  result.ci_high = (f_high - 1.0) / (f_high + k - 1.0);
  return result;
}

double average_perturbation_icc(double icc_image1, double icc_image2) {
  if (!std::isfinite(icc_image1) || !std::isfinite(icc_image2))
    fail(errc::spec_invalid, "ICC inputs must be finite");
  return 0.5 * (icc_image1 + icc_image2);
}

RobustnessLabel classify(double icc, double threshold) {
  RobustnessLabel label;
  label.threshold = threshold;
  if (std::isnan(icc)) {
    label.robust = false;
    label.reason = "undetermined";
    return label;
  }
  label.robust = icc >= threshold;
  return label;
}

double pooled_bias_z(std::span<const double> differences, int n_effective) {
  if (differences.size() < 2)
    fail(errc::spec_invalid, "need at least 2 differences");
  if (n_effective < 1) fail(errc::spec_invalid, "n_effective must be >= 1");

  const double n = static_cast<double>(differences.size());
  double mean = 0.0;
  for (double d : differences) mean += d;
  mean /= n;
  double ss = 0.0;
  for (double d : differences) {
    const double e = d - mean;
    ss += e * e;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) fail(errc::zero_spread, "differences have zero spread");
  return std::sqrt(static_cast<double>(n_effective)) * mean / sd;
}

ConfusionSummary confusion(
    const std::vector<std::pair<std::string, bool>>& reference,
    const std::vector<std::pair<std::string, bool>>& test) {
  if (reference.size() != test.size())
    fail(errc::schema_mismatch, "label vectors differ in size");
  ConfusionSummary summary;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i].first != test[i].first)
      fail(errc::schema_mismatch,
           "feature sets differ at '" + reference[i].first + "'");
    const bool ref = reference[i].second;
    const bool tst = test[i].second;
    if (ref && tst)
      ++summary.tp;
    else if (!ref && !tst)
      ++summary.tn;
    else if (tst)
      ++summary.fp;
    else
      ++summary.fn;
  }
  return summary;
}

}  // namespace radperturb
