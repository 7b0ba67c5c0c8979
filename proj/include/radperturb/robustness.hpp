#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace radperturb {

/// n subjects x k repeated measurements, row-major. Rows are subjects.
struct MeasurementMatrix {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> values;

  MeasurementMatrix() = default;
  MeasurementMatrix(std::size_t subjects, std::size_t measurements)
      : n(subjects), k(measurements), values(subjects * measurements, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return values[i * k + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * k + j]; }
};

struct IccResult {
  double icc = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_used = 0;
  int k = 0;
};

/// One-way random-effects, single-measurement intraclass correlation:
/// ICC = (MSB - MSW) / (MSB + (k-1) MSW), with the standard F-based
/// confidence interval at level 1 - alpha.
IccResult icc_1_1(const MeasurementMatrix& m, double alpha = 0.05);

/// Mean of the per-image perturbation ICCs (two acquisitions).
double average_perturbation_icc(double icc_image1, double icc_image2);

struct RobustnessLabel {
  bool robust = false;
  double threshold = 0.90;
  std::string reason;  // set when the ICC was undetermined
};

/// robust iff icc >= threshold; NaN classifies as non-robust with reason
/// "undetermined".
RobustnessLabel classify(double icc, double threshold = 0.90);

/// Pooled one-sided location test of per-feature ICC differences against a
/// zero mean: z = sqrt(n_effective) * mean / sd (sample sd).
double pooled_bias_z(std::span<const double> differences, int n_effective = 1);

inline constexpr double kBiasSignificanceZ = 1.96;

inline bool bias_significant(double z) {
  return std::abs(z) >= kBiasSignificanceZ;
}

struct ConfusionSummary {
  long tp = 0;
  long tn = 0;
  long fp = 0;
  long fn = 0;

  long total() const { return tp + tn + fp + fn; }
  double tp_fraction() const { return static_cast<double>(tp) / total(); }
  double tn_fraction() const { return static_cast<double>(tn) / total(); }
  double fp_fraction() const { return static_cast<double>(fp) / total(); }
  double fn_fraction() const { return static_cast<double>(fn) / total(); }
};

/// Feature-wise 2x2 tabulation of robustness labels. Both vectors pair a
/// feature identifier with its label and must cover the same identifier set
/// in the same order.
ConfusionSummary confusion(
    const std::vector<std::pair<std::string, bool>>& reference,
    const std::vector<std::pair<std::string, bool>>& test);

}  // namespace radperturb
