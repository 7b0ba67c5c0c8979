#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radperturb/chains.hpp"
#include "radperturb/features/extract.hpp"
#include "radperturb/phantom.hpp"

namespace radperturb::runner {

struct SubjectConfig {
  std::string id;
  std::filesystem::path image;
  std::filesystem::path mask;
  std::filesystem::path retest_image;  // empty = single acquisition
  std::filesystem::path retest_mask;

  bool has_retest() const { return !retest_image.empty(); }
};

/// Cohort generation settings for the phantom subcommand. Per-subject
/// variability is drawn deterministically from the master seed.
struct PhantomCohortConfig {
  int count = 1;
  PhantomSpec base;
  std::array<double, 3> semi_axes_min_mm{8.0, 8.0, 8.0};
  std::array<double, 3> semi_axes_max_mm{14.0, 14.0, 14.0};
  std::array<double, 2> base_hu_range{20.0, 60.0};
  bool retest = false;
  AcquisitionDelta retest_delta;
};

struct RunConfig {
  std::vector<SubjectConfig> subjects;
  features::ExtractionConfig extraction;
  std::vector<ChainSpec> chains;
  double icc_threshold = 0.90;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  int threads = 0;  // 0 = hardware concurrency
  double noise_constant = 0.6754;
  std::optional<PhantomCohortConfig> phantom;
  std::filesystem::path features_dir;    // robustness input; default output/features
  std::filesystem::path robustness_dir;  // report input; default output/robustness
  std::filesystem::path reference_table; // report reference ICC table (optional)

  std::string config_hash;  // fingerprint of the raw config document
};

/// Parse and validate the JSON configuration. Unknown keys are errors;
/// relative paths resolve against the config file location.
RunConfig load_config(const std::filesystem::path& path);

// Subcommand drivers. They throw radperturb::Error on failure; the CLI maps
// error categories onto exit codes.
void run_phantom(const RunConfig& config);
void run_extract(const RunConfig& config);
void run_robustness(const RunConfig& config);
void run_report(const RunConfig& config);

/// features/<subject>__ct<k>__<chain>.csv
std::filesystem::path feature_table_path(const std::filesystem::path& dir,
                                         const std::string& subject,
                                         int image_index,
                                         const std::string& chain_id);

/// robustness/icc__<chain>.csv (chain id "retest" for the reference table)
std::filesystem::path icc_table_path(const std::filesystem::path& dir,
                                     const std::string& chain_id);

}  // namespace radperturb::runner
