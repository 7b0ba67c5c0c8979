#include "radperturb/features/extract.hpp"

#include <cmath>

#include "radperturb/errors.hpp"
#include "radperturb/features/autocorrelation.hpp"
#include "radperturb/features/intensity.hpp"
#include "radperturb/features/morphology.hpp"
#include "radperturb/features/texture.hpp"
#include "radperturb/rng.hpp"
#include "radperturb/slic.hpp"

namespace radperturb::features {
namespace {

constexpr std::uint64_t kAutocorrelationSeedBase = 0x6d6f72616eull;  // "moran"

const char* const kStatNames[] = {
    "mean", "variance", "skewness",  "kurtosis", "median", "min",
    "p10",  "p90",      "max",       "iqr",      "range",  "mad",
    "rmad", "medad",    "cov",       "qcod",     "energy", "rms"};
const char* const kMorphNames[] = {"volume_voxel", "volume_mesh",
                                   "surface_area", "sphericity",
                                   "compactness1"};
const char* const kIvhNames[] = {"v10", "v90", "i10",
                                 "i90", "v10_minus_v90", "i10_minus_i90"};
const char* const kAutocorrNames[] = {"moran_i", "geary_c"};
const char* const kHistogramNames[] = {"mean",   "variance", "skewness",
                                       "kurtosis", "median", "mode",
                                       "entropy",  "uniformity"};
const char* const kGlcmNames[] = {
    "joint_max", "joint_entropy",   "asm",     "contrast",
    "dissimilarity", "inv_diff", "inv_diff_moment", "correlation"};
const char* const kGlrlmNames[] = {"sre", "lre", "lgre", "hgre",
                                   "gln", "rln", "rp"};
const char* const kGlszmNames[] = {"sze", "lze", "gln", "zsn", "zp"};
const char* const kGldzmNames[] = {"sde", "lde", "gln", "zdn"};
const char* const kNgtdmNames[] = {"coarseness", "contrast", "busyness",
                                   "complexity", "strength"};
const char* const kNgldmNames[] = {"lde", "hde", "dcn", "dce"};

constexpr std::size_t kPlainFamilySize = 18 + 5 + 6 + 2;
constexpr std::size_t kDiscretisedFamilySize = 8 + 8 + 7 + 5 + 4 + 5 + 4;

/// Writer that appends values (or family-wide NaN) in schema order.
class SlotWriter {
 public:
  SlotWriter(FeatureVector& vector, std::size_t offset)
      : vector_(vector), cursor_(offset) {}

  void push(double value) { vector_.values[cursor_++].value = value; }

  void push(double value, const char* reason_if_nan) {
    FeatureValue& slot = vector_.values[cursor_++];
    slot.value = value;
    if (std::isnan(value)) slot.reason = reason_if_nan;
  }

  void push_failed(std::size_t count, const std::string& reason) {
    for (std::size_t i = 0; i < count; ++i) {
      FeatureValue& slot = vector_.values[cursor_++];
      slot.value = std::numeric_limits<double>::quiet_NaN();
      slot.reason = reason;
    }
  }

  std::size_t cursor() const { return cursor_; }

 private:
  FeatureVector& vector_;
  std::size_t cursor_;
};

}  // namespace

std::vector<DiscretisationSpec> ExtractionConfig::resolved_discretisations()
    const {
  if (!discretisations.empty()) return discretisations;
  std::vector<DiscretisationSpec> specs;
  for (int bins : {8, 16, 32, 64}) specs.push_back(DiscretisationSpec::fbn(bins));
  for (double width : {6.0, 12.0, 18.0, 24.0})
    specs.push_back(DiscretisationSpec::fbs(width, reseg.range_low));
  return specs;
}

std::shared_ptr<const FeatureSchema> build_schema(
    const ExtractionConfig& config) {
  auto schema = std::make_shared<FeatureSchema>();
  const auto discs = config.resolved_discretisations();
  for (double spacing : config.spacings) {
    auto add = [&](const char* family, const char* name,
                   const std::string& disc = "") {
      schema->ids.push_back(FeatureId{family, name, disc, spacing});
    };
    for (const char* name : kStatNames) add("stat", name);
    for (const char* name : kMorphNames) add("morph", name);
    for (const char* name : kIvhNames) add("ivh", name);
    for (const char* name : kAutocorrNames) add("autocorr", name);
    for (const auto& disc : discs) {
      const std::string tag = disc.tag();
      for (const char* name : kHistogramNames) add("ih", name, tag);
      for (const char* name : kGlcmNames) add("glcm", name, tag);
      for (const char* name : kGlrlmNames) add("glrlm", name, tag);
      for (const char* name : kGlszmNames) add("glszm", name, tag);
      for (const char* name : kGldzmNames) add("gldzm", name, tag);
      for (const char* name : kNgtdmNames) add("ngtdm", name, tag);
      for (const char* name : kNgldmNames) add("ngldm", name, tag);
    }
  }
  return schema;
}

void extract_at_spacing(const Volume& volume, const RoiPair& rois,
                        double spacing_mm, const ExtractionConfig& config,
                        FeatureVector& out, std::size_t offset) {
  SlotWriter writer(out, offset);

  std::vector<double> intensities;
  std::vector<std::array<double, 3>> positions;
  const Grid& g = volume.grid;
  for (int z = 0; z < g.dims[2]; ++z)
    for (int y = 0; y < g.dims[1]; ++y)
      for (int x = 0; x < g.dims[0]; ++x) {
        if (rois.intensity.at(x, y, z) != 1.0) continue;
        intensities.push_back(volume.at(x, y, z));
        positions.push_back(g.world(x, y, z));
      }

  try {
    const IntensityStats stats = intensity_statistics(intensities);
    writer.push(stats.mean);
    writer.push(stats.variance);
    writer.push(stats.skewness);
    writer.push(stats.kurtosis);
    writer.push(stats.median);
    writer.push(stats.minimum);
    writer.push(stats.p10);
    writer.push(stats.p90);
    writer.push(stats.maximum);
    writer.push(stats.iqr);
    writer.push(stats.range);
    writer.push(stats.mean_abs_dev);
    writer.push(stats.robust_mean_abs_dev);
    writer.push(stats.median_abs_dev);
    writer.push(stats.cov, "zero mean");
    writer.push(stats.qcod, "zero quartile sum");
    writer.push(stats.energy);
    writer.push(stats.rms);
  } catch (const Error& e) {
    writer.push_failed(18, errc_name(e.code()));
  }

  try {
    const MorphologyFeatures morph = morphology_features(rois.morphological);
    writer.push(morph.volume_voxel);
    writer.push(morph.volume_mesh);
    writer.push(morph.surface_area);
    writer.push(morph.sphericity);
    writer.push(morph.compactness1);
  } catch (const Error& e) {
    writer.push_failed(5, errc_name(e.code()));
  }

  try {
    const IvhFeatures ivh = ivh_features(intensities);
    writer.push(ivh.volume_fraction[0]);
    writer.push(ivh.volume_fraction[4]);
    writer.push(ivh.intensity[0]);
    writer.push(ivh.intensity[4]);
    writer.push(ivh.v10_minus_v90);
    writer.push(ivh.i10_minus_i90);
  } catch (const Error& e) {
    writer.push_failed(6, errc_name(e.code()));
  }

  try {
    const AutocorrelationFeatures autocorr = moran_geary(
        intensities, positions,
        hash_combine(kAutocorrelationSeedBase,
                     static_cast<std::uint64_t>(std::llround(spacing_mm * 1000.0))));
    writer.push(autocorr.moran_i);
    writer.push(autocorr.geary_c);
  } catch (const Error& e) {
    writer.push_failed(2, errc_name(e.code()));
  }

  for (const auto& disc : config.resolved_discretisations()) {
    DiscretisedRoi roi;
    try {
      roi = discretise(volume, rois.intensity, disc);
    } catch (const Error& e) {
      writer.push_failed(kDiscretisedFamilySize, errc_name(e.code()));
      continue;
    }

    std::vector<int> roi_levels;
    roi_levels.reserve(intensities.size());
    for (int level : roi.levels)
      if (level > 0) roi_levels.push_back(level);

    try {
      const HistogramFeatures ih = histogram_features(roi_levels, roi.n_levels);
      writer.push(ih.mean);
      writer.push(ih.variance);
      writer.push(ih.skewness);
      writer.push(ih.kurtosis);
      writer.push(ih.median);
      writer.push(ih.mode);
      writer.push(ih.entropy);
      writer.push(ih.uniformity);
    } catch (const Error& e) {
      writer.push_failed(8, errc_name(e.code()));
    }

    try {
      const GlcmFeatures glcm = glcm_features(roi);
      writer.push(glcm.joint_max);
      writer.push(glcm.joint_entropy);
      writer.push(glcm.angular_second_moment);
      writer.push(glcm.contrast);
      writer.push(glcm.dissimilarity);
      writer.push(glcm.inverse_difference);
      writer.push(glcm.inverse_difference_moment);
      writer.push(glcm.correlation, "degenerate marginal");
    } catch (const Error& e) {
      writer.push_failed(8, errc_name(e.code()));
    }

    try {
      const GlrlmFeatures glrlm = glrlm_features(roi);
      writer.push(glrlm.short_run_emphasis);
      writer.push(glrlm.long_run_emphasis);
      writer.push(glrlm.low_grey_level_run_emphasis);
      writer.push(glrlm.high_grey_level_run_emphasis);
      writer.push(glrlm.grey_level_non_uniformity);
      writer.push(glrlm.run_length_non_uniformity);
      writer.push(glrlm.run_percentage);
    } catch (const Error& e) {
      writer.push_failed(7, errc_name(e.code()));
    }

    try {
      const GlszmFeatures glszm = glszm_features(roi, rois.morphological);
      writer.push(glszm.small_zone_emphasis);
      writer.push(glszm.large_zone_emphasis);
      writer.push(glszm.grey_level_non_uniformity);
      writer.push(glszm.zone_size_non_uniformity);
      writer.push(glszm.zone_percentage);
    } catch (const Error& e) {
      writer.push_failed(5, errc_name(e.code()));
    }

    try {
      const GldzmFeatures gldzm = gldzm_features(roi, rois.morphological);
      writer.push(gldzm.small_distance_emphasis);
      writer.push(gldzm.large_distance_emphasis);
      writer.push(gldzm.grey_level_non_uniformity);
      writer.push(gldzm.zone_distance_non_uniformity);
    } catch (const Error& e) {
      writer.push_failed(4, errc_name(e.code()));
    }

    try {
      const NgtdmFeatures ngtdm = ngtdm_features(roi);
      if (!ngtdm.valid) {
        writer.push_failed(5, "no valid neighbourhood");
      } else {
        writer.push(ngtdm.coarseness);
        writer.push(ngtdm.contrast);
        writer.push(ngtdm.busyness);
        writer.push(ngtdm.complexity);
        writer.push(ngtdm.strength);
      }
    } catch (const Error& e) {
      writer.push_failed(5, errc_name(e.code()));
    }

    try {
      const NgldmFeatures ngldm = ngldm_features(roi);
      writer.push(ngldm.low_dependence_emphasis);
      writer.push(ngldm.high_dependence_emphasis);
      writer.push(ngldm.dependence_count_non_uniformity);
      writer.push(ngldm.dependence_count_entropy);
    } catch (const Error& e) {
      writer.push_failed(4, errc_name(e.code()));
    }
  }
}

FeatureVector extract_all(const Volume& image, const RoiMask& mask,
                          const ExtractionConfig& config,
                          const PerturbationSpec* perturbation,
                          const NoiseEstimate* noise) {
  FeatureVector vector(build_schema(config));
  const std::size_t per_disc = kDiscretisedFamilySize;
  const std::size_t block =
      kPlainFamilySize + per_disc * config.resolved_discretisations().size();

  // Noise level always comes from the original image, before any
  // perturbation.
  NoiseEstimate estimate{0.0};
  if (perturbation && perturbation->add_noise)
    estimate = noise ? *noise : estimate_noise_sigma(image);

  // Stages on the native grid are shared by all spacings.
  Volume staged_image = image;
  RoiMask staged_mask = mask;
  if (perturbation && perturbation->rotation_deg != 0.0) {
    RotateResult rotated =
        rotate_inplane(staged_image, staged_mask, perturbation->rotation_deg);
    staged_image = std::move(rotated.volume);
    staged_mask = std::move(rotated.mask);
  }
  if (perturbation && perturbation->add_noise)
    staged_image = add_noise(staged_image, estimate, perturbation->noise_seed);

  for (std::size_t si = 0; si < config.spacings.size(); ++si) {
    const std::size_t offset = si * block;
    try {
      InterpolationSpec interp;
      interp.target_spacing = config.spacings[si];
      interp.beta = config.beta;
      if (perturbation) interp.shift = perturbation->shift;

      ResampleResult resampled = resample(staged_image, staged_mask, interp);
      const Volume working = round_hu(resampled.volume);
      RoiMask working_mask =
          threshold_mask(resampled.mask, config.mask_threshold);

      if (perturbation && perturbation->volume_fraction != 0.0)
        working_mask = adapt_volume(working_mask, perturbation->volume_fraction,
                                    perturbation->volume_seed);
      if (perturbation && perturbation->randomise_contour)
        working_mask = randomize_contour(working, working_mask, config.reseg,
                                         perturbation->contour_seed);

      const RoiPair rois = resegment(working, working_mask, config.reseg);
      extract_at_spacing(working, rois, config.spacings[si], config, vector,
                         offset);
    } catch (const Error& e) {
      for (std::size_t i = offset; i < offset + block; ++i) {
        vector.values[i].value = std::numeric_limits<double>::quiet_NaN();
        vector.values[i].reason = errc_name(e.code());
      }
    }
  }
  return vector;
}

}  // namespace radperturb::features
