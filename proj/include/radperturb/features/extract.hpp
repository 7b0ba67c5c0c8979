#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "radperturb/chains.hpp"
#include "radperturb/features/discretise.hpp"
#include "radperturb/features/feature_vector.hpp"
#include "radperturb/perturb.hpp"
#include "radperturb/preprocess.hpp"
#include "radperturb/volume.hpp"

namespace radperturb::features {

/// Everything the extraction pipeline needs beyond the inputs themselves.
struct ExtractionConfig {
  std::vector<double> spacings{1.0, 2.0, 3.0, 4.0};
  double beta = 0.93;
  ResegmentationSpec reseg{};
  std::vector<DiscretisationSpec> discretisations;  // empty = default 8
  double mask_threshold = 0.5;

  /// Default discretisations: FBN 8/16/32/64 and FBS 6/12/18/24 anchored at
  /// the lower re-segmentation edge.
  std::vector<DiscretisationSpec> resolved_discretisations() const;
};

/// Column layout implied by a configuration: per spacing the non-discretised
/// families (stat, morph, ivh, autocorr), then per discretisation the
/// discretised families (ih, glcm, glrlm, glszm, gldzm, ngtdm, ngldm).
std::shared_ptr<const FeatureSchema> build_schema(const ExtractionConfig& config);

/// Family extraction at one spacing from pipeline-processed inputs (resampled
/// isotropic image + thresholded masks after re-segmentation).
void extract_at_spacing(const Volume& volume, const RoiPair& rois,
                        double spacing_mm, const ExtractionConfig& config,
                        FeatureVector& out, std::size_t offset);

/// Full extraction of one image + mask: for each configured spacing, run the
/// processing pipeline (optionally with a perturbation instance: rotation ->
/// noise -> shifted interpolation -> HU rounding -> mask thresholding ->
/// volume adaptation -> contour randomisation -> re-segmentation) and fill
/// the fixed schema. Failures degrade to NaN entries with reason codes.
FeatureVector extract_all(const Volume& image, const RoiMask& mask,
                          const ExtractionConfig& config,
                          const PerturbationSpec* perturbation = nullptr,
                          const NoiseEstimate* noise = nullptr);

}  // namespace radperturb::features
