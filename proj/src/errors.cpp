#include "radperturb/errors.hpp"

namespace radperturb {

const char* errc_name(errc code) {
  switch (code) {
    case errc::malformed_header: return "MalformedHeader";
    case errc::dimension_unsupported: return "DimensionUnsupported";
    case errc::data_size_mismatch: return "DataSizeMismatch";
    case errc::io_failure: return "IoFailure";
    case errc::geometry_mismatch: return "GeometryMismatch";
    case errc::empty_mask: return "EmptyMask";
    case errc::empty_roi: return "EmptyRoi";
    case errc::empty_intensity_mask: return "EmptyIntensityMask";
    case errc::not_binarised: return "NotBinarised";
    case errc::invalid_beta: return "InvalidBeta";
    case errc::volume_too_small: return "VolumeTooSmall";
    case errc::not_isotropic: return "NotIsotropic";
    case errc::unknown_chain: return "UnknownChain";
    case errc::degenerate_mesh: return "DegenerateMesh";
    case errc::zero_variance: return "ZeroVariance";
    case errc::degenerate_variance: return "DegenerateVariance";
    case errc::too_few_subjects: return "TooFewSubjects";
    case errc::zero_spread: return "ZeroSpread";
    case errc::schema_mismatch: return "SchemaMismatch";
    case errc::spec_invalid: return "SpecInvalid";
    case errc::config_error: return "ConfigError";
  }
  return "Error";
}

}  // namespace radperturb
