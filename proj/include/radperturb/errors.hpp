#pragma once

#include <stdexcept>
#include <string>

namespace radperturb {

/// Error categories surfaced by the library. The CLI maps these onto exit
/// codes; tests match on the category rather than the message text.
enum class errc {
  malformed_header,
  dimension_unsupported,
  data_size_mismatch,
  io_failure,
  geometry_mismatch,
  empty_mask,
  empty_roi,
  empty_intensity_mask,
  not_binarised,
  invalid_beta,
  volume_too_small,
  not_isotropic,
  unknown_chain,
  degenerate_mesh,
  zero_variance,
  degenerate_variance,
  too_few_subjects,
  zero_spread,
  schema_mismatch,
  spec_invalid,
  config_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace radperturb
