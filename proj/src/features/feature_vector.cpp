#include "radperturb/features/feature_vector.hpp"

#include <charconv>

namespace radperturb::features {

std::string format_compact(double value) {
  char buffer[32];
  const auto [end, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, end);
}

std::string FeatureId::to_string() const {
  std::string out = family;
  out += '.';
  out += name;
  if (!discretisation.empty()) {
    out += '@';
    out += discretisation;
  }
  out += '@';
  out += format_compact(spacing_mm);
  out += "mm";
  return out;
}

}  // namespace radperturb::features
