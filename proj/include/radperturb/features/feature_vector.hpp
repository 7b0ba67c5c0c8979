#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace radperturb::features {

/// Stable feature identifier: `<family>.<name>[@fbn<N>|@fbs<W>]@<spacing>mm`.
/// This string is the CSV column contract.
struct FeatureId {
  std::string family;
  std::string name;
  std::string discretisation;  // "" when the family is not discretised
  double spacing_mm = 0.0;

  std::string to_string() const;
  bool operator==(const FeatureId&) const = default;
};

/// Compact spacing / width formatting: "2" for 2.0, "1.5" for 1.5.
std::string format_compact(double value);

struct FeatureValue {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::string reason;  // set when value is NaN for a structural reason

  bool valid() const { return !std::isnan(value); }
};

/// The fixed, configuration-derived column layout shared by every instance.
struct FeatureSchema {
  std::vector<FeatureId> ids;

  std::size_t size() const { return ids.size(); }
};

/// Values in schema order. Instances of the same configuration share the
/// schema object.
struct FeatureVector {
  std::shared_ptr<const FeatureSchema> schema;
  std::vector<FeatureValue> values;

  explicit FeatureVector(std::shared_ptr<const FeatureSchema> s = nullptr)
      : schema(std::move(s)) {
    if (schema) values.resize(schema->size());
  }
};

}  // namespace radperturb::features
