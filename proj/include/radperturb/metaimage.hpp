#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radperturb/volume.hpp"

namespace radperturb {

// MetaImage (.mhd) subset: text header followed by a little-endian raw
// payload, either inline (ElementDataFile = LOCAL) or in a sibling file.
// Supported element types: MET_CHAR, MET_SHORT, MET_INT, MET_FLOAT,
// MET_DOUBLE. Unknown header keys are ignored with a warning; compressed or
// big-endian payloads are rejected.

struct LoadOptions {
  /// Receives one message per ignored header key when non-null.
  std::vector<std::string>* warnings = nullptr;
};

Volume load_metaimage(const std::filesystem::path& path,
                      const LoadOptions& options = {});

/// Writes header + inline payload such that load_metaimage is the exact
/// inverse for integer-valued volumes. The payload uses volume.stored_type;
/// writing a value not representable in an integral stored_type fails.
void save_metaimage(const Volume& volume, const std::filesystem::path& path);

/// Masks are persisted as MET_DOUBLE volumes so fractional occupancy
/// round-trips exactly.
void save_metaimage(const RoiMask& mask, const std::filesystem::path& path);

RoiMask load_mask_metaimage(const std::filesystem::path& path,
                            const LoadOptions& options = {});

}  // namespace radperturb
