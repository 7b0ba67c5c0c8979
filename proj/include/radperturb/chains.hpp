#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace radperturb {

/// One fully resolved perturbation instance. All randomness is carried in
/// the explicit per-stage seeds, so an instance determines its perturbed
/// image completely.
struct PerturbationSpec {
  double rotation_deg = 0.0;
  bool add_noise = false;
  std::uint64_t noise_seed = 0;
  std::array<double, 3> shift{0.0, 0.0, 0.0};
  double volume_fraction = 0.0;
  std::uint64_t volume_seed = 0;
  bool randomise_contour = false;
  std::uint64_t contour_seed = 0;
  double target_spacing = 1.0;
  double beta = 0.93;

  bool neutral() const {
    return rotation_deg == 0.0 && !add_noise && shift[0] == 0.0 &&
           shift[1] == 0.0 && shift[2] == 0.0 && volume_fraction == 0.0 &&
           !randomise_contour;
  }
};

/// Declarative perturbation chain: the factor lists whose Cartesian product
/// expands into concrete instances. Translation fractions are permuted over
/// the three axes (|translation_set|^3 shift triples).
struct ChainSpec {
  std::string chain_id;
  std::vector<double> rotation_set;     // degrees; empty = no rotation
  int noise_repeats = 0;                // 0 = no noise stage
  std::vector<double> translation_set;  // voxel fractions; empty = no shift
  std::vector<double> volume_set;       // growth fractions; empty = none
  int contour_repeats = 0;              // 0 = no contour stage
};

/// The built-in chain catalogue ids, in canonical order, plus "identity"
/// (single neutral instance, used for test-retest style extraction).
const std::vector<std::string>& builtin_chain_ids();

/// Look up a built-in chain; throws UnknownChain for anything else.
ChainSpec builtin_chain(const std::string& id);

/// Expand a chain into its instances. Instance order is lexicographic over
/// the factor lists (rotation, noise repeat, shift triple, volume fraction,
/// contour repeat); per-stage seeds derive from hash(master_seed, index).
std::vector<PerturbationSpec> expand_chain(const ChainSpec& chain,
                                           std::uint64_t master_seed);

}  // namespace radperturb
