#include "radperturb/chains.hpp"

#include <cmath>

#include "radperturb/errors.hpp"
#include "radperturb/rng.hpp"

namespace radperturb {
namespace {

std::vector<double> degree_range(double lo, double hi, double step) {
  std::vector<double> values;
  const int n = static_cast<int>(std::round((hi - lo) / step)) + 1;
  values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values.push_back(lo + i * step);
  return values;
}

// Seed domains for the three stochastic stages.
constexpr std::uint64_t kNoiseDomain = 0x6e6f697365ull;    // "noise"
constexpr std::uint64_t kVolumeDomain = 0x766f6c756dull;   // "volum"
constexpr std::uint64_t kContourDomain = 0x636f6e7472ull;  // "contr"

}  // namespace

const std::vector<std::string>& builtin_chain_ids() {
  static const std::vector<std::string> ids = {
      "R",    "N",    "T",  "V",   "C",    "RT",   "RNT",  "RV",      "RC",
      "TV",   "TC",   "RTC", "RNTC", "VC", "RVC",  "RNVC", "TVC",  "NTVC",
      "identity"};
  return ids;
}

ChainSpec builtin_chain(const std::string& id) {
  const std::vector<double> theta_full = degree_range(-13.0, 13.0, 1.0);
  const std::vector<double> theta_four = {-6.0, -2.0, 2.0, 6.0};
  const std::vector<double> theta_six = {-10.0, -6.0, -2.0, 2.0, 6.0, 10.0};
  const std::vector<double> eta_three = {0.0, 0.333, 0.667};
  const std::vector<double> eta_two = {0.25, 0.75};
  const std::vector<double> tau_five = {-0.2, -0.1, 0.0, 0.1, 0.2};
  const std::vector<double> tau_sweep = degree_range(-0.28, 0.28, 0.02);

  ChainSpec chain;
  chain.chain_id = id;
  if (id == "R") {
    chain.rotation_set = theta_full;
  } else if (id == "N") {
    chain.noise_repeats = 30;
  } else if (id == "T") {
    chain.translation_set = eta_three;
  } else if (id == "V") {
    chain.volume_set = tau_sweep;
  } else if (id == "C") {
    chain.contour_repeats = 30;
  } else if (id == "RT") {
    chain.rotation_set = theta_four;
    chain.translation_set = eta_two;
  } else if (id == "RNT") {
    chain.rotation_set = theta_four;
    chain.noise_repeats = 1;
    chain.translation_set = eta_two;
  } else if (id == "RV") {
    chain.rotation_set = theta_six;
    chain.volume_set = tau_five;
  } else if (id == "RC") {
    chain.rotation_set = theta_full;
    chain.contour_repeats = 1;
  } else if (id == "TV") {
    chain.translation_set = eta_two;
    chain.volume_set = tau_five;
  } else if (id == "TC") {
    chain.translation_set = eta_three;
    chain.contour_repeats = 1;
  } else if (id == "RTC") {
    chain.rotation_set = theta_four;
    chain.translation_set = eta_two;
    chain.contour_repeats = 1;
  } else if (id == "RNTC") {
    chain.rotation_set = theta_four;
    chain.noise_repeats = 1;
    chain.translation_set = eta_two;
    chain.contour_repeats = 1;
  } else if (id == "VC") {
    chain.volume_set = tau_five;
    chain.contour_repeats = 6;
  } else if (id == "RVC") {
    chain.rotation_set = theta_six;
    chain.volume_set = tau_five;
    chain.contour_repeats = 1;
  } else if (id == "RNVC") {
    chain.rotation_set = theta_six;
    chain.noise_repeats = 1;
    chain.volume_set = tau_five;
    chain.contour_repeats = 1;
  } else if (id == "TVC") {
    chain.translation_set = eta_two;
    chain.volume_set = tau_five;
    chain.contour_repeats = 1;
  } else if (id == "NTVC") {
    chain.noise_repeats = 1;
    chain.translation_set = eta_two;
    chain.volume_set = tau_five;
    chain.contour_repeats = 1;
  } else if (id == "identity") {
    // one neutral instance
  } else {
    fail(errc::unknown_chain, "'" + id + "' is not a catalogue chain");
  }
  return chain;
}

std::vector<PerturbationSpec> expand_chain(const ChainSpec& chain,
                                           std::uint64_t master_seed) {
  const std::vector<double> rotations =
      chain.rotation_set.empty() ? std::vector<double>{0.0} : chain.rotation_set;
  const int noise_reps = std::max(0, chain.noise_repeats);
  const std::vector<double> volumes =
      chain.volume_set.empty() ? std::vector<double>{0.0} : chain.volume_set;
  const int contour_reps = std::max(0, chain.contour_repeats);

  // All |eta|^3 axis permutations, lexicographic with x fastest inner factor.
  std::vector<std::array<double, 3>> shifts;
  if (chain.translation_set.empty()) {
    shifts.push_back({0.0, 0.0, 0.0});
  } else {
    for (double sx : chain.translation_set)
      for (double sy : chain.translation_set)
        for (double sz : chain.translation_set)
          shifts.push_back({sx, sy, sz});
  }

  std::vector<PerturbationSpec> instances;
  instances.reserve(rotations.size() * std::max(1, noise_reps) *
                    shifts.size() * volumes.size() *
                    std::max(1, contour_reps));
  std::uint64_t index = 0;
  for (double theta : rotations)
    for (int noise_rep = 0; noise_rep < std::max(1, noise_reps); ++noise_rep)
      for (const auto& shift : shifts)
        for (double tau : volumes)
          for (int contour_rep = 0; contour_rep < std::max(1, contour_reps);
               ++contour_rep) {
            PerturbationSpec spec;
            spec.rotation_deg = theta;
            spec.add_noise = noise_reps > 0;
            spec.shift = shift;
            spec.volume_fraction = tau;
            spec.randomise_contour = contour_reps > 0;
            spec.noise_seed = hash_combine(master_seed, index, kNoiseDomain);
            spec.volume_seed = hash_combine(master_seed, index, kVolumeDomain);
            spec.contour_seed =
                hash_combine(master_seed, index, kContourDomain);
            instances.push_back(spec);
            ++index;
          }
  return instances;
}

}  // namespace radperturb
