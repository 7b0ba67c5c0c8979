#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace radperturb {

/// Shortest round-trip decimal formatting; NaN serialises as "NaN".
inline std::string format_double(double value) {
  if (std::isnan(value)) return "NaN";
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, end);
}

inline double parse_double(std::string_view text) {
  if (text == "NaN" || text == "nan")
    return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    value = std::numeric_limits<double>::quiet_NaN();
  return value;
}

/// FNV-1a over raw bytes; used for config fingerprints in run manifests.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string to_hex(std::uint64_t value);

/// Run fn(i) for i in [0, n) across a worker pool. Work items must be
/// independent; results must be written to pre-assigned slots so the thread
/// count cannot influence output.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

}  // namespace radperturb
