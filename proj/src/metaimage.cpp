#include "radperturb/metaimage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "radperturb/errors.hpp"

namespace radperturb {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

ElementType parse_element_type(const std::string& name) {
  if (name == "MET_CHAR") return ElementType::Int8;
  if (name == "MET_SHORT") return ElementType::Int16;
  if (name == "MET_INT") return ElementType::Int32;
  if (name == "MET_FLOAT") return ElementType::Float32;
  if (name == "MET_DOUBLE") return ElementType::Float64;
  fail(errc::malformed_header, "unsupported ElementType '" + name + "'");
}

template <typename T>
void decode(const std::vector<char>& raw, std::vector<double>& out) {
  const std::size_t n = raw.size() / sizeof(T);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    T value;
    std::memcpy(&value, raw.data() + i * sizeof(T), sizeof(T));
    out[i] = static_cast<double>(value);
  }
}

template <typename T>
void encode_integral(const std::vector<double>& values, std::vector<char>& raw) {
  raw.resize(values.size() * sizeof(T));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v != std::floor(v) ||
        v < static_cast<double>(std::numeric_limits<T>::min()) ||
        v > static_cast<double>(std::numeric_limits<T>::max()))
      fail(errc::io_failure,
           "value not representable in the declared integer element type");
    const T out = static_cast<T>(v);
    std::memcpy(raw.data() + i * sizeof(T), &out, sizeof(T));
  }
}

template <typename T>
void encode_real(const std::vector<double>& values, std::vector<char>& raw) {
  raw.resize(values.size() * sizeof(T));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const T out = static_cast<T>(values[i]);
    std::memcpy(raw.data() + i * sizeof(T), &out, sizeof(T));
  }
}

std::vector<double> parse_triple(const std::string& value, const char* key) {
  std::istringstream in(value);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (out.size() != 3)
    fail(errc::malformed_header,
         std::string(key) + " must hold exactly 3 values");
  return out;
}

}  // namespace

Volume load_metaimage(const std::filesystem::path& path,
                      const LoadOptions& options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) fail(errc::io_failure, "cannot open '" + path.string() + "'");

  bool seen_object_type = false;
  bool seen_ndims = false;
  bool seen_dims = false;
  bool seen_spacing = false;
  bool seen_type = false;
  std::string data_file;
  Grid grid;
  ElementType type = ElementType::Int16;

  std::string line;
  while (std::getline(file, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::malformed_header, "header line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "ObjectType") {
      if (value != "Image")
        fail(errc::malformed_header, "ObjectType must be Image");
      seen_object_type = true;
    } else if (key == "NDims") {
      if (value != "3")
        fail(errc::dimension_unsupported, "NDims must be 3, got " + value);
      seen_ndims = true;
    } else if (key == "DimSize") {
      const auto d = parse_triple(value, "DimSize");
      for (int a = 0; a < 3; ++a) {
        if (d[a] < 1 || d[a] != std::floor(d[a]))
          fail(errc::malformed_header, "DimSize must be positive integers");
        grid.dims[a] = static_cast<int>(d[a]);
      }
      seen_dims = true;
    } else if (key == "ElementSpacing") {
      const auto s = parse_triple(value, "ElementSpacing");
      for (int a = 0; a < 3; ++a) {
        if (!(s[a] > 0.0))
          fail(errc::malformed_header, "ElementSpacing must be > 0");
        grid.spacing[a] = s[a];
      }
      seen_spacing = true;
    } else if (key == "Offset" || key == "Origin" || key == "Position") {
      const auto o = parse_triple(value, "Offset");
      for (int a = 0; a < 3; ++a) grid.origin[a] = o[a];
    } else if (key == "ElementType") {
      type = parse_element_type(value);
      seen_type = true;
    } else if (key == "BinaryData") {
      if (value != "True")
        fail(errc::malformed_header, "only binary payloads are supported");
    } else if (key == "BinaryDataByteOrderMSB" || key == "ElementByteOrderMSB") {
      if (value != "False")
        fail(errc::malformed_header, "big-endian payloads are unsupported");
    } else if (key == "CompressedData") {
      if (value != "False")
        fail(errc::malformed_header, "compressed payloads are unsupported");
    } else if (key == "ElementDataFile") {
      data_file = value;
      break;  // payload (or reference to it) starts here
    } else {
      if (options.warnings)
        options.warnings->push_back("ignoring unknown header key '" + key +
                                    "'");
    }
  }

  if (!seen_object_type || !seen_ndims || !seen_dims || !seen_spacing ||
      !seen_type || data_file.empty())
    fail(errc::malformed_header, "missing mandatory header key");

  std::vector<char> raw;
  if (data_file == "LOCAL") {
    raw.assign(std::istreambuf_iterator<char>(file),
               std::istreambuf_iterator<char>());
  } else {
    const auto sibling = path.parent_path() / data_file;
    std::ifstream data(sibling, std::ios::binary);
    if (!data) fail(errc::io_failure, "cannot open '" + sibling.string() + "'");
    raw.assign(std::istreambuf_iterator<char>(data),
               std::istreambuf_iterator<char>());
  }

  Volume volume(grid);
  volume.stored_type = type;
  const std::size_t expected = grid.voxel_count() * element_size(type);
  if (raw.size() != expected)
    fail(errc::data_size_mismatch,
         "payload holds " + std::to_string(raw.size()) + " bytes, expected " +
             std::to_string(expected));

  switch (type) {
    case ElementType::Int8: decode<std::int8_t>(raw, volume.values); break;
    case ElementType::Int16: decode<std::int16_t>(raw, volume.values); break;
    case ElementType::Int32: decode<std::int32_t>(raw, volume.values); break;
    case ElementType::Float32: decode<float>(raw, volume.values); break;
    case ElementType::Float64: decode<double>(raw, volume.values); break;
  }
  return volume;
}

void save_metaimage(const Volume& volume, const std::filesystem::path& path) {
  std::vector<char> raw;
  switch (volume.stored_type) {
    case ElementType::Int8: encode_integral<std::int8_t>(volume.values, raw); break;
    case ElementType::Int16: encode_integral<std::int16_t>(volume.values, raw); break;
    case ElementType::Int32: encode_integral<std::int32_t>(volume.values, raw); break;
    case ElementType::Float32: encode_real<float>(volume.values, raw); break;
    case ElementType::Float64: encode_real<double>(volume.values, raw); break;
  }

  std::ostringstream header;
  header << "ObjectType = Image\n"
         << "NDims = 3\n"
         << "BinaryData = True\n"
         << "BinaryDataByteOrderMSB = False\n"
         << "CompressedData = False\n";
  header << "DimSize = " << volume.grid.dims[0] << ' ' << volume.grid.dims[1]
         << ' ' << volume.grid.dims[2] << '\n';
  auto write_triple = [&header](const char* key,
                                const std::array<double, 3>& v) {
    header << key << " = ";
    header.precision(17);
    header << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  };
  write_triple("ElementSpacing", volume.grid.spacing);
  write_triple("Offset", volume.grid.origin);
  header << "ElementType = " << element_type_name(volume.stored_type) << '\n'
         << "ElementDataFile = LOCAL\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_failure, "cannot write '" + path.string() + "'");
  const std::string head = header.str();
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) fail(errc::io_failure, "write failed for '" + path.string() + "'");
}

void save_metaimage(const RoiMask& mask, const std::filesystem::path& path) {
  Volume as_volume(mask.grid);
  as_volume.values = mask.occupancy;
  as_volume.stored_type = ElementType::Float64;
  save_metaimage(as_volume, path);
}

RoiMask load_mask_metaimage(const std::filesystem::path& path,
                            const LoadOptions& options) {
  return mask_from_volume(load_metaimage(path, options));
}

}  // namespace radperturb
