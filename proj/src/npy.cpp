#include <cstring>
#include <fstream>
#include <sstream>

#include "msaug/io.hpp"

namespace msaug {
namespace {

constexpr char kMagic[] = "\x93NUMPY";

std::string header_value(const std::string& header, const std::string& key) {
  const auto pos = header.find("'" + key + "'");
  if (pos == std::string::npos) throw Error("npy header lacks '" + key + "'");
  auto colon = header.find(':', pos);
  if (colon == std::string::npos) throw Error("malformed npy header");
  ++colon;
  while (colon < header.size() && header[colon] == ' ') ++colon;
  if (header[colon] == '(') {
    const auto close = header.find(')', colon);
    return header.substr(colon, close - colon + 1);
  }
  if (header[colon] == '\'') {
    const auto close = header.find('\'', colon + 1);
    return header.substr(colon + 1, close - colon - 1);
  }
  auto end = header.find_first_of(",}", colon);
  return header.substr(colon, end - colon);
}

std::vector<std::size_t> parse_shape(const std::string& tuple) {
  std::vector<std::size_t> shape;
  std::string inner = tuple.substr(1, tuple.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    shape.push_back(std::stoull(item.substr(first)));
  }
  return shape;
}

template <class T>
void convert(const std::uint8_t* src, std::size_t n, std::vector<double>& out) {
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    T v;
    std::memcpy(&v, src + i * sizeof(T), sizeof(T));
    out[i] = static_cast<double>(v);
  }
}

std::string shape_tuple(std::span<const std::size_t> shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  if (shape.size() == 1) s += ",";
  return s + ")";
}

std::vector<std::uint8_t> encode(std::span<const std::size_t> shape, const char* descr,
                                 const void* data, std::size_t bytes) {
  std::string header = std::string("{'descr': '") + descr +
                       "', 'fortran_order': False, 'shape': " + shape_tuple(shape) + ", }";
  const std::size_t unpadded = 10 + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::vector<std::uint8_t> out;
  out.reserve(10 + header.size() + bytes);
  out.insert(out.end(), kMagic, kMagic + 6);
  out.push_back(1);
  out.push_back(0);
  out.push_back(static_cast<std::uint8_t>(header.size() & 0xff));
  out.push_back(static_cast<std::uint8_t>(header.size() >> 8));
  out.insert(out.end(), header.begin(), header.end());
  const auto* p = static_cast<const std::uint8_t*>(data);
  out.insert(out.end(), p, p + bytes);
  return out;
}

std::size_t element_count(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

}  // namespace

NpyArray parse_npy(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 10 || std::memcmp(bytes.data(), kMagic, 6) != 0) {
    throw Error("not an npy file");
  }
  const int major = bytes[6];
  std::size_t header_len = 0;
  std::size_t offset = 0;
  if (major == 1) {
    header_len = bytes[8] | (std::size_t{bytes[9]} << 8);
    offset = 10;
  } else if (major == 2 || major == 3) {
    if (bytes.size() < 12) throw Error("truncated npy header");
    header_len = bytes[8] | (std::size_t{bytes[9]} << 8) | (std::size_t{bytes[10]} << 16) |
                 (std::size_t{bytes[11]} << 24);
    offset = 12;
  } else {
    throw Error("unsupported npy version " + std::to_string(major));
  }
  if (bytes.size() < offset + header_len) throw Error("truncated npy header");
  const std::string header(reinterpret_cast<const char*>(bytes.data() + offset), header_len);

  NpyArray arr;
  arr.descr = header_value(header, "descr");
  if (header_value(header, "fortran_order").find("True") != std::string::npos) {
    throw Error("fortran-ordered npy arrays are not supported");
  }
  arr.shape = parse_shape(header_value(header, "shape"));
  const std::size_t n = element_count(arr.shape);

  if (arr.descr.size() < 3 || arr.descr[0] == '>') {
    throw Error("unsupported npy dtype '" + arr.descr + "'");
  }
  const std::string code = arr.descr.substr(1);
  const std::uint8_t* data = bytes.data() + offset + header_len;
  const std::size_t available = bytes.size() - offset - header_len;

  auto need = [&](std::size_t elem) {
    if (available < n * elem) throw Error("npy payload shorter than its shape");
  };
  if (code == "f8") { need(8); convert<double>(data, n, arr.data); }
  else if (code == "f4") { need(4); convert<float>(data, n, arr.data); }
  else if (code == "i8") { need(8); convert<std::int64_t>(data, n, arr.data); }
  else if (code == "u8") { need(8); convert<std::uint64_t>(data, n, arr.data); }
  else if (code == "i4") { need(4); convert<std::int32_t>(data, n, arr.data); }
  else if (code == "u4") { need(4); convert<std::uint32_t>(data, n, arr.data); }
  else if (code == "i2") { need(2); convert<std::int16_t>(data, n, arr.data); }
  else if (code == "u2") { need(2); convert<std::uint16_t>(data, n, arr.data); }
  else if (code == "i1") { need(1); convert<std::int8_t>(data, n, arr.data); }
  else if (code == "u1" || code == "b1") { need(1); convert<std::uint8_t>(data, n, arr.data); }
  else throw Error("unsupported npy dtype '" + arr.descr + "'");
  return arr;
}

NpyArray read_npy(const fs::path& path) { return parse_npy(read_file_bytes(path)); }

std::vector<std::uint8_t> encode_npy(std::span<const std::size_t> shape, std::span<const double> data) {
  if (element_count(shape) != data.size()) throw Error("npy shape does not match data");
  return encode(shape, "<f8", data.data(), data.size_bytes());
}

std::vector<std::uint8_t> encode_npy(std::span<const std::size_t> shape,
                                     std::span<const std::int32_t> data) {
  if (element_count(shape) != data.size()) throw Error("npy shape does not match data");
  return encode(shape, "<i4", data.data(), data.size_bytes());
}

void write_npy(const fs::path& path, std::span<const std::size_t> shape, std::span<const double> data) {
  write_file_bytes(path, encode_npy(shape, data));
}

void write_npy(const fs::path& path, std::span<const std::size_t> shape,
               std::span<const std::int32_t> data) {
  write_file_bytes(path, encode_npy(shape, data));
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

void write_text_file(const fs::path& path, const std::string& text) {
  write_file_bytes(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

}  // namespace msaug
