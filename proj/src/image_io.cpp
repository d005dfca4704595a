#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "msaug/io.hpp"

namespace msaug {
namespace {

std::string lower_ext(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// Skips whitespace and '#' comments in a PNM header.
std::size_t pnm_token(const std::vector<std::uint8_t>& buf, std::size_t& pos) {
  for (;;) {
    while (pos < buf.size() && std::isspace(buf[pos])) ++pos;
    if (pos < buf.size() && buf[pos] == '#') {
      while (pos < buf.size() && buf[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  if (pos >= buf.size() || !std::isdigit(buf[pos])) throw Error("malformed PGM header");
  std::size_t v = 0;
  while (pos < buf.size() && std::isdigit(buf[pos])) v = v * 10 + (buf[pos++] - '0');
  return v;
}

struct PngRaw {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int channels = 0;
  unsigned char* data = nullptr;  // malloc'd, rows packed
  std::size_t rowbytes = 0;
};

// Only trivially destructible locals live in this frame: libpng reports
// errors through longjmp.
bool decode_png(FILE* fp, PngRaw& out, char* message, std::size_t message_len) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  png_bytep* rows = nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    std::snprintf(message, message_len, "libpng failed to decode the image");
    std::free(rows);
    std::free(out.data);
    out.data = nullptr;
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (png_get_bit_depth(png, info) == 16) png_set_swap(png);  // little-endian uint16 in memory
  png_read_update_info(png, info);

  out.width = png_get_image_width(png, info);
  out.height = png_get_image_height(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  out.channels = png_get_channels(png, info);
  out.rowbytes = png_get_rowbytes(png, info);
  out.data = static_cast<unsigned char*>(std::malloc(out.rowbytes * out.height));
  rows = static_cast<png_bytep*>(std::malloc(sizeof(png_bytep) * out.height));
  if (!out.data || !rows) png_error(png, "out of memory");
  for (png_uint_32 y = 0; y < out.height; ++y) rows[y] = out.data + y * out.rowbytes;
  png_read_image(png, rows);
  png_read_end(png, nullptr);
  std::free(rows);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

}  // namespace

GrayImage read_pgm(const fs::path& path) {
  const auto buf = read_file_bytes(path);
  if (buf.size() < 2 || buf[0] != 'P' || (buf[1] != '5' && buf[1] != '2')) {
    throw Error("'" + path.string() + "' is not a PGM file");
  }
  const bool binary = buf[1] == '5';
  std::size_t pos = 2;
  GrayImage img;
  img.width = pnm_token(buf, pos);
  img.height = pnm_token(buf, pos);
  const std::size_t maxval = pnm_token(buf, pos);
  if (maxval == 0 || maxval > 65535) throw Error("PGM maxval out of range");
  img.bit_depth = maxval < 256 ? 8 : 16;
  const std::size_t n = img.width * img.height;
  img.pixels.resize(n);
  if (binary) {
    ++pos;  // single whitespace after maxval
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (buf.size() < pos + n * bpp) throw Error("PGM pixel data is truncated");
    for (std::size_t i = 0; i < n; ++i) {
      img.pixels[i] = bpp == 1 ? buf[pos + i]
                               : static_cast<double>((buf[pos + 2 * i] << 8) | buf[pos + 2 * i + 1]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) img.pixels[i] = static_cast<double>(pnm_token(buf, pos));
  }
  return img;
}

void write_pgm(const fs::path& path, std::size_t height, std::size_t width,
               std::span<const std::uint8_t> pixels) {
  if (pixels.size() != height * width) throw Error("PGM size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

GrayImage read_png(const fs::path& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw Error("cannot open '" + path.string() + "'");
  PngRaw raw;
  char message[128] = "not a PNG file";
  unsigned char sig[8];
  const bool is_png = std::fread(sig, 1, 8, fp) == 8 && png_sig_cmp(sig, 0, 8) == 0;
  bool ok = false;
  if (is_png) {
    std::rewind(fp);
    ok = decode_png(fp, raw, message, sizeof message);
  }
  std::fclose(fp);
  if (!ok) throw Error("'" + path.string() + "': " + message);

  GrayImage img;
  img.width = raw.width;
  img.height = raw.height;
  img.bit_depth = raw.bit_depth;
  img.pixels.resize(img.width * img.height);
  const bool wide = raw.bit_depth == 16;
  for (std::size_t y = 0; y < img.height; ++y) {
    const unsigned char* row = raw.data + y * raw.rowbytes;
    for (std::size_t x = 0; x < img.width; ++x) {
      auto sample = [&](int c) -> double {
        const std::size_t i = x * raw.channels + c;
        if (!wide) return row[i];
        return static_cast<double>(row[2 * i] | (row[2 * i + 1] << 8));
      };
      img.pixels[y * img.width + x] =
          raw.channels >= 3 ? luma601(sample(0), sample(1), sample(2)) : sample(0);
    }
  }
  std::free(raw.data);
  return img;
}

GrayImage read_image(const fs::path& path) {
  const auto ext = lower_ext(path);
  if (ext == ".png") return read_png(path);
  if (ext == ".pgm" || ext == ".pnm") return read_pgm(path);
  throw Error("unsupported image format '" + ext + "'");
}

ScalarField load_field(const fs::path& path, std::optional<DomainKind> kind) {
  if (!fs::exists(path)) throw Error("input '" + path.string() + "' does not exist");
  if (fs::is_directory(path)) return read_graph_csv(path / "values.csv", path / "edges.csv");

  const auto ext = lower_ext(path);
  if (ext == ".json") return read_graph_json(path);
  if (ext == ".npy") {
    auto arr = read_npy(path);
    auto shape = arr.shape;
    if (shape.size() == 1) shape.insert(shape.begin(), 1);
    DomainKind k = shape.size() == 3 ? DomainKind::grid3d : DomainKind::grid2d;
    if (shape.size() > 3 || shape.empty()) throw Error("npy arrays must be 1-, 2- or 3-dimensional");
    if (kind && *kind == DomainKind::graph) throw Error("an npy array cannot be loaded as a graph");
    if (kind && *kind != k) throw Error("array rank does not match the requested domain kind");
    return ScalarField::grid(k, std::move(shape), std::move(arr.data));
  }
  if (kind && *kind != DomainKind::grid2d) throw Error("images load as grid2d fields");
  auto img = read_image(path);
  return ScalarField::grid(DomainKind::grid2d, {img.height, img.width}, std::move(img.pixels));
}

BinaryMask load_mask(const fs::path& path) {
  if (!fs::exists(path)) throw Error("input '" + path.string() + "' does not exist");
  BinaryMask mask;
  std::vector<double> cells;
  if (lower_ext(path) == ".npy") {
    auto arr = read_npy(path);
    mask.shape = arr.shape;
    if (mask.shape.size() == 1) mask.shape.insert(mask.shape.begin(), 1);
    if (mask.shape.size() < 2 || mask.shape.size() > 3) throw Error("mask must be 2D or 3D");
    cells = std::move(arr.data);
  } else {
    auto img = read_image(path);
    mask.shape = {img.height, img.width};
    cells = std::move(img.pixels);
  }
  mask.kind = mask.shape.size() == 3 ? DomainKind::grid3d : DomainKind::grid2d;
  mask.occupancy.resize(cells.size());
  std::transform(cells.begin(), cells.end(), mask.occupancy.begin(),
                 [](double c) { return static_cast<std::uint8_t>(c != 0.0); });
  return mask;
}

}  // namespace msaug
