#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msaug/distance_transform.hpp"
#include "msaug/field.hpp"

namespace msaug {

namespace fs = std::filesystem;

// ---- .npy arrays ------------------------------------------------------------

/// A C-ordered array read from an .npy file, converted to double.
struct NpyArray {
  std::vector<std::size_t> shape;
  std::string descr;  // dtype as stored, e.g. "<f8", "|u1"
  std::vector<double> data;
};

NpyArray read_npy(const fs::path& path);
NpyArray parse_npy(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_npy(std::span<const std::size_t> shape, std::span<const double> data);
std::vector<std::uint8_t> encode_npy(std::span<const std::size_t> shape, std::span<const std::int32_t> data);

void write_npy(const fs::path& path, std::span<const std::size_t> shape, std::span<const double> data);
void write_npy(const fs::path& path, std::span<const std::size_t> shape,
               std::span<const std::int32_t> data);

// ---- images -----------------------------------------------------------------

/// Grayscale pixels in row-major order. RGB input is reduced with the
/// ITU-R 601 luma weights; alpha is dropped.
struct GrayImage {
  std::size_t height = 0;
  std::size_t width = 0;
  int bit_depth = 8;
  std::vector<double> pixels;
};

GrayImage read_pgm(const fs::path& path);
GrayImage read_png(const fs::path& path);
GrayImage read_image(const fs::path& path);

/// 8-bit grayscale PGM (P5). Mostly for fixtures.
void write_pgm(const fs::path& path, std::size_t height, std::size_t width,
               std::span<const std::uint8_t> pixels);

inline double luma601(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

// ---- graphs -----------------------------------------------------------------

/// {"values": [...], "edges": [[i, j], ...]}
ScalarField read_graph_json(const fs::path& path);
ScalarField parse_graph_json(const std::string& text);

/// values.csv holds one value per line, edges.csv one "i,j" pair per line.
/// A non-numeric first line is treated as a header.
ScalarField read_graph_csv(const fs::path& values_csv, const fs::path& edges_csv);

// ---- fields -----------------------------------------------------------------

/// Loads a field from PNG/PGM (grid2d), .npy (grid2d or grid3d by rank; a
/// 1-D array becomes a 1 x n grid), graph JSON, or a directory holding
/// values.csv and edges.csv. `kind` overrides detection where meaningful.
ScalarField load_field(const fs::path& path, std::optional<DomainKind> kind = std::nullopt);

/// Reads a mask (any nonzero = obstacle) from PNG/PGM or .npy.
BinaryMask load_mask(const fs::path& path);

/// Writes `<stem>.npy` with the values and `<stem>.json` with
/// {kind, shape, n} (plus the edge list for graphs).
void write_field_snapshot(const ScalarField& field, const fs::path& dir, const std::string& stem = "field");
ScalarField read_field_snapshot(const fs::path& dir, const std::string& stem = "field");

// ---- misc -------------------------------------------------------------------

std::vector<std::uint8_t> read_file_bytes(const fs::path& path);
void write_file_bytes(const fs::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const fs::path& path, const std::string& text);

}  // namespace msaug
