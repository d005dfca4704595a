#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "msaug/field.hpp"

namespace msaug::cli {

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kUsage = 2 };

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// h x w with h * w == n and h the largest divisor of n not above sqrt(n).
std::pair<std::size_t, std::size_t> near_square(std::size_t n);

/// Uniform random grid of n vertices, reproducible from the seed.
ScalarField bench_field(std::size_t n, std::uint64_t seed);

struct BenchRow {
  std::size_t n = 0;
  double t_segment = 0;   // seconds, median over repeats
  double t_hierarchy = 0;
  double t_pipeline = 0;  // 0 unless requested
};

/// t_segment times segment(); t_hierarchy times pairs + a k-level
/// fraction schedule + build_hierarchy; t_pipeline adds every encoder.
std::vector<BenchRow> bench(std::span<const std::size_t> sizes, std::size_t k, std::size_t repeats,
                            std::uint64_t seed, bool pipeline);

}  // namespace msaug::cli
