#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace msaug {

using VertexId = std::uint32_t;
using RegionId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised for malformed input: bad shapes, non-finite values, unreadable files.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline const char* version() { return MSAUG_VERSION; }

}  // namespace msaug
