#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "msaug/hierarchy.hpp"

namespace msaug::verify {

struct Config {
  std::size_t size = 16;
  std::size_t trials = 100;
  std::uint64_t seed = 7;
};

/// The implementation under test. Defaults to the library; tests swap in
/// deliberately broken versions to check that the harness notices.
struct Implementation {
  std::function<Segmentation(const ScalarField&)> segment = [](const ScalarField& f) { return msaug::segment(f); };
  std::function<PersistencePairSet(const ScalarField&)> sublevel = [](const ScalarField& f) { return sublevel_pairs(f); };
  std::function<PersistencePairSet(const ScalarField&)> superlevel = [](const ScalarField& f) { return superlevel_pairs(f); };
  std::function<Segmentation(const Segmentation&, const PersistencePairSet&, const PersistencePairSet&, double)>
      simplify = [](const Segmentation& s, const PersistencePairSet& a, const PersistencePairSet& b, double e) {
        return msaug::simplify(s, a, b, e);
      };
};

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string detail;  // first mismatch, if any
};

struct Report {
  Config config;
  std::vector<PropertyResult> properties;
  std::optional<std::string> first_failure;
  /// The field that produced the first failure, for reproduction.
  std::optional<ScalarField> failing_field;

  bool passed() const { return !first_failure.has_value(); }
};

/// Property names, in the order they are checked on each trial.
const std::vector<std::string>& property_names();

/// Checks every property on `trials` random size x size fields (alternating
/// continuous and tie-heavy integer values). Throws Error for size > 64 or 0.
Report run(const Config& config, const Implementation& impl = {});

nlohmann::json report_json(const Report& report);

}  // namespace msaug::verify
