#include "verify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "msaug/dual.hpp"
#include "oracle.hpp"

namespace msaug::verify {
namespace {

using Check = std::optional<std::string>;  // failure detail, or nullopt on success

std::string vertex_str(VertexId v) { return std::to_string(v); }

// Thresholds worth probing: every distinct persistence (the boundary cases),
// midpoints between them, zero and infinity.
std::vector<double> probe_thresholds(const PersistencePairSet& sub, const PersistencePairSet& sup) {
  std::set<double> pers;
  for (const auto& p : sub.pairs) pers.insert(p.persistence);
  for (const auto& p : sup.pairs) pers.insert(p.persistence);
  std::vector<double> out{0.0};
  double prev = 0;
  for (double p : pers) {
    out.push_back((prev + p) / 2);
    out.push_back(p);
    prev = p;
  }
  out.push_back(std::nextafter(prev, kInfinity));
  out.push_back(kInfinity);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // Large fields have many distinct persistences; a spread sample suffices.
  if (out.size() > 24) {
    std::vector<double> sample;
    for (std::size_t i = 0; i < 24; ++i) sample.push_back(out[i * (out.size() - 1) / 23]);
    out = std::move(sample);
  }
  return out;
}

std::vector<std::uint32_t> canonical_regions(const Segmentation& seg) {
  std::vector<std::uint64_t> keys(seg.size());
  for (std::size_t v = 0; v < seg.size(); ++v) {
    keys[v] = (std::uint64_t{seg.min_label[v]} << 32) | seg.max_label[v];
  }
  return oracle::canonical(keys);
}

struct Trial {
  const ScalarField& field;
  const Implementation& impl;
  Segmentation seg;
  PersistencePairSet sub;
  PersistencePairSet sup;
  oracle::NaiveLabels naive;
  std::vector<PersistencePair> sweep_sub;
  std::vector<PersistencePair> sweep_sup;
};

Check segment_vs_naive(const Trial& t) {
  for (VertexId v = 0; v < t.field.size(); ++v) {
    if (t.seg.min_label[v] != t.naive.min_label[v] || t.seg.max_label[v] != t.naive.max_label[v]) {
      return "vertex " + vertex_str(v) + " labeled (" + vertex_str(t.seg.min_label[v]) + ", " +
             vertex_str(t.seg.max_label[v]) + "), naive walk gives (" + vertex_str(t.naive.min_label[v]) + ", " +
             vertex_str(t.naive.max_label[v]) + ")";
    }
  }
  return std::nullopt;
}

Check critical_counts(const Trial& t) {
  const auto minima = oracle::local_minima(t.field);
  const auto maxima = oracle::local_maxima(t.field);
  if (t.sub.pairs.size() + t.sub.essential.size() != minima.size()) {
    return std::to_string(minima.size()) + " local minima but " + std::to_string(t.sub.pairs.size()) +
           " finite sublevel pairs + " + std::to_string(t.sub.essential.size()) + " essential";
  }
  if (t.sup.pairs.size() + t.sup.essential.size() != maxima.size()) {
    return std::to_string(maxima.size()) + " local maxima but " + std::to_string(t.sup.pairs.size()) +
           " finite superlevel pairs + " + std::to_string(t.sup.essential.size()) + " essential";
  }
  return std::nullopt;
}

Check sublevel_vs_sweep(const Trial& t) {
  if (!oracle::same_pairs(t.sub.pairs, t.sweep_sub)) {
    return "sublevel pairs differ from the threshold sweep (" + std::to_string(t.sub.pairs.size()) + " vs " +
           std::to_string(t.sweep_sub.size()) + ")";
  }
  return std::nullopt;
}

Check superlevel_vs_sweep(const Trial& t) {
  if (!oracle::same_pairs(t.sup.pairs, t.sweep_sup)) {
    return "superlevel pairs differ from the threshold sweep (" + std::to_string(t.sup.pairs.size()) + " vs " +
           std::to_string(t.sweep_sup.size()) + ")";
  }
  return std::nullopt;
}

Check negation_duality(const Trial& t) {
  std::vector<double> neg(t.field.values().begin(), t.field.values().end());
  for (auto& x : neg) x = -x;
  const auto negated = with_values(t.field, std::move(neg));
  const auto up = diagram(t.sup, t.field);
  const auto down = diagram(t.impl.sublevel(negated), negated);
  std::vector<DiagramPoint> mirrored;
  for (const auto& p : down.points) mirrored.push_back({-p.death, -p.birth});
  std::sort(mirrored.begin(), mirrored.end());
  std::vector<double> ess;
  for (double e : down.essential) ess.push_back(-e);
  std::sort(ess.begin(), ess.end());
  if (mirrored != up.points) return std::string("superlevel diagram differs from the negated sublevel diagram of -f");
  if (ess != up.essential) return std::string("essential classes differ under negation");
  return std::nullopt;
}

Check dual_adjacency(const Trial& t) {
  const auto g = build_dual(t.seg, t.field, t.sub, t.sup);
  const auto expected = oracle::region_adjacency(t.field, {t.seg.region_id.begin(), t.seg.region_id.end()});
  std::vector<std::pair<std::uint32_t, std::uint32_t>> got;
  for (const auto& e : g.edges) got.emplace_back(e.a, e.b);
  if (got != expected) {
    return "dual graph has " + std::to_string(got.size()) + " edges, brute-force adjacency has " +
           std::to_string(expected.size());
  }
  return std::nullopt;
}

Check hierarchy_nesting(const Trial& t) {
  const auto eps = probe_thresholds(t.sub, t.sup);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto once_i = t.impl.simplify(t.seg, t.sub, t.sup, eps[i]);
    for (std::size_t j = i; j < eps.size(); j += std::max<std::size_t>(1, eps.size() / 6)) {
      const auto direct = t.impl.simplify(t.seg, t.sub, t.sup, eps[j]);
      const auto nested = t.impl.simplify(once_i, t.sub, t.sup, eps[j]);
      if (direct.min_label != nested.min_label || direct.max_label != nested.max_label) {
        return "simplify at " + std::to_string(eps[j]) + " differs from simplify at " + std::to_string(eps[i]) +
               " followed by " + std::to_string(eps[j]);
      }
    }
  }
  return std::nullopt;
}

Check hierarchy_vs_oracle(const Trial& t) {
  for (double eps : probe_thresholds(t.sub, t.sup)) {
    const auto got = canonical_regions(t.impl.simplify(t.seg, t.sub, t.sup, eps));
    const auto want = oracle::cancelled_partition(t.naive, t.sweep_sub, t.sweep_sup, eps);
    if (got != want) return "region partition at epsilon " + std::to_string(eps) + " differs from brute-force cancellation";
  }
  return std::nullopt;
}

Check hierarchy_monotone(const Trial& t) {
  const auto eps = probe_thresholds(t.sub, t.sup);
  std::size_t prev = t.seg.region_count();
  for (double e : eps) {
    const auto s = t.impl.simplify(t.seg, t.sub, t.sup, e);
    if (s.region_count() > prev) return "region count grows at epsilon " + std::to_string(e);
    std::size_t live_min = t.sub.essential.size(), live_max = t.sup.essential.size();
    for (const auto& p : t.sub.pairs) live_min += p.persistence >= e;
    for (const auto& p : t.sup.pairs) live_max += p.persistence >= e;
    if (s.region_count() > live_min * live_max) {
      return std::to_string(s.region_count()) + " regions exceed the surviving-extrema bound at epsilon " +
             std::to_string(e);
    }
    prev = s.region_count();
  }
  return std::nullopt;
}

Check single_region_at_infinity(const Trial& t) {
  const auto s = t.impl.simplify(t.seg, t.sub, t.sup, kInfinity);
  const auto order = t.field.order();
  if (s.region_count() != 1) return std::to_string(s.region_count()) + " regions remain at epsilon = inf";
  if (s.regions[0].min != order.front() || s.regions[0].max != order.back()) {
    return std::string("surviving region is not labeled by the global extrema");
  }
  return std::nullopt;
}

struct Property {
  const char* name;
  Check (*check)(const Trial&);
};

constexpr Property kProperties[] = {
    {"segment_vs_naive", segment_vs_naive},
    {"critical_counts", critical_counts},
    {"sublevel_vs_sweep", sublevel_vs_sweep},
    {"superlevel_vs_sweep", superlevel_vs_sweep},
    {"negation_duality", negation_duality},
    {"dual_adjacency", dual_adjacency},
    {"hierarchy_nesting", hierarchy_nesting},
    {"hierarchy_vs_oracle", hierarchy_vs_oracle},
    {"hierarchy_monotone", hierarchy_monotone},
    {"single_region_at_infinity", single_region_at_infinity},
};

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& p : kProperties) v.emplace_back(p.name);
    return v;
  }();
  return names;
}

Report run(const Config& config, const Implementation& impl) {
  if (config.size == 0 || config.size > 64) throw Error("verify size must be between 1 and 64");
  Report report;
  report.config = config;
  for (const auto& p : kProperties) report.properties.push_back({p.name, true, 0, {}});

  std::mt19937_64 rng(config.seed);
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const auto field = trial % 2 == 0 ? oracle::random_grid(rng, config.size, config.size)
                                      : oracle::random_int_grid(rng, config.size, config.size, 6);
    Trial t{field,
            impl,
            impl.segment(field),
            impl.sublevel(field),
            impl.superlevel(field),
            oracle::naive_labels(field),
            oracle::sweep_pairs(field, PairKind::sublevel),
            oracle::sweep_pairs(field, PairKind::superlevel)};

    for (std::size_t i = 0; i < std::size(kProperties); ++i) {
      auto& result = report.properties[i];
      if (!result.passed) continue;
      ++result.checked;
      Check failure;
      try {
        failure = kProperties[i].check(t);
      } catch (const std::exception& e) {
        failure = std::string("threw: ") + e.what();
      }
      if (failure) {
        result.passed = false;
        result.detail = "trial " + std::to_string(trial) + ": " + *failure;
        if (!report.first_failure) {
          report.first_failure = result.name;
          report.failing_field = field;
        }
      }
    }
  }
  return report;
}

nlohmann::json report_json(const Report& report) {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : report.properties) {
    nlohmann::json rec = {{"name", p.name}, {"passed", p.passed}, {"trials_checked", p.checked}};
    if (!p.passed) rec["detail"] = p.detail;
    props.push_back(std::move(rec));
  }
  nlohmann::json out = {{"size", report.config.size},
                        {"trials", report.config.trials},
                        {"seed", report.config.seed},
                        {"passed", report.passed()},
                        {"properties", std::move(props)}};
  if (report.first_failure) {
    out["first_failure"] = *report.first_failure;
    const auto& f = *report.failing_field;
    out["failing_field"] = {{"kind", std::string(to_string(f.kind()))},
                            {"shape", std::vector<std::size_t>(f.shape().begin(), f.shape().end())},
                            {"values", std::vector<double>(f.values().begin(), f.values().end())}};
  } else {
    out["first_failure"] = nullptr;
  }
  return out;
}

}  // namespace msaug::verify
