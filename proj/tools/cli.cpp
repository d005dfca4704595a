#include "cli.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "msaug/encode.hpp"
#include "msaug/export.hpp"
#include "msaug/io.hpp"
#include "msaug/parallel.hpp"
#include "verify.hpp"

namespace msaug::cli {

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return os.str();
}

std::pair<std::size_t, std::size_t> near_square(std::size_t n) {
  if (n == 0) throw Error("bench size must be positive");
  std::size_t h = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (h * h > n) --h;
  while (n % h != 0) --h;
  return {h, n / h};
}

ScalarField bench_field(std::size_t n, std::uint64_t seed) {
  const auto [h, w] = near_square(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> values(n);
  for (auto& x : values) x = u(rng);
  return ScalarField::grid(DomainKind::grid2d, {h, w}, std::move(values));
}

namespace {

std::vector<double> even_fractions(std::size_t k) {
  std::vector<double> out;
  for (std::size_t j = 1; j <= k; ++j) out.push_back(static_cast<double>(j) / static_cast<double>(k));
  return out;
}

template <class F>
double median_seconds(std::size_t repeats, F&& f) {
  std::vector<double> times;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, repeats); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Hierarchy fraction_hierarchy(const ScalarField& field, std::span<const double> fractions) {
  auto sub = sublevel_pairs(field);
  auto sup = superlevel_pairs(field);
  auto schedule = thresholds_from_fractions(sub, sup, fractions).schedule;
  return build_hierarchy(field, std::move(sub), std::move(sup), schedule);
}

}  // namespace

std::vector<BenchRow> bench(std::span<const std::size_t> sizes, std::size_t k, std::size_t repeats,
                            std::uint64_t seed, bool pipeline) {
  const auto fractions = even_fractions(k);
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    const auto field = bench_field(n, seed);
    BenchRow row;
    row.n = n;
    row.t_segment = median_seconds(repeats, [&] { (void)segment(field); });
    row.t_hierarchy = median_seconds(repeats, [&] { (void)fraction_hierarchy(field, fractions); });
    if (pipeline) {
      row.t_pipeline = median_seconds(repeats, [&] {
        const auto h = fraction_hierarchy(field, fractions);
        (void)to_channels(h);
        (void)to_gnn_graph(h);
        for (const auto* pairs : {&h.sub, &h.sup}) {
          const auto d = diagram(*pairs, field);
          (void)persistence_image(d);
          (void)persistence_landscape(d);
        }
      });
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct Common {
  unsigned threads = 0;
};

struct AugmentArgs {
  std::string input;
  std::string kind;
  std::vector<double> fractions;
  std::vector<double> epsilons;
  std::string output;
  bool overwrite = false;
  bool distance_transform = false;
  bool channels = false;
  bool region_id_channels = false;
  bool gnn = false;
  bool prune_base = false;
  bool pi = false;
  std::size_t pi_resolution = 20;
  double pi_sigma = 0.1;
  bool landscape = false;
  std::size_t landscape_layers = 5;
  std::size_t landscape_samples = 100;
};

std::optional<DomainKind> kind_arg(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_domain_kind(s);
}

ScalarField load_input(const std::string& input, const std::string& kind, bool dt) {
  if (!fs::exists(input)) throw Error("input not found: " + input);
  if (dt) return distance_transform(load_mask(input));
  return load_field(input, kind_arg(kind));
}

std::vector<std::size_t> domain_shape(const ScalarField& f) {
  if (f.is_grid()) return {f.shape().begin(), f.shape().end()};
  return {f.size()};
}

bool dir_nonempty(const fs::path& p) { return fs::exists(p) && !fs::is_empty(p); }

/// Collects artifacts in a scratch directory next to the destination and
/// renames it into place once the manifest is written.
class StagedOutput {
 public:
  StagedOutput(fs::path dest, bool overwrite) : dest_(std::move(dest)) {
    if (dest_.empty()) throw Error("--output is required");
    if (fs::exists(dest_) && !fs::is_directory(dest_)) throw Error("output exists and is not a directory: " + dest_.string());
    if (dir_nonempty(dest_) && !overwrite) {
      throw Error("output directory is not empty: " + dest_.string() + " (use --overwrite)");
    }
    auto parent = fs::absolute(dest_).parent_path();
    fs::create_directories(parent);
    stage_ = parent / ("." + dest_.filename().string() + ".partial-" + std::to_string(::getpid()));
    fs::remove_all(stage_);
    fs::create_directory(stage_);
  }
  ~StagedOutput() {
    std::error_code ec;
    if (!committed_) fs::remove_all(stage_, ec);
  }
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  const fs::path& dir() const { return stage_; }
  /// Registers `name` for the manifest and returns its staged path.
  fs::path path(const std::string& name) {
    names_.push_back(name);
    return stage_ / name;
  }
  void text(const std::string& name, const std::string& s) { write_text_file(path(name), s); }

  json file_records() const {
    auto names = names_;
    std::sort(names.begin(), names.end());
    json out = json::array();
    for (const auto& n : names) {
      const auto bytes = read_file_bytes(stage_ / n);
      out.push_back({{"file", n}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
    }
    return out;
  }

  void commit() {
    if (fs::exists(dest_)) fs::remove_all(dest_);
    fs::rename(stage_, dest_);
    committed_ = true;
  }

 private:
  fs::path dest_;
  fs::path stage_;
  std::vector<std::string> names_;
  bool committed_ = false;
};

int cmd_augment(const AugmentArgs& a, std::ostream& out, std::ostream& err) {
  const auto field = load_input(a.input, a.kind, a.distance_transform);
  if (a.channels && !field.is_grid()) throw Error("--channels requires a grid input");

  auto sub = sublevel_pairs(field);
  auto sup = superlevel_pairs(field);
  json schedule_json;
  ThresholdSchedule schedule;
  if (!a.fractions.empty()) {
    auto fs_ = thresholds_from_fractions(sub, sup, a.fractions);
    if (fs_.empty_pool) err << "warning: no finite persistence pairs; fraction thresholds are 0\n";
    schedule = fs_.schedule;
    schedule_json = {{"fractions", a.fractions}, {"empty_pool", fs_.empty_pool}};
  } else {
    schedule = ThresholdSchedule(a.epsilons);
  }
  json eps = json::array();
  for (double e : schedule.epsilons()) eps.push_back(json_number(e));
  schedule_json["epsilons"] = std::move(eps);

  const auto h = build_hierarchy(field, std::move(sub), std::move(sup), schedule);
  const auto& base = h.levels.front().segmentation;

  StagedOutput stage(a.output, a.overwrite);
  write_field_snapshot(field, stage.dir(), "field");
  stage.path("field.npy");
  stage.path("field.json");
  const auto seg_ids = region_id_array(base);
  write_npy(stage.path("segmentation.npy"), domain_shape(field), seg_ids);
  stage.text("segmentation.json", dump_json({{"regions", region_table_json(base, field)},
                                              {"region_count", base.region_count()}}));
  stage.text("hierarchy.json", dump_json(hierarchy_json(h)));
  stage.text("diagram.csv", diagram_csv(h.sub, field) + diagram_csv(h.sup, field, false));

  if (a.channels) {
    const auto cs = to_channels(h, {a.region_id_channels});
    write_npy(stage.path("channels.npy"), cs.shape, cs.data);
    stage.text("channels.json", dump_json(channel_metadata_json(cs)));
  }
  if (a.gnn) {
    const auto g = to_gnn_graph(h, a.prune_base);
    stage.text("gnn.json", dump_json(gnn_json(g)));
    stage.text("gnn_nodes.csv", gnn_nodes_csv(g));
    stage.text("gnn_edges.csv", gnn_edges_csv(g));
  }
  for (const auto* pairs : {&h.sub, &h.sup}) {
    const std::string suffix(to_string(pairs->kind));
    const auto d = diagram(*pairs, field);
    if (a.pi) {
      const auto img = persistence_image(d, a.pi_resolution, a.pi_sigma);
      const std::vector<std::size_t> shape{img.resolution, img.resolution};
      write_npy(stage.path("pi_" + suffix + ".npy"), shape, img.grid);
    }
    if (a.landscape) {
      const auto land = persistence_landscape(d, a.landscape_layers, a.landscape_samples);
      const std::vector<std::size_t> shape{land.layers, land.samples};
      write_npy(stage.path("landscape_" + suffix + ".npy"), shape, land.values);
    }
  }

  json manifest = {{"msaug_version", version()},
                   {"input", a.input},
                   {"domain", {{"kind", std::string(to_string(field.kind()))}, {"shape", domain_shape(field)}}},
                   {"distance_transform", a.distance_transform},
                   {"schedule", schedule_json},
                   {"levels", h.levels.size()},
                   {"outputs", stage.file_records()}};
  write_text_file(stage.dir() / "manifest.json", dump_json(manifest));
  stage.commit();
  out << "wrote " << a.output << " (" << h.levels.size() << " levels, " << base.region_count()
      << " base regions)\n";
  return kOk;
}

int cmd_verify(const verify::Config& cfg, const std::string& output, std::ostream& out, std::ostream& err) {
  const auto report = verify::run(cfg);
  const auto text = dump_json(verify::report_json(report));
  if (output.empty()) {
    out << text;
  } else {
    write_text_file(output, text);
  }
  if (!report.passed()) {
    err << "verify: property '" << *report.first_failure << "' failed\n";
    return kPropertyFailure;
  }
  return kOk;
}

int cmd_bench(const std::vector<std::size_t>& sizes, std::size_t k, std::size_t repeats, std::uint64_t seed,
              bool pipeline, std::ostream& out) {
  out << "n,t_segment,t_hierarchy" << (pipeline ? ",t_pipeline" : "") << '\n';
  for (std::size_t n : sizes) {
    const std::size_t one[] = {n};
    const auto row = bench(one, k, repeats, seed, pipeline).front();
    out << row.n << ',' << format_double(row.t_segment) << ',' << format_double(row.t_hierarchy);
    if (pipeline) out << ',' << format_double(row.t_pipeline);
    out << '\n' << std::flush;
  }
  return kOk;
}

int cmd_diagram(const std::string& input, const std::string& kind, bool dt, const std::string& which,
                const std::string& output, std::ostream& out) {
  const auto field = load_input(input, kind, dt);
  std::string text;
  if (which == "sublevel" || which == "both") text += diagram_csv(sublevel_pairs(field), field);
  if (which == "superlevel" || which == "both") text += diagram_csv(superlevel_pairs(field), field, which != "both");
  if (output.empty()) {
    out << text;
  } else {
    write_text_file(output, text);
  }
  return kOk;
}

int cmd_dual(const std::string& input, const std::string& kind, bool dt, double epsilon, const std::string& output,
             const std::string& csv, std::ostream& out) {
  const auto field = load_input(input, kind, dt);
  const auto sub = sublevel_pairs(field);
  const auto sup = superlevel_pairs(field);
  auto seg = segment(field);
  if (epsilon > 0) seg = simplify(seg, sub, sup, epsilon);
  const auto g = build_dual(seg, field, sub, sup);
  const auto text = dump_json(dual_json(g));
  if (output.empty()) {
    out << text;
  } else {
    write_text_file(output, text);
  }
  if (!csv.empty()) write_text_file(csv, dual_edges_csv(g));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morse-Smale hierarchy augmentation for CNN and GNN inputs", "msaug"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker thread cap (default: MSAUG_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  AugmentArgs aug;
  auto* augment = app.add_subcommand("augment", "Build the hierarchy for one input and write its encodings");
  augment->add_option("--input,-i", aug.input, "PNG/PGM image, .npy array, graph .json, or CSV graph directory")
      ->required();
  augment->add_option("--kind", aug.kind, "Domain kind override: grid2d, grid3d or graph");
  auto* frac = augment->add_option("--fractions", aug.fractions, "Fractions of finite pairs to cancel per level")
                   ->delimiter(',');
  auto* eps = augment->add_option("--epsilons", aug.epsilons, "Explicit persistence thresholds per level")
                  ->delimiter(',');
  frac->excludes(eps);
  augment->add_option("--output,-o", aug.output, "Output directory (created; must be empty)")->required();
  augment->add_flag("--overwrite", aug.overwrite, "Replace a non-empty output directory");
  augment->add_flag("--distance-transform", aug.distance_transform,
                    "Treat the input as a binary obstacle mask and use its Euclidean distance transform");
  augment->add_flag("--channels", aug.channels, "Write the CNN channel stack");
  augment->add_flag("--region-id-channels", aug.region_id_channels, "Append a region-id channel per level");
  augment->add_flag("--gnn", aug.gnn, "Write the multi-level GNN graph");
  augment->add_flag("--prune-base", aug.prune_base, "Drop level 0 from the GNN graph");
  augment->add_flag("--pi", aug.pi, "Write persistence images");
  augment->add_option("--pi-resolution", aug.pi_resolution)->check(CLI::PositiveNumber);
  augment->add_option("--pi-sigma", aug.pi_sigma)->check(CLI::PositiveNumber);
  augment->add_flag("--landscape", aug.landscape, "Write persistence landscapes");
  augment->add_option("--landscape-layers", aug.landscape_layers)->check(CLI::PositiveNumber);
  augment->add_option("--landscape-samples", aug.landscape_samples)->check(CLI::PositiveNumber);

  verify::Config vcfg;
  std::string verify_out;
  auto* ver = app.add_subcommand("verify", "Check the implementation against brute-force oracles");
  ver->add_option("--size", vcfg.size, "Side length of the random square fields (at most 64)");
  ver->add_option("--trials", vcfg.trials);
  ver->add_option("--seed", vcfg.seed);
  ver->add_option("--output,-o", verify_out, "Write the JSON report here instead of stdout");

  std::vector<std::size_t> sizes{1u << 16, 1u << 18, 1u << 20};
  std::size_t bench_k = 4, repeats = 5;
  std::uint64_t bench_seed = 1;
  bool bench_pipeline = false;
  auto* bch = app.add_subcommand("bench", "Time segmentation and hierarchy construction; CSV to stdout");
  bch->add_option("--sizes", sizes, "Vertex counts")->delimiter(',');
  bch->add_option("--k", bench_k, "Number of simplification levels")->check(CLI::PositiveNumber);
  bch->add_option("--repeats", repeats, "Timings per size; the median is reported")->check(CLI::PositiveNumber);
  bch->add_option("--seed", bench_seed);
  bch->add_flag("--pipeline", bench_pipeline, "Also time the full pipeline including encoders");

  std::string d_input, d_kind, d_which = "both", d_output;
  bool d_dt = false;
  auto* dia = app.add_subcommand("diagram", "Write persistence pairs as CSV");
  dia->add_option("--input,-i", d_input)->required();
  dia->add_option("--kind", d_kind);
  dia->add_flag("--distance-transform", d_dt);
  dia->add_option("--type", d_which)->check(CLI::IsMember({"sublevel", "superlevel", "both"}));
  dia->add_option("--output,-o", d_output);

  std::string g_input, g_kind, g_output, g_csv;
  bool g_dt = false;
  double g_eps = 0;
  auto* dua = app.add_subcommand("dual", "Write the dual graph of the segmentation as JSON");
  dua->add_option("--input,-i", g_input)->required();
  dua->add_option("--kind", g_kind);
  dua->add_flag("--distance-transform", g_dt);
  dua->add_option("--epsilon", g_eps, "Simplify at this threshold first")->check(CLI::NonNegativeNumber);
  dua->add_option("--output,-o", g_output);
  dua->add_option("--csv", g_csv, "Also write the edge list as CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (augment->parsed() && aug.fractions.empty() && aug.epsilons.empty()) {
      throw CLI::ValidationError("augment", "one of --fractions or --epsilons is required");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "msaug: " << e.what() << '\n';
    return kUsage;
  }

  set_num_threads(common.threads);
  try {
    if (augment->parsed()) return cmd_augment(aug, out, err);
    if (ver->parsed()) return cmd_verify(vcfg, verify_out, out, err);
    if (bch->parsed()) return cmd_bench(sizes, bench_k, repeats, bench_seed, bench_pipeline, out);
    if (dia->parsed()) return cmd_diagram(d_input, d_kind, d_dt, d_which, d_output, out);
    if (dua->parsed()) return cmd_dual(g_input, g_kind, g_dt, g_eps, g_output, g_csv, out);
  } catch (const std::exception& e) {
    err << "msaug: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace msaug::cli
