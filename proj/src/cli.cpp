#include "subsetminer/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subsetminer/catalog.hpp"
#include "subsetminer/clustering.hpp"
#include "subsetminer/corpus.hpp"
#include "subsetminer/errors.hpp"
#include "subsetminer/estimator.hpp"
#include "subsetminer/evaluation.hpp"
#include "subsetminer/manifest.hpp"
#include "subsetminer/subset.hpp"
#include "subsetminer/util.hpp"

namespace subsetminer {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kSeedEnvVar = "SUBSETMINER_SEED";

// Writes data to the target path, or to stdout when the target is "-".
// Manifests are only written beside real files.
void emit_output(const std::string& target, const std::string& content,
                 const RunManifest& manifest) {
  if (target == "-") {
    std::cout << content;
    return;
  }
  atomic_write(target, content);
  write_manifest_beside(target, manifest);
}

enum class InFormat { Auto, Units, Family };

Family load_input_family(const std::string& path, InFormat format) {
  const std::string content = read_file(path);
  bool units = format == InFormat::Units;
  if (format == InFormat::Auto)
    units = path.size() >= 6 &&
            path.compare(path.size() - 6, 6, ".jsonl") == 0;
  if (units) return units_to_family(parse_units(content, path), path);
  return parse_family(content, path);
}

std::vector<UnitRecord> load_units(const std::string& path) {
  return parse_units(read_file(path), path);
}

InstructionCatalog load_catalog_file(const std::string& path) {
  return InstructionCatalog::load(read_file(path), path);
}

std::string percent(double value) { return format_fixed(value, 2); }

ordered_json coverage_to_json(const CoverageReport& report) {
  ordered_json doc;
  doc["format_version"] = 1;
  doc["total_units"] = report.total_units;
  doc["eligible_units"] = report.eligible_units;
  doc["covered_units"] = report.covered_units;
  doc["coverage_eligible"] = report.coverage_eligible;
  doc["coverage_all"] = report.coverage_all;
  ordered_json per_subset = ordered_json::array();
  for (const auto& [index, count] : report.per_subset)
    per_subset.push_back(ordered_json::array({index, count}));
  doc["per_subset"] = std::move(per_subset);
  return doc;
}

std::string coverage_to_csv(const CoverageReport& report) {
  // Per-subset counts ranked by coverage, the prioritization order for
  // assigning partition jobs.
  auto ranked = report.per_subset;
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string csv = "rank,subset_index,covered_eligible_units\n";
  for (std::size_t r = 0; r < ranked.size(); ++r)
    csv += std::to_string(r + 1) + "," + std::to_string(ranked[r].first) +
           "," + std::to_string(ranked[r].second) + "\n";
  return csv;
}

struct InOption {
  std::string path;
  InFormat format = InFormat::Auto;
};

void add_in_format(CLI::App* cmd, InOption& in) {
  cmd->add_option("--in", in.path, "units JSONL or family JSON")->required();
  std::map<std::string, InFormat> map{{"auto", InFormat::Auto},
                                      {"units", InFormat::Units},
                                      {"family", InFormat::Family}};
  cmd->add_option("--in-format", in.format, "input kind (default: by extension)")
      ->transform(CLI::CheckedTransformer(map, CLI::ignore_case));
}

std::string format_name(InFormat format) {
  switch (format) {
    case InFormat::Auto: return "auto";
    case InFormat::Units: return "units";
    case InFormat::Family: return "family";
  }
  return "auto";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "subsetminer: mines instruction co-occurrence subsets from source "
      "corpora, clusters them into compact derived subset families, and "
      "quantifies coverage, search-space reduction and overlap redundancy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // ---- extract ----
  struct {
    std::string root;
    std::string catalog;
    std::vector<std::string> extensions{".py"};
    bool no_nested = false;
    unsigned jobs = 1;
    std::string out = "-";
    std::string stats_out;
  } ex;
  CLI::App* extract =
      app.add_subcommand("extract", "scan a corpus tree or .zip into units JSONL");
  extract->add_option("--root", ex.root, "corpus directory or .zip archive")
      ->required();
  extract->add_option("--catalog", ex.catalog, "instruction catalog JSON")
      ->required();
  extract->add_option("--ext", ex.extensions,
                      "source extensions to scan (default .py)");
  extract->add_flag("--no-nested-units", ex.no_nested,
                    "fold nested defs into their enclosing unit");
  extract->add_option("--jobs", ex.jobs, "worker threads");
  extract->add_option("--out", ex.out, "units JSONL output ('-' = stdout)");
  extract->add_option("--stats-out", ex.stats_out,
                      "corpus stats JSON (default <out>.stats.json)");
  extract->callback([&]() {
    const InstructionCatalog catalog = load_catalog_file(ex.catalog);
    ScanOptions options;
    options.extensions = ex.extensions;
    options.split.nested_defs_as_units = !ex.no_nested;
    options.jobs = ex.jobs;
    const ScanResult result = scan_corpus(ex.root, catalog, options);

    RunManifest manifest;
    manifest.command = "extract";
    manifest.config["root"] = ex.root;
    manifest.config["catalog"] = ex.catalog;
    manifest.config["ext"] = ex.extensions;
    manifest.config["nested_units"] = !ex.no_nested;
    manifest.config["out"] = ex.out;
    manifest.add_input("root", ex.root, digest_tree(ex.root));
    manifest.add_input("catalog", ex.catalog, digest_file(ex.catalog));
    emit_output(ex.out, serialize_units(result.records), manifest);

    std::string stats_out = ex.stats_out;
    if (stats_out.empty() && ex.out != "-")
      stats_out = ex.out + ".stats.json";
    if (!stats_out.empty())
      atomic_write(stats_out, serialize_stats(result.stats));
  });

  // ---- prep ----
  struct {
    InOption in;
    std::string out = "-";
  } pr;
  CLI::App* prep = app.add_subcommand(
      "prep", "deduplicate a family and remove proper subsets");
  add_in_format(prep, pr.in);
  prep->add_option("--out", pr.out, "family JSON output ('-' = stdout)");
  prep->callback([&]() {
    Family family = load_input_family(pr.in.path, pr.in.format);
    family.meta.source = pr.in.path;
    family = remove_proper_subsets(dedupe(std::move(family)));

    RunManifest manifest;
    manifest.command = "prep";
    manifest.config["in"] = pr.in.path;
    manifest.config["in_format"] = format_name(pr.in.format);
    manifest.config["out"] = pr.out;
    manifest.add_input("in", pr.in.path, digest_file(pr.in.path));
    emit_output(pr.out, serialize_family(family), manifest);
  });

  // ---- cluster ----
  struct {
    InOption in;
    std::size_t size = 10;
    std::size_t headroom = kAutoHeadroom;
    std::size_t num_ids = 0;
    double amplify = 0.5;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out = "-";
  } cl;
  CLI::App* cluster_cmd =
      app.add_subcommand("cluster", "derive instruction subsets (Algorithm 1)");
  add_in_format(cluster_cmd, cl.in);
  cluster_cmd->add_option("--size", cl.size, "target subset size M")->required();
  cluster_cmd->add_option("--headroom", cl.headroom,
                          "allowed size above M (default: 20% of M)");
  cluster_cmd->add_option("--num-ids", cl.num_ids,
                          "requested derived subsets (0 = calibrate)");
  cluster_cmd->add_option("--amplify", cl.amplify,
                          "amplification factor (default 0.5)");
  cluster_cmd->add_option("--seed", cl.seed, "RNG seed")->envname(kSeedEnvVar);
  cluster_cmd->add_option("--jobs", cl.jobs, "worker threads");
  cluster_cmd->add_option("--out", cl.out, "family JSON output ('-' = stdout)");
  cluster_cmd->callback([&]() {
    ClusterConfig config;
    config.target_size = cl.size;
    config.headroom = cl.headroom;
    config.num_ids = cl.num_ids;
    config.amplify_factor = cl.amplify;
    config.seed = cl.seed.value_or(0);
    config = config.resolved();
    const Family units = load_input_family(cl.in.path, cl.in.format);
    ClusterResult result = cluster(units, config);

    RunManifest manifest;
    manifest.command = "cluster";
    manifest.config["in"] = cl.in.path;
    manifest.config["in_format"] = format_name(cl.in.format);
    manifest.config["size"] = config.target_size;
    manifest.config["headroom"] = config.headroom;
    manifest.config["num_ids"] = config.num_ids;
    manifest.config["amplify"] = config.amplify_factor;
    manifest.config["seed"] = config.seed;
    manifest.config["out"] = cl.out;
    manifest.add_input("in", cl.in.path, digest_file(cl.in.path));
    emit_output(cl.out, serialize_family(result.ids), manifest);
  });

  // ---- calibrate ----
  struct {
    InOption in;
    std::size_t size = 10;
    std::size_t headroom = kAutoHeadroom;
    std::size_t increment = kDefaultCalibrationIncrement;
    double amplify = 0.5;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
  } ca;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "find the smallest honored derived-subset count");
  add_in_format(calibrate, ca.in);
  calibrate->add_option("--size", ca.size, "target subset size M")->required();
  calibrate->add_option("--headroom", ca.headroom,
                        "allowed size above M (default: 20% of M)");
  calibrate->add_option("--increment", ca.increment,
                        "search step (default 10)");
  calibrate->add_option("--amplify", ca.amplify, "amplification factor");
  calibrate->add_option("--seed", ca.seed, "RNG seed")->envname(kSeedEnvVar);
  calibrate->add_option("--out", ca.out, "JSON output ('-' = count on stdout)");
  calibrate->callback([&]() {
    ClusterConfig config;
    config.target_size = ca.size;
    config.headroom = ca.headroom;
    config.amplify_factor = ca.amplify;
    config.seed = ca.seed.value_or(0);
    config = config.resolved();
    const Family units = load_input_family(ca.in.path, ca.in.format);
    const std::size_t count = calibrate_num_ids(units, config, ca.increment);

    RunManifest manifest;
    manifest.command = "calibrate";
    manifest.config["in"] = ca.in.path;
    manifest.config["in_format"] = format_name(ca.in.format);
    manifest.config["size"] = config.target_size;
    manifest.config["headroom"] = config.headroom;
    manifest.config["increment"] = ca.increment;
    manifest.config["amplify"] = config.amplify_factor;
    manifest.config["seed"] = config.seed;
    manifest.config["out"] = ca.out;
    manifest.add_input("in", ca.in.path, digest_file(ca.in.path));
    if (ca.out == "-") {
      std::cout << count << "\n";
    } else {
      ordered_json doc;
      doc["format_version"] = 1;
      doc["num_ids"] = count;
      emit_output(ca.out, doc.dump(2) + "\n", manifest);
    }
  });

  // ---- coverage ----
  struct {
    std::string family;
    std::string units;
    std::size_t size = 10;
    unsigned jobs = 1;
    std::string out = "-";
    std::string json_out;
  } co;
  CLI::App* coverage =
      app.add_subcommand("coverage", "measure family coverage of a unit list");
  coverage->add_option("--family", co.family, "derived family JSON")->required();
  coverage->add_option("--units", co.units, "units JSONL")->required();
  coverage->add_option("--size", co.size, "eligibility limit M")->required();
  coverage->add_option("--jobs", co.jobs, "worker threads");
  coverage->add_option("--out", co.out, "per-subset CSV ('-' = stdout)");
  coverage->add_option("--json", co.json_out, "summary JSON output");
  coverage->callback([&]() {
    const Family family = parse_family(read_file(co.family), co.family);
    const std::vector<UnitRecord> units = load_units(co.units);
    const CoverageReport report =
        measure_coverage(family, units, co.size, co.jobs);

    RunManifest manifest;
    manifest.command = "coverage";
    manifest.config["family"] = co.family;
    manifest.config["units"] = co.units;
    manifest.config["size"] = co.size;
    manifest.config["out"] = co.out;
    manifest.config["json"] = co.json_out;
    manifest.add_input("family", co.family, digest_file(co.family));
    manifest.add_input("units", co.units, digest_file(co.units));
    emit_output(co.out, coverage_to_csv(report), manifest);
    if (!co.json_out.empty()) {
      if (co.json_out == "-")
        std::cout << coverage_to_json(report).dump(2) + "\n";
      else
        atomic_write(co.json_out, coverage_to_json(report).dump(2) + "\n");
    }
  });

  // ---- curve ----
  struct {
    std::string units;
    std::vector<std::size_t> sizes{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5,
                                  0.6, 0.7, 0.8, 0.9, 1.0};
    std::size_t headroom = kAutoHeadroom;
    std::size_t num_ids = 0;
    double amplify = 0.5;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out = "-";
  } cu;
  CLI::App* curve = app.add_subcommand(
      "curve", "coverage for a grid of subset sizes and training fractions");
  curve->add_option("--units", cu.units, "units JSONL")->required();
  curve->add_option("--sizes", cu.sizes, "target sizes M (default 10..100)")
      ->delimiter(',');
  curve->add_option("--fractions", cu.fractions,
                    "training fractions (default 0.1..1.0)")
      ->delimiter(',');
  curve->add_option("--headroom", cu.headroom,
                    "allowed size above M (default: 20% of M)");
  curve->add_option("--num-ids", cu.num_ids,
                    "requested derived subsets (0 = calibrate)");
  curve->add_option("--amplify", cu.amplify, "amplification factor");
  curve->add_option("--seed", cu.seed, "RNG seed")->envname(kSeedEnvVar);
  curve->add_option("--jobs", cu.jobs, "worker threads");
  curve->add_option("--out", cu.out, "curve CSV ('-' = stdout)");
  curve->callback([&]() {
    const std::vector<UnitRecord> units = load_units(cu.units);
    ClusterConfig config;
    config.headroom = cu.headroom;
    config.num_ids = cu.num_ids;
    config.amplify_factor = cu.amplify;
    config.seed = cu.seed.value_or(0);
    const std::vector<CurveCell> cells = coverage_curve(
        units, cu.sizes, cu.fractions, config, config.seed, cu.jobs);

    std::string csv = "target_size,train_fraction,coverage_eligible\n";
    for (const CurveCell& cell : cells)
      csv += std::to_string(cell.target_size) + "," +
             format_fixed(cell.train_fraction, 4) + "," +
             percent(cell.coverage_eligible) + "\n";

    RunManifest manifest;
    manifest.command = "curve";
    manifest.config["units"] = cu.units;
    manifest.config["sizes"] = cu.sizes;
    manifest.config["fractions"] = cu.fractions;
    manifest.config["headroom"] =
        cu.headroom == kAutoHeadroom ? ordered_json("auto")
                                     : ordered_json(cu.headroom);
    manifest.config["num_ids"] = cu.num_ids;
    manifest.config["amplify"] = cu.amplify;
    manifest.config["seed"] = config.seed;
    manifest.config["out"] = cu.out;
    manifest.add_input("units", cu.units, digest_file(cu.units));
    emit_output(cu.out, csv, manifest);
  });

  // ---- stats ----
  struct {
    std::string units;
    std::string out_prefix;
  } st;
  CLI::App* stats = app.add_subcommand(
      "stats", "size histogram, instruction and pair frequency CSVs");
  stats->add_option("--units", st.units, "units JSONL")->required();
  stats->add_option("--out-prefix", st.out_prefix,
                    "prefix for <prefix>.{sizes,instructions,pairs}.csv")
      ->required();
  stats->callback([&]() {
    const std::vector<UnitRecord> units = load_units(st.units);
    const DistributionReport report = corpus_distributions(units);

    std::string sizes_csv = "subset_size,unit_count,cumulative_percent\n";
    for (const SizeBucket& b : report.size_histogram)
      sizes_csv += std::to_string(b.size) + "," + std::to_string(b.units) +
                   "," + percent(b.cumulative_percent) + "\n";
    std::string insn_csv = "rank,instruction,unit_count\n";
    for (std::size_t r = 0; r < report.instruction_frequency.size(); ++r)
      insn_csv += std::to_string(r + 1) + "," +
                  report.instruction_frequency[r].first + "," +
                  std::to_string(report.instruction_frequency[r].second) + "\n";
    std::string pair_csv = "rank,instruction_a,instruction_b,unit_count\n";
    for (std::size_t r = 0; r < report.pair_frequency.size(); ++r)
      pair_csv += std::to_string(r + 1) + "," +
                  report.pair_frequency[r].first.first + "," +
                  report.pair_frequency[r].first.second + "," +
                  std::to_string(report.pair_frequency[r].second) + "\n";

    RunManifest manifest;
    manifest.command = "stats";
    manifest.config["units"] = st.units;
    manifest.config["out_prefix"] = st.out_prefix;
    manifest.add_input("units", st.units, digest_file(st.units));
    atomic_write(st.out_prefix + ".sizes.csv", sizes_csv);
    atomic_write(st.out_prefix + ".instructions.csv", insn_csv);
    atomic_write(st.out_prefix + ".pairs.csv", pair_csv);
    atomic_write(st.out_prefix + ".manifest.json", manifest.serialize());
  });

  // ---- estimate ----
  struct {
    std::uint64_t unary = 0;
    std::uint64_t binary = 0;
    std::uint64_t inputs = 1;
    unsigned depth = 5;
    std::string catalog;
    std::uint64_t subset_unary = 0;
    std::uint64_t subset_binary = 0;
    std::uint64_t num_subsets = 1;
    std::optional<std::uint64_t> overlap;
    std::string method = "recurrence";
    std::uint64_t budget = 10'000'000;
    std::string out = "-";
  } es;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "search-space size, reduction and redundancy estimates");
  estimate->add_option("--unary", es.unary, "1-argument instruction count");
  estimate->add_option("--binary", es.binary, "2-argument instruction count");
  estimate->add_option("--inputs", es.inputs, "values at level zero");
  estimate->add_option("--depth", es.depth, "levels to evaluate");
  estimate->add_option("--catalog", es.catalog,
                       "derive the profile from a catalog's arities");
  estimate->add_option("--subset-unary", es.subset_unary,
                       "per-subset 1-argument instruction count");
  estimate->add_option("--subset-binary", es.subset_binary,
                       "per-subset 2-argument instruction count");
  estimate->add_option("--num-subsets", es.num_subsets,
                       "number of derived subsets for the reduction factor");
  estimate->add_option("--overlap", es.overlap,
                       "shared instructions for the redundancy column");
  estimate->add_option("--method", es.method, "recurrence | enumerate")
      ->check(CLI::IsMember({"recurrence", "enumerate"}));
  estimate->add_option("--budget", es.budget,
                       "node budget for --method enumerate");
  estimate->add_option("--out", es.out, "CSV output ('-' = stdout)");
  estimate->callback([&]() {
    ArityProfile profile = ArityProfile::make(es.inputs, es.unary, es.binary);
    if (!es.catalog.empty()) {
      const InstructionCatalog catalog = load_catalog_file(es.catalog);
      profile.arity_counts.clear();
      for (const InstructionDef& def : catalog.defs()) {
        if (def.arity == 0)
          throw ArgError("estimate: instruction \"" + def.name +
                         "\" has arity 0; the estimator needs arity >= 1");
        if (profile.arity_counts.size() < def.arity)
          profile.arity_counts.resize(def.arity, 0);
        ++profile.arity_counts[def.arity - 1];
      }
    }
    if (profile.instruction_count() == 0)
      throw ArgError("estimate: profile has no instructions");

    auto space = [&](const ArityProfile& p) {
      return es.method == "enumerate" ? enumerate_space(p, es.depth, es.budget)
                                      : space_size(p, es.depth);
    };
    const SpaceEstimate full = space(profile);

    const bool with_subset = es.subset_unary + es.subset_binary > 0;
    SpaceEstimate subset;
    std::vector<BigRat> redundancy_by_level;
    ArityProfile subset_profile;
    if (with_subset) {
      subset_profile =
          ArityProfile::make(es.inputs, es.subset_unary, es.subset_binary);
      subset = space(subset_profile);
      if (es.overlap)
        redundancy_by_level =
            redundancy(*es.overlap, subset_profile, es.depth);
    } else if (es.overlap) {
      throw ArgError("estimate: --overlap needs a subset profile");
    }

    std::string csv = "level,new_values,cumulative,log10_cumulative";
    if (with_subset)
      csv += ",subset_new_values,subset_cumulative,reduction_log10";
    if (es.overlap) csv += ",redundancy";
    csv += "\n";
    BigInt full_cum = 0;
    BigInt subset_cum = 0;
    for (unsigned k = 1; k <= es.depth; ++k) {
      full_cum += full.per_level[k - 1];
      csv += std::to_string(k) + "," + full.per_level[k - 1].str() + "," +
             full_cum.str() + ",";
      csv += full_cum == 0 ? "" : format_fixed(log10_value(full_cum), 6);
      if (with_subset) {
        subset_cum += subset.per_level[k - 1];
        csv += "," + subset.per_level[k - 1].str() + "," + subset_cum.str() +
               ",";
        if (subset_cum == 0 || full_cum == 0) {
          csv += "";
        } else {
          const BigRat factor(full_cum, BigInt(es.num_subsets) * subset_cum);
          csv += format_fixed(log10_value(factor), 6);
        }
      }
      if (es.overlap) {
        csv += ",";
        csv += format_fixed(redundancy_by_level[k - 1].convert_to<double>(), 9);
      }
      csv += "\n";
    }

    RunManifest manifest;
    manifest.command = "estimate";
    manifest.config["unary"] = profile.unary_count();
    manifest.config["binary"] = profile.binary_count();
    manifest.config["inputs"] = es.inputs;
    manifest.config["depth"] = es.depth;
    manifest.config["catalog"] = es.catalog;
    manifest.config["subset_unary"] = es.subset_unary;
    manifest.config["subset_binary"] = es.subset_binary;
    manifest.config["num_subsets"] = es.num_subsets;
    manifest.config["overlap"] =
        es.overlap ? ordered_json(*es.overlap) : ordered_json(nullptr);
    manifest.config["method"] = es.method;
    manifest.config["budget"] = es.budget;
    manifest.config["out"] = es.out;
    if (!es.catalog.empty())
      manifest.add_input("catalog", es.catalog, digest_file(es.catalog));
    emit_output(es.out, csv, manifest);
  });

  // ---- synth ----
  struct {
    std::size_t units = 1000;
    std::size_t universe = 200;
    double zipf = 1.0;
    double size_p = 0.206;
    std::size_t units_per_file = 8;
    std::optional<std::uint64_t> seed;
    std::string out = "-";
  } sy;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate a synthetic unit corpus for protocol testing");
  synth->add_option("--units", sy.units, "number of units (default 1000)");
  synth->add_option("--universe", sy.universe,
                    "instruction vocabulary size (default 200)");
  synth->add_option("--zipf-exponent", sy.zipf,
                    "instruction rank skew (default 1.0)");
  synth->add_option("--size-p", sy.size_p,
                    "geometric subset-size parameter (default 0.206)");
  synth->add_option("--units-per-file", sy.units_per_file,
                    "units per synthetic file (default 8)");
  synth->add_option("--seed", sy.seed, "RNG seed")->envname(kSeedEnvVar);
  synth->add_option("--out", sy.out, "units JSONL output ('-' = stdout)");
  synth->callback([&]() {
    SynthConfig config;
    config.num_units = sy.units;
    config.universe = sy.universe;
    config.zipf_exponent = sy.zipf;
    config.size_p = sy.size_p;
    config.units_per_file = sy.units_per_file;
    config.seed = sy.seed.value_or(0);
    const std::vector<UnitRecord> records = synth_corpus(config);

    RunManifest manifest;
    manifest.command = "synth";
    manifest.config["units"] = config.num_units;
    manifest.config["universe"] = config.universe;
    manifest.config["zipf_exponent"] = config.zipf_exponent;
    manifest.config["size_p"] = config.size_p;
    manifest.config["units_per_file"] = config.units_per_file;
    manifest.config["seed"] = config.seed;
    manifest.config["out"] = sy.out;
    emit_output(sy.out, serialize_units(records), manifest);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::string message = e.what();
    for (char& c : message)
      if (c == '\n') c = ' ';
    std::cerr << "subsetminer: error: " << message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "subsetminer: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace subsetminer
