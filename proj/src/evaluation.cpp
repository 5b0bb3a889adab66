#include "subsetminer/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "subsetminer/errors.hpp"
#include "subsetminer/util.hpp"

namespace subsetminer {

namespace {

std::vector<std::string> sorted_unique_paths(
    const std::vector<UnitRecord>& units) {
  std::vector<std::string> paths;
  paths.reserve(units.size());
  for (const UnitRecord& u : units) paths.push_back(u.path);
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

std::size_t train_file_count(std::size_t total, double fraction) {
  const auto want = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(total)));
  return std::min(total, std::max<std::size_t>(1, want));
}

}  // namespace

std::pair<std::vector<UnitRecord>, std::vector<UnitRecord>> split_corpus(
    const std::vector<UnitRecord>& units, double train_fraction,
    std::uint64_t seed) {
  if (units.empty()) throw ArgError("split_corpus: empty corpus");
  if (!(train_fraction > 0.0) || train_fraction > 1.0)
    throw ArgError("train fraction must be in (0, 1]");

  std::vector<std::string> paths = sorted_unique_paths(units);
  Rng rng(seed);
  rng.shuffle(paths);
  const std::size_t take = train_file_count(paths.size(), train_fraction);
  std::unordered_set<std::string> train_files(paths.begin(),
                                              paths.begin() + take);

  std::pair<std::vector<UnitRecord>, std::vector<UnitRecord>> out;
  for (const UnitRecord& u : units) {
    if (train_files.count(u.path))
      out.first.push_back(u);
    else
      out.second.push_back(u);
  }
  return out;
}

CoverageReport measure_coverage(const Family& ids,
                                const std::vector<UnitRecord>& units,
                                std::size_t limit, unsigned jobs) {
  CoverageReport report;
  report.total_units = units.size();
  const std::size_t num_subsets = ids.size();

  struct UnitOutcome {
    bool eligible = false;
    bool covered = false;
    std::vector<std::uint32_t> covering;  // subset indices
  };
  std::vector<UnitOutcome> outcomes(units.size());
  parallel_for(units.size(), jobs, [&](std::size_t i) {
    const Subset& iu = units[i].instructions;
    if (iu.size() > limit) return;
    UnitOutcome& out = outcomes[i];
    out.eligible = true;
    for (std::uint32_t s = 0; s < num_subsets; ++s) {
      if (subset_of(iu, ids.subsets[s])) {
        out.covered = true;
        out.covering.push_back(s);
      }
    }
  });

  std::vector<std::uint64_t> per_subset(num_subsets, 0);
  for (const UnitOutcome& out : outcomes) {
    if (!out.eligible) continue;
    ++report.eligible_units;
    if (out.covered) ++report.covered_units;
    for (std::uint32_t s : out.covering) ++per_subset[s];
  }
  report.coverage_eligible =
      report.eligible_units == 0
          ? 0.0
          : 100.0 * static_cast<double>(report.covered_units) /
                static_cast<double>(report.eligible_units);
  report.coverage_all =
      report.total_units == 0
          ? 0.0
          : 100.0 * static_cast<double>(report.covered_units) /
                static_cast<double>(report.total_units);
  report.per_subset.reserve(num_subsets);
  for (std::size_t s = 0; s < num_subsets; ++s)
    report.per_subset.emplace_back(s, per_subset[s]);
  return report;
}

DistributionReport corpus_distributions(const std::vector<UnitRecord>& units) {
  DistributionReport report;
  if (units.empty()) return report;

  std::map<std::size_t, std::uint64_t> histogram;
  std::unordered_map<std::string, std::uint64_t> insn_counts;
  std::map<std::pair<std::string, std::string>, std::uint64_t> pair_counts;
  for (const UnitRecord& u : units) {
    const Subset& s = u.instructions;
    ++histogram[s.size()];
    for (std::size_t i = 0; i < s.size(); ++i) {
      ++insn_counts[s[i]];
      for (std::size_t j = i + 1; j < s.size(); ++j)
        ++pair_counts[{s[i], s[j]}];  // members sorted, so (a, b) has a < b
    }
  }

  std::uint64_t running = 0;
  for (const auto& [size, count] : histogram) {
    running += count;
    report.size_histogram.push_back(
        {size, count,
         100.0 * static_cast<double>(running) /
             static_cast<double>(units.size())});
  }

  report.instruction_frequency.assign(insn_counts.begin(), insn_counts.end());
  std::sort(report.instruction_frequency.begin(),
            report.instruction_frequency.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  report.pair_frequency.assign(pair_counts.begin(), pair_counts.end());
  std::sort(report.pair_frequency.begin(), report.pair_frequency.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return report;
}

std::vector<CurveCell> coverage_curve(const std::vector<UnitRecord>& units,
                                      const std::vector<std::size_t>& sizes,
                                      const std::vector<double>& fractions,
                                      const ClusterConfig& config_template,
                                      std::uint64_t seed, unsigned jobs) {
  if (sizes.empty() || fractions.empty())
    throw ArgError("coverage_curve: sizes and fractions must be non-empty");
  if (units.empty()) throw ArgError("coverage_curve: empty corpus");

  std::vector<std::string> paths = sorted_unique_paths(units);
  Rng rng(seed);
  rng.shuffle(paths);

  std::vector<CurveCell> cells;
  cells.reserve(sizes.size() * fractions.size());
  for (std::size_t m : sizes) {
    for (double fraction : fractions) {
      if (!(fraction > 0.0) || fraction > 1.0)
        throw ArgError("train fraction must be in (0, 1]");
      const std::size_t take = train_file_count(paths.size(), fraction);
      std::unordered_set<std::string> train_files(paths.begin(),
                                                  paths.begin() + take);
      std::vector<UnitRecord> train;
      for (const UnitRecord& u : units)
        if (train_files.count(u.path)) train.push_back(u);

      ClusterConfig config = config_template;
      config.target_size = m;  // kAutoHeadroom re-resolves per M
      const ClusterResult result =
          cluster(units_to_family(train, "curve"), config);
      const CoverageReport report =
          measure_coverage(result.ids, units, m, jobs);
      cells.push_back({m, fraction, report.coverage_eligible});
    }
  }
  return cells;
}

std::vector<UnitRecord> synth_corpus(const SynthConfig& config) {
  if (config.num_units == 0) return {};
  if (config.universe == 0) throw ArgError("synth: universe must be >= 1");
  if (!(config.size_p > 0.0) || config.size_p >= 1.0)
    throw ArgError("synth: size_p must be in (0, 1)");
  if (config.zipf_exponent < 0.0)
    throw ArgError("synth: zipf exponent must be >= 0");
  if (config.units_per_file == 0)
    throw ArgError("synth: units_per_file must be >= 1");

  // Instruction names: fixed width keeps lexicographic and rank order equal.
  int width = 1;
  for (std::size_t v = config.universe - 1; v >= 10; v /= 10) ++width;
  width = std::max(width, 3);
  std::vector<std::string> vocab;
  vocab.reserve(config.universe);
  for (std::size_t r = 0; r < config.universe; ++r) {
    std::string name = std::to_string(r);
    name.insert(0, static_cast<std::size_t>(width) - name.size(), '0');
    vocab.push_back("i" + name);
  }

  // Cumulative Zipf weights over ranks 1..universe.
  std::vector<double> cumulative(config.universe);
  double total = 0.0;
  for (std::size_t r = 0; r < config.universe; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), config.zipf_exponent);
    cumulative[r] = total;
  }

  Rng rng(config.seed);
  auto draw_rank = [&]() {
    const double x = rng.unit() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(config.universe) - 1));
  };
  const double log_keep = std::log1p(-config.size_p);
  auto draw_size = [&]() {
    const double u = rng.unit();
    const auto k = static_cast<std::size_t>(
        1.0 + std::floor(std::log1p(-u) / log_keep));
    return std::min(std::max<std::size_t>(k, 1), config.universe);
  };

  const std::size_t file_count =
      (config.num_units + config.units_per_file - 1) / config.units_per_file;
  int file_width = 1;
  for (std::size_t v = file_count; v >= 10; v /= 10) ++file_width;
  file_width = std::max(file_width, 4);

  std::vector<UnitRecord> records;
  records.reserve(config.num_units);
  std::vector<char> picked(config.universe, 0);
  for (std::size_t i = 0; i < config.num_units; ++i) {
    const std::size_t size = draw_size();
    std::vector<std::string> members;
    members.reserve(size);
    std::fill(picked.begin(), picked.end(), 0);
    while (members.size() < size) {
      const std::size_t rank = draw_rank();
      if (picked[rank]) continue;
      picked[rank] = 1;
      members.push_back(vocab[rank]);
    }
    UnitRecord record;
    std::string file_no = std::to_string(i / config.units_per_file);
    file_no.insert(0, static_cast<std::size_t>(file_width) - file_no.size(),
                   '0');
    record.path = "synth/file_" + file_no + ".py";
    record.kind = UnitKind::Function;
    record.name = "u" + std::to_string(i);
    record.instructions = make_subset(std::move(members));
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace subsetminer
