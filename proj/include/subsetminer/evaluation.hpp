#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subsetminer/clustering.hpp"
#include "subsetminer/corpus.hpp"
#include "subsetminer/subset.hpp"

namespace subsetminer {

struct CoverageReport {
  std::uint64_t total_units = 0;
  std::uint64_t eligible_units = 0;  // units with subset size <= M
  std::uint64_t covered_units = 0;   // eligible units covered by the family
  double coverage_eligible = 0.0;    // headline figure
  double coverage_all = 0.0;
  // (subset index, eligible units covered by that subset); a unit may count
  // toward several subsets.
  std::vector<std::pair<std::size_t, std::uint64_t>> per_subset;
};

struct SizeBucket {
  std::size_t size = 0;
  std::uint64_t units = 0;
  double cumulative_percent = 0.0;
};

struct DistributionReport {
  std::vector<SizeBucket> size_histogram;  // ascending size
  // Descending count, lexicographic tie-break.
  std::vector<std::pair<std::string, std::uint64_t>> instruction_frequency;
  std::vector<std::pair<std::pair<std::string, std::string>, std::uint64_t>>
      pair_frequency;  // unordered pairs stored (a, b) with a < b
};

// Disjoint partition at file granularity: every unit of a file lands on the
// same side. Deterministic for a fixed seed; a positive fraction always
// keeps at least one file in training.
std::pair<std::vector<UnitRecord>, std::vector<UnitRecord>> split_corpus(
    const std::vector<UnitRecord>& units, double train_fraction,
    std::uint64_t seed);

CoverageReport measure_coverage(const Family& ids,
                                const std::vector<UnitRecord>& units,
                                std::size_t limit, unsigned jobs = 1);

DistributionReport corpus_distributions(const std::vector<UnitRecord>& units);

struct CurveCell {
  std::size_t target_size = 0;
  double train_fraction = 0.0;
  double coverage_eligible = 0.0;
};

// For every (M, fraction) pair: cluster on a training split of that fraction
// and measure coverage against the full unit list. Fractions share one
// seeded file shuffle, so larger fractions extend smaller ones.
std::vector<CurveCell> coverage_curve(const std::vector<UnitRecord>& units,
                                      const std::vector<std::size_t>& sizes,
                                      const std::vector<double>& fractions,
                                      const ClusterConfig& config_template,
                                      std::uint64_t seed, unsigned jobs = 1);

struct SynthConfig {
  std::size_t num_units = 1000;
  std::size_t universe = 200;      // instruction vocabulary size
  double zipf_exponent = 1.0;      // instruction rank-frequency skew
  double size_p = 0.206;           // geometric size parameter; ~90% of
                                   // subsets have 10 or fewer members
  std::size_t units_per_file = 8;
  std::uint64_t seed = 0;
};

// Generates a synthetic unit list whose instruction frequencies follow a
// Zipf-like ranking and whose subset sizes follow a geometric distribution.
std::vector<UnitRecord> synth_corpus(const SynthConfig& config);

}  // namespace subsetminer
