#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subsetminer/subset.hpp"

namespace subsetminer {

// headroom value requesting the per-M default (20% of M, rounded up).
inline constexpr std::size_t kAutoHeadroom = SIZE_MAX;

struct ClusterConfig {
  std::size_t target_size = 10;        // M, the nominal derived-subset size
  std::size_t headroom = kAutoHeadroom;  // effective cap = M + headroom
  std::size_t num_ids = 0;             // requested derived subsets; 0 calibrates
  std::uint64_t seed = 0;
  double amplify_factor = 0.5;

  // 20% of M, rounded up.
  static std::size_t default_headroom(std::size_t target_size) {
    return (target_size + 4) / 5;
  }

  ClusterConfig resolved() const {
    ClusterConfig c = *this;
    if (c.headroom == kAutoHeadroom)
      c.headroom = default_headroom(c.target_size);
    return c;
  }

  std::size_t cap() const { return resolved().headroom + target_size; }
};

struct ClusterResult {
  Family ids;  // stage derived
  std::size_t num_created = 0;
  StageTrace trace;
};

// One stage-1 decision, exposed so tests can audit the choice against a
// brute-force search over every (subset, instruction) pair.
struct Stage1Step {
  Subset current;             // the subset under consideration, pre-augment
  std::string added;          // empty when nothing subsumed >= 1 other subset
  std::size_t subsumed = 0;   // other survivors deleted by this augmentation
};
using Stage1Observer = std::function<void(const Stage1Step&)>;

// First clustering stage: subsets are visited in descending size order
// (lexicographic tie-break). For each survivor, the single instruction whose
// addition keeps the subset within cap and turns the most other survivors
// into subsets of it is added (lexicographically least on ties), and the
// newly subsumed survivors are deleted. Nothing is added when no instruction
// subsumes at least one other survivor. Requires a deduped, reduced family.
Family stage1_augment(Family family, std::size_t cap,
                      const Stage1Observer& observer = {});

// Second clustering stage: num_ids empty bins are pre-created; subsets are
// placed in descending size order. An empty bin takes the subset verbatim;
// otherwise it is unioned into the bin with the largest intersection among
// bins whose union stays within cap (ties: smallest bin, then lowest index);
// when none is eligible a fresh bin is created. Unused empty bins are
// discarded.
Family stage2_merge(Family family, std::size_t num_ids, std::size_t cap);

// Merges the smallest remaining bin into the largest bin whose union with it
// fits the cap (first-fit over bins in decreasing size order, testing actual
// union size), until no pair of bins can be merged.
Family post_merge(Family family, std::size_t cap);

// Full pipeline: dedupe, intake size filter at M, amplification, proper-
// subset removal, stage 1, stage 2, post-merge. With num_ids == 0 the
// requested bin count is first calibrated (increment 10). Deterministic for
// a fixed (family, config) pair.
ClusterResult cluster(const Family& units, const ClusterConfig& config);

// Ascending search for the bin count the clusterer honors: the smallest
// multiple n of increment for which clustering with num_ids = n creates at
// most n derived subsets. The result is approximate within the increment.
std::size_t calibrate_num_ids(const Family& units, const ClusterConfig& config,
                              std::size_t increment = 10);

inline constexpr std::size_t kDefaultCalibrationIncrement = 10;

}  // namespace subsetminer
