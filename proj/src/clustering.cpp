#include "subsetminer/clustering.hpp"

#include <algorithm>
#include <numeric>

#include "subsetminer/errors.hpp"

namespace subsetminer {

namespace {

using Symbol = std::uint32_t;
using IdSet = std::vector<Symbol>;

// Instruction names interned to dense ids assigned in sorted-name order, so
// id comparisons and id-sequence comparisons agree with lexicographic
// comparisons on names.
struct Interned {
  std::vector<std::string> names;
  std::vector<IdSet> sets;
};

Interned intern(const Family& family) {
  Interned in;
  for (const Subset& s : family.subsets)
    in.names.insert(in.names.end(), s.begin(), s.end());
  std::sort(in.names.begin(), in.names.end());
  in.names.erase(std::unique(in.names.begin(), in.names.end()),
                 in.names.end());
  in.sets.reserve(family.size());
  for (const Subset& s : family.subsets) {
    IdSet ids;
    ids.reserve(s.size());
    for (const std::string& m : s) {
      const auto it = std::lower_bound(in.names.begin(), in.names.end(), m);
      ids.push_back(static_cast<Symbol>(it - in.names.begin()));
    }
    in.sets.push_back(std::move(ids));
  }
  return in;
}

Subset to_subset(const Interned& in, const IdSet& ids) {
  Subset s;
  s.reserve(ids.size());
  for (Symbol id : ids) s.push_back(in.names[id]);
  return s;
}

std::size_t id_intersection_size(const IdSet& a, const IdSet& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::size_t id_union_size(const IdSet& a, const IdSet& b) {
  return a.size() + b.size() - id_intersection_size(a, b);
}

IdSet id_union(const IdSet& a, const IdSet& b) {
  IdSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// Descending size, lexicographic ascending on ties.
std::vector<std::uint32_t> processing_order(const std::vector<IdSet>& sets) {
  std::vector<std::uint32_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (sets[a].size() != sets[b].size())
                return sets[a].size() > sets[b].size();
              return sets[a] < sets[b];
            });
  return order;
}

}  // namespace

Family stage1_augment(Family family, std::size_t cap,
                      const Stage1Observer& observer) {
  Interned in = intern(family);
  std::vector<IdSet>& sets = in.sets;
  const std::size_t n = sets.size();
  const std::vector<std::uint32_t> order = processing_order(sets);

  std::vector<std::vector<std::uint32_t>> index(in.names.size());
  std::vector<std::pair<Symbol, std::uint32_t>> singletons;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (Symbol x : sets[i]) index[x].push_back(i);
    if (sets[i].size() == 1) singletons.emplace_back(sets[i][0], i);
  }

  std::vector<char> alive(n, 1);
  std::vector<std::uint32_t> overlap(n, 0);
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> touched;
  // (missing instruction, subset it completes) pairs for the current subset
  std::vector<std::pair<Symbol, std::uint32_t>> contributors;

  for (std::uint32_t idx : order) {
    if (!alive[idx]) continue;
    const IdSet& iu = sets[idx];
    if (iu.size() + 1 > cap) {
      if (observer) observer({to_subset(in, iu), "", 0});
      continue;
    }

    ++epoch;
    touched.clear();
    contributors.clear();
    for (Symbol x : iu) {
      for (std::uint32_t j : index[x]) {
        if (!alive[j] || j == idx) continue;
        if (stamp[j] != epoch) {
          stamp[j] = epoch;
          overlap[j] = 0;
          touched.push_back(j);
        }
        ++overlap[j];
      }
    }
    // Subsets sharing all but one member: the missing member is the
    // augmentation candidate they vote for.
    for (std::uint32_t j : touched) {
      if (sets[j].size() < 2 || overlap[j] != sets[j].size() - 1) continue;
      Symbol missing = 0;
      auto ii = iu.begin();
      for (Symbol m : sets[j]) {
        while (ii != iu.end() && *ii < m) ++ii;
        if (ii == iu.end() || *ii != m) {
          missing = m;
          break;
        }
      }
      contributors.emplace_back(missing, j);
    }
    // Singletons are disjoint votes the overlap tally cannot see.
    for (const auto& [sym, j] : singletons) {
      if (!alive[j] || j == idx) continue;
      if (!std::binary_search(iu.begin(), iu.end(), sym))
        contributors.emplace_back(sym, j);
    }

    if (contributors.empty()) {
      if (observer) observer({to_subset(in, iu), "", 0});
      continue;
    }
    std::sort(contributors.begin(), contributors.end());
    Symbol best_sym = 0;
    std::size_t best_count = 0;
    for (std::size_t s = 0; s < contributors.size();) {
      std::size_t e = s;
      while (e < contributors.size() &&
             contributors[e].first == contributors[s].first)
        ++e;
      if (e - s > best_count) {  // ties keep the lexicographically least
        best_count = e - s;
        best_sym = contributors[s].first;
      }
      s = e;
    }

    const Subset before = observer ? to_subset(in, iu) : Subset{};
    IdSet augmented;
    augmented.reserve(iu.size() + 1);
    std::merge(iu.begin(), iu.end(), &best_sym, &best_sym + 1,
               std::back_inserter(augmented));
    sets[idx] = std::move(augmented);
    index[best_sym].push_back(idx);
    for (const auto& [sym, j] : contributors)
      if (sym == best_sym) alive[j] = 0;
    if (observer) observer({before, in.names[best_sym], best_count});
  }

  std::vector<Subset> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (alive[i]) out.push_back(to_subset(in, sets[i]));
  family.subsets = std::move(out);
  return family;
}

Family stage2_merge(Family family, std::size_t num_ids, std::size_t cap) {
  Interned in = intern(family);
  const std::vector<std::uint32_t> order = processing_order(in.sets);
  for (const IdSet& s : in.sets)
    if (s.size() > cap)
      throw ArgError("stage2_merge: subset larger than cap; filter upstream");

  std::vector<IdSet> bins(num_ids);
  std::size_t next_empty = 0;
  for (std::uint32_t idx : order) {
    const IdSet& iu = in.sets[idx];
    if (next_empty < bins.size()) {
      bins[next_empty++] = iu;
      continue;
    }
    std::size_t best = SIZE_MAX;
    std::size_t best_inter = 0;
    std::size_t best_size = 0;
    for (std::size_t k = 0; k < bins.size(); ++k) {
      if (id_union_size(bins[k], iu) > cap) continue;
      const std::size_t inter = id_intersection_size(bins[k], iu);
      if (best == SIZE_MAX || inter > best_inter ||
          (inter == best_inter && bins[k].size() < best_size)) {
        best = k;
        best_inter = inter;
        best_size = bins[k].size();
      }
    }
    if (best == SIZE_MAX) {
      bins.push_back(iu);
    } else {
      bins[best] = id_union(bins[best], iu);
    }
  }
  // Pre-created bins that never received a subset are discarded.
  std::vector<Subset> out;
  out.reserve(bins.size());
  for (const IdSet& bin : bins)
    if (!bin.empty()) out.push_back(to_subset(in, bin));
  family.subsets = std::move(out);
  return family;
}

Family post_merge(Family family, std::size_t cap) {
  Interned in = intern(family);
  std::vector<IdSet>& bins = in.sets;
  const std::size_t n = bins.size();
  std::vector<char> alive(n, 1);
  std::vector<char> frozen(n, 0);

  for (;;) {
    // Smallest unfrozen bin, lowest index on ties.
    std::size_t src = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || frozen[i]) continue;
      if (src == SIZE_MAX || bins[i].size() < bins[src].size()) src = i;
    }
    if (src == SIZE_MAX) break;

    // Largest bin the source fits into, by actual union size against cap.
    std::size_t dst = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || i == src) continue;
      if (id_union_size(bins[i], bins[src]) > cap) continue;
      if (dst == SIZE_MAX || bins[i].size() > bins[dst].size()) dst = i;
    }
    if (dst == SIZE_MAX) {
      frozen[src] = 1;
    } else {
      bins[dst] = id_union(bins[dst], bins[src]);
      alive[src] = 0;
    }
  }

  std::vector<Subset> out;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) out.push_back(to_subset(in, bins[i]));
  family.subsets = std::move(out);
  return family;
}

namespace {

struct PipelinePrefix {
  Family family;  // after stage 1
  StageTrace trace;
};

PipelinePrefix run_prefix(const Family& units, const ClusterConfig& config) {
  if (config.target_size < 1)
    throw ArgError("cluster: target size must be >= 1");
  if (config.headroom == kAutoHeadroom)
    throw ArgError("cluster: unresolved headroom");
  PipelinePrefix pre;
  pre.trace.input = units.size();
  Family f = units;
  f = dedupe(std::move(f));
  f = filter_by_size(std::move(f), config.target_size);
  pre.trace.after_dedupe = f.size();
  f = amplify(std::move(f), config.amplify_factor, config.cap(), config.seed,
              std::max<std::size_t>(1, config.target_size / 2));
  pre.trace.after_amplify = f.size();
  f = remove_proper_subsets(std::move(f));
  pre.trace.after_reduce = f.size();
  f = stage1_augment(std::move(f), config.cap());
  pre.trace.after_stage1 = f.size();
  pre.family = std::move(f);
  return pre;
}

ClusterResult finish(const PipelinePrefix& pre, std::size_t num_ids,
                     const ClusterConfig& config) {
  ClusterResult result;
  result.trace = pre.trace;
  Family f = stage2_merge(pre.family, num_ids, config.cap());
  result.trace.after_stage2 = f.size();
  f = post_merge(std::move(f), config.cap());
  result.trace.after_postmerge = f.size();
  f.meta.stage = Stage::Derived;
  f.meta.size_limit = config.target_size;
  f.meta.headroom = config.headroom;
  f.meta.seed = config.seed;
  f.meta.trace = result.trace;
  result.num_created = f.size();
  result.ids = std::move(f);
  return result;
}

std::size_t calibrate_prefix(const PipelinePrefix& pre,
                             const ClusterConfig& config,
                             std::size_t increment) {
  if (increment < 1) throw ArgError("calibration increment must be >= 1");
  for (std::size_t n = increment;; n += increment) {
    const std::size_t created = finish(pre, n, config).num_created;
    if (created <= n) return n;
  }
}

}  // namespace

ClusterResult cluster(const Family& units, const ClusterConfig& raw_config) {
  const ClusterConfig config = raw_config.resolved();
  const PipelinePrefix pre = run_prefix(units, config);
  std::size_t num_ids = config.num_ids;
  if (num_ids == 0)
    num_ids = calibrate_prefix(pre, config, kDefaultCalibrationIncrement);
  ClusterResult result = finish(pre, num_ids, config);
  result.ids.meta.source = units.meta.source;
  return result;
}

std::size_t calibrate_num_ids(const Family& units,
                              const ClusterConfig& raw_config,
                              std::size_t increment) {
  const ClusterConfig config = raw_config.resolved();
  return calibrate_prefix(run_prefix(units, config), config, increment);
}

}  // namespace subsetminer
