#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subsetminer {

// A sorted, duplicate-free list of canonical instruction names. Represents
// both program-unit subsets and derived subsets.
using Subset = std::vector<std::string>;

enum class Stage { Raw, Deduped, Amplified, Reduced, Derived };

std::string stage_name(Stage stage);
Stage stage_from_name(const std::string& name);

struct StageTrace {
  std::size_t input = 0;
  std::size_t after_dedupe = 0;  // after de-duplication and the size-M intake filter
  std::size_t after_amplify = 0;
  std::size_t after_reduce = 0;
  std::size_t after_stage1 = 0;
  std::size_t after_stage2 = 0;
  std::size_t after_postmerge = 0;

  bool operator==(const StageTrace&) const = default;
};

struct FamilyMeta {
  std::string source;
  std::optional<std::size_t> size_limit;  // M; empty when no limit applies
  std::size_t headroom = 0;
  std::optional<std::uint64_t> seed;
  Stage stage = Stage::Raw;
  std::optional<StageTrace> trace;
};

// An ordered collection of instruction subsets plus provenance. Raw families
// may hold duplicates; every later stage is duplicate-free.
struct Family {
  FamilyMeta meta;
  std::vector<Subset> subsets;

  std::size_t size() const { return subsets.size(); }
};

bool is_canonical(const Subset& s);
Subset make_subset(std::vector<std::string> members);  // sorts and dedupes

bool subset_of(const Subset& a, const Subset& b);  // a ⊆ b
std::size_t union_size(const Subset& a, const Subset& b);
std::size_t intersection_size(const Subset& a, const Subset& b);
Subset set_union(const Subset& a, const Subset& b);

// True iff some member of the family contains every instruction of iu.
// Instructions split across two members do not count.
bool covers(const Family& family, const Subset& iu);

// Keeps the first occurrence of each distinct subset.
Family dedupe(Family family);

// Deletes every subset that is a proper subset of another, to fixpoint.
// Requires a deduped family; survivors are exactly the maximal elements.
Family remove_proper_subsets(Family family);

// Adds up to ceil(factor * |family|) artificial subsets, each the union of
// two distinct members with union size <= cap. Candidate members are those
// of size <= small_limit (0 selects cap/2); pairs are drawn uniformly at
// random without replacement with a bounded retry budget. The result is
// re-deduped. Deterministic for a fixed seed.
Family amplify(Family family, double factor, std::size_t cap,
               std::uint64_t seed, std::size_t small_limit = 0);

// Exactly the subsets of size <= limit, order preserved.
Family filter_by_size(Family family, std::size_t limit);

// Family file round-trip: {"format_version","meta":{...},"subsets":[[...]]}.
// Subsets are written in canonical order (lexicographic).
std::string serialize_family(const Family& family);
Family parse_family(std::string_view json_text,
                    const std::string& origin = "family");

}  // namespace subsetminer
