#include "subsetminer/subset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "subsetminer/errors.hpp"
#include "subsetminer/util.hpp"

namespace subsetminer {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join_key(const Subset& s) {
  std::string key;
  for (const std::string& m : s) {
    key += m;
    key.push_back('\0');
  }
  return key;
}

}  // namespace

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::Raw: return "raw";
    case Stage::Deduped: return "deduped";
    case Stage::Amplified: return "amplified";
    case Stage::Reduced: return "reduced";
    case Stage::Derived: return "derived";
  }
  return "raw";
}

Stage stage_from_name(const std::string& name) {
  if (name == "raw") return Stage::Raw;
  if (name == "deduped") return Stage::Deduped;
  if (name == "amplified") return Stage::Amplified;
  if (name == "reduced") return Stage::Reduced;
  if (name == "derived") return Stage::Derived;
  throw ParseError("unknown family stage \"" + name + "\"");
}

bool is_canonical(const Subset& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i - 1] < s[i])) return false;
  return true;
}

Subset make_subset(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

bool subset_of(const Subset& a, const Subset& b) {
  if (a.size() > b.size()) return false;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::size_t intersection_size(const Subset& a, const Subset& b) {
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

std::size_t union_size(const Subset& a, const Subset& b) {
  return a.size() + b.size() - intersection_size(a, b);
}

Subset set_union(const Subset& a, const Subset& b) {
  Subset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

bool covers(const Family& family, const Subset& iu) {
  for (const Subset& s : family.subsets)
    if (subset_of(iu, s)) return true;
  return false;
}

Family dedupe(Family family) {
  std::unordered_set<std::string> seen;
  seen.reserve(family.subsets.size() * 2);
  std::vector<Subset> out;
  out.reserve(family.subsets.size());
  for (Subset& s : family.subsets)
    if (seen.insert(join_key(s)).second) out.push_back(std::move(s));
  family.subsets = std::move(out);
  if (family.meta.stage == Stage::Raw) family.meta.stage = Stage::Deduped;
  return family;
}

Family remove_proper_subsets(Family family) {
  // On a deduped family a single maximality pass is already the fixpoint:
  // containment is transitive, so everything dominated by a non-maximal
  // subset is dominated by a maximal one too.
  const std::vector<Subset>& subs = family.subsets;
  const std::size_t n = subs.size();

  // Inverted index from instruction to containing subsets, so each subset is
  // only compared against candidates sharing its rarest instruction.
  std::unordered_map<std::string, std::vector<std::uint32_t>> index;
  for (std::uint32_t i = 0; i < n; ++i)
    for (const std::string& m : subs[i]) index[m].push_back(i);

  std::vector<char> keep(n, 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Subset& s = subs[i];
    if (s.empty()) continue;
    const std::vector<std::uint32_t>* rarest = nullptr;
    for (const std::string& m : s) {
      const auto& bucket = index[m];
      if (!rarest || bucket.size() < rarest->size()) rarest = &bucket;
    }
    for (std::uint32_t j : *rarest) {
      if (j == i) continue;
      if (subs[j].size() <= s.size()) continue;  // deduped: only strictly larger can dominate
      if (subset_of(s, subs[j])) {
        keep[i] = 0;
        break;
      }
    }
  }
  std::vector<Subset> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(std::move(family.subsets[i]));
  family.subsets = std::move(out);
  family.meta.stage = Stage::Reduced;
  return family;
}

Family amplify(Family family, double factor, std::size_t cap,
               std::uint64_t seed, std::size_t small_limit) {
  if (factor < 0) throw ArgError("amplification factor must be >= 0");
  if (small_limit == 0) small_limit = cap / 2;
  const std::size_t target =
      static_cast<std::size_t>(std::ceil(factor * static_cast<double>(family.size())));
  if (target == 0 || family.size() < 2) {
    family.meta.stage = Stage::Amplified;
    return dedupe(std::move(family));
  }

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < family.size(); ++i)
    if (family.subsets[i].size() <= small_limit) candidates.push_back(i);

  Rng rng(seed);
  std::unordered_set<std::uint64_t> used_pairs;
  std::vector<Subset> created;
  if (candidates.size() >= 2) {
    const std::uint64_t total_pairs =
        static_cast<std::uint64_t>(candidates.size()) *
        (candidates.size() - 1) / 2;
    std::size_t budget = 10 * target;
    while (created.size() < target && budget-- > 0 &&
           used_pairs.size() < total_pairs) {
      std::uint64_t a = rng.below(candidates.size());
      std::uint64_t b = rng.below(candidates.size());
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!used_pairs.insert((a << 32) | b).second) continue;
      const Subset& sa = family.subsets[candidates[a]];
      const Subset& sb = family.subsets[candidates[b]];
      if (union_size(sa, sb) > cap) continue;
      created.push_back(set_union(sa, sb));
    }
  }
  for (Subset& s : created) family.subsets.push_back(std::move(s));
  family.meta.stage = Stage::Amplified;
  family.meta.seed = seed;
  return dedupe(std::move(family));
}

Family filter_by_size(Family family, std::size_t limit) {
  if (limit < 1) throw ArgError("size limit must be >= 1");
  std::vector<Subset> out;
  out.reserve(family.size());
  for (Subset& s : family.subsets)
    if (s.size() <= limit) out.push_back(std::move(s));
  family.subsets = std::move(out);
  family.meta.size_limit = limit;
  return family;
}

std::string serialize_family(const Family& family) {
  ordered_json doc;
  doc["format_version"] = 1;
  ordered_json meta;
  meta["source"] = family.meta.source;
  meta["size_limit"] = family.meta.size_limit
                           ? ordered_json(*family.meta.size_limit)
                           : ordered_json(nullptr);
  meta["headroom"] = family.meta.headroom;
  meta["seed"] = family.meta.seed ? ordered_json(*family.meta.seed)
                                  : ordered_json(nullptr);
  meta["stage"] = stage_name(family.meta.stage);
  if (family.meta.trace) {
    const StageTrace& t = *family.meta.trace;
    ordered_json trace;
    trace["input"] = t.input;
    trace["after_dedupe"] = t.after_dedupe;
    trace["after_amplify"] = t.after_amplify;
    trace["after_reduce"] = t.after_reduce;
    trace["after_stage1"] = t.after_stage1;
    trace["after_stage2"] = t.after_stage2;
    trace["after_postmerge"] = t.after_postmerge;
    meta["trace"] = std::move(trace);
  }
  doc["meta"] = std::move(meta);

  // Canonical form: members are already sorted; subsets ordered
  // lexicographically.
  std::vector<const Subset*> order;
  order.reserve(family.size());
  for (const Subset& s : family.subsets) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const Subset* a, const Subset* b) { return *a < *b; });
  ordered_json subsets = ordered_json::array();
  for (const Subset* s : order) subsets.push_back(*s);
  doc["subsets"] = std::move(subsets);
  return doc.dump(2) + "\n";
}

Family parse_family(std::string_view json_text, const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    if (doc.contains("format_version") && doc["format_version"].get<int>() != 1)
      throw ParseError(origin + ": unsupported format_version");
    Family family;
    if (doc.contains("meta")) {
      const auto& meta = doc["meta"];
      family.meta.source = meta.value("source", std::string());
      if (meta.contains("size_limit") && !meta["size_limit"].is_null())
        family.meta.size_limit = meta["size_limit"].get<std::size_t>();
      family.meta.headroom = meta.value("headroom", std::size_t(0));
      if (meta.contains("seed") && !meta["seed"].is_null())
        family.meta.seed = meta["seed"].get<std::uint64_t>();
      family.meta.stage =
          stage_from_name(meta.value("stage", std::string("raw")));
      if (meta.contains("trace")) {
        const auto& t = meta["trace"];
        StageTrace trace;
        trace.input = t.value("input", std::size_t(0));
        trace.after_dedupe = t.value("after_dedupe", std::size_t(0));
        trace.after_amplify = t.value("after_amplify", std::size_t(0));
        trace.after_reduce = t.value("after_reduce", std::size_t(0));
        trace.after_stage1 = t.value("after_stage1", std::size_t(0));
        trace.after_stage2 = t.value("after_stage2", std::size_t(0));
        trace.after_postmerge = t.value("after_postmerge", std::size_t(0));
        family.meta.trace = trace;
      }
    }
    if (!doc.contains("subsets"))
      throw ParseError(origin + ": missing \"subsets\"");
    for (const auto& entry : doc["subsets"]) {
      Subset s = entry.get<std::vector<std::string>>();
      if (!is_canonical(s))
        throw ParseError(origin + ": subset not sorted/unique: " + entry.dump());
      if (s.empty() && family.meta.stage != Stage::Raw)
        throw ParseError(origin + ": empty subset in stored family");
      family.subsets.push_back(std::move(s));
    }
    return family;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

}  // namespace subsetminer
