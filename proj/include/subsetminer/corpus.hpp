#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "subsetminer/catalog.hpp"
#include "subsetminer/subset.hpp"

namespace subsetminer {

enum class UnitKind { Class, Method, Function, Main };

std::string unit_kind_name(UnitKind kind);
UnitKind unit_kind_from_name(const std::string& name);

// One program unit's identity plus its extracted instruction subset.
struct UnitRecord {
  std::string path;  // corpus-relative, forward slashes
  UnitKind kind = UnitKind::Function;
  std::string name;  // dotted identifier path, or "<main>"
  Subset instructions;
};

struct CorpusStats {
  std::uint64_t files = 0;  // files successfully processed
  std::uint64_t lines = 0;
  std::uint64_t units = 0;  // includes units whose subset came out empty
  std::uint64_t dropped_empty = 0;
  std::uint64_t parse_failures = 0;
};

// One logical source line: leading indent width (tab stop 8) and the
// identifier/operator tokens it carries. String literals, comments and
// numeric literals contribute no tokens; bracketed and backslash
// continuations are folded into their opening line.
struct LogicalLine {
  int indent = 0;
  std::size_t line_no = 0;  // first physical line, 1-based
  std::vector<std::string> tokens;
};

// Throws ParseError for content a lexical pass cannot recover from
// (unterminated triple-quoted string, invalid UTF-8, embedded NUL).
std::vector<LogicalLine> tokenize_source(std::string_view source);

struct SplitOptions {
  // When true, a def nested inside another def becomes its own unit and its
  // body is excluded from the enclosing unit, mirroring how method bodies
  // are excluded from their class unit.
  bool nested_defs_as_units = true;
};

struct RawUnit {
  UnitKind kind = UnitKind::Function;
  std::string name;
  std::size_t first_line = 0;
  std::vector<std::string> tokens;  // body tokens, source order
};

// Splits source into program units: one unit per class (class-scope
// statements only), one per method, one per function, and one "<main>" unit
// for residual module-level code when it carries at least one token.
std::vector<RawUnit> split_units(std::string_view source,
                                 const SplitOptions& options = {});

// Sorted unique canonical names of all body tokens that resolve to
// instructions. Excluded and unknown tokens contribute nothing.
Subset extract_subset(const InstructionCatalog& catalog,
                      std::string_view body);
Subset extract_subset(const InstructionCatalog& catalog,
                      const std::vector<std::string>& tokens);

struct ScanOptions {
  std::vector<std::string> extensions = {".py"};
  SplitOptions split;
  unsigned jobs = 1;
};

struct ScanResult {
  std::vector<UnitRecord> records;  // path order, then source position
  CorpusStats stats;
};

// Walks a directory tree or a .zip archive and emits one UnitRecord per
// unit with a non-empty subset. Unreadable or unparseable files are counted
// and skipped; an unreadable root is fatal.
ScanResult scan_corpus(const std::filesystem::path& root,
                       const InstructionCatalog& catalog,
                       const ScanOptions& options = {});

// Units JSONL: one {"path","kind","name","instructions"} object per line.
std::string serialize_units(const std::vector<UnitRecord>& records);
std::vector<UnitRecord> parse_units(std::string_view jsonl,
                                    const std::string& origin = "units");

std::string serialize_stats(const CorpusStats& stats);

// Raw family view of a unit list (meta.source = label, stage = raw).
Family units_to_family(const std::vector<UnitRecord>& records,
                       std::string source_label);

}  // namespace subsetminer
