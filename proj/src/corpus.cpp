#include "subsetminer/corpus.hpp"

#include <algorithm>
#include <array>
#include <memory>

#include "json.hpp"
#include "subsetminer/errors.hpp"
#include "subsetminer/util.hpp"
#include "subsetminer/zip_reader.hpp"

namespace subsetminer {

namespace {

using ordered_json = nlohmann::ordered_json;

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c >= 0x80;  // non-ASCII identifier bytes pass through
}

bool ident_continue(unsigned char c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}

bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool string_prefix(const std::string& ident) {
  if (ident.empty() || ident.size() > 2) return false;
  for (char c : ident) {
    switch (c) {
      case 'r': case 'R': case 'b': case 'B':
      case 'u': case 'U': case 'f': case 'F':
        break;
      default:
        return false;
    }
  }
  return true;
}

// Longest-match operator table.
constexpr std::array<std::string_view, 5> kOps3 = {"**=", "//=", ">>=", "<<=",
                                                   "..."};
constexpr std::array<std::string_view, 19> kOps2 = {
    "**", "//", ">>", "<<", "<=", ">=", "==", "!=", "->", ":=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@="};

}  // namespace

std::string unit_kind_name(UnitKind kind) {
  switch (kind) {
    case UnitKind::Class: return "class";
    case UnitKind::Method: return "method";
    case UnitKind::Function: return "function";
    case UnitKind::Main: return "main";
  }
  return "function";
}

UnitKind unit_kind_from_name(const std::string& name) {
  if (name == "class") return UnitKind::Class;
  if (name == "method") return UnitKind::Method;
  if (name == "function") return UnitKind::Function;
  if (name == "main") return UnitKind::Main;
  throw ParseError("unknown unit kind \"" + name + "\"");
}

std::vector<LogicalLine> tokenize_source(std::string_view src) {
  if (!valid_utf8(src))
    throw ParseError("not decodable as UTF-8 text");

  std::vector<LogicalLine> out;
  LogicalLine cur;
  bool in_logical = false;
  bool measuring = true;  // consuming leading whitespace of a physical line
  int indent = 0;
  int depth = 0;
  std::size_t line_no = 1;
  std::size_t i = 0;
  const std::size_t n = src.size();

  auto flush = [&]() {
    if (in_logical) {
      if (!cur.tokens.empty()) out.push_back(std::move(cur));
      cur = LogicalLine{};
      in_logical = false;
    }
  };
  auto begin_physical_line = [&]() {
    ++line_no;
    if (!in_logical) {
      measuring = true;
      indent = 0;
    }
  };
  auto emit = [&](std::string token) {
    if (!in_logical) {
      // Token outside brackets on a fresh line opens a logical line.
      cur.indent = indent;
      cur.line_no = line_no;
      in_logical = true;
    }
    cur.tokens.push_back(std::move(token));
  };
  // Skips a string literal starting at the opening quote.
  auto skip_string = [&](void) {
    const char quote = src[i];
    const bool triple = i + 2 < n && src[i + 1] == quote && src[i + 2] == quote;
    if (triple) {
      i += 3;
      while (i < n) {
        if (src[i] == '\\') {
          if (i + 1 < n && src[i + 1] == '\n') ++line_no;
          i += 2;
          continue;
        }
        if (src[i] == quote && i + 2 < n && src[i + 1] == quote &&
            src[i + 2] == quote) {
          i += 3;
          return;
        }
        if (src[i] == '\n') ++line_no;
        ++i;
      }
      throw ParseError("unterminated triple-quoted string");
    }
    ++i;
    while (i < n) {
      if (src[i] == '\\') {
        if (i + 1 < n && src[i + 1] == '\n') ++line_no;
        i += 2;
        continue;
      }
      if (src[i] == quote) {
        ++i;
        return;
      }
      if (src[i] == '\n') return;  // lenient: broken literal closes at EOL
      ++i;
    }
  };

  while (i < n) {
    const char c = src[i];

    if (measuring && !in_logical) {
      if (c == ' ') {
        ++indent;
        ++i;
        continue;
      }
      if (c == '\t') {
        indent = (indent / 8 + 1) * 8;
        ++i;
        continue;
      }
      if (c == '\f' || c == '\r') {
        ++i;
        continue;
      }
      measuring = false;  // first significant char decides below
    }

    if (c == '\n') {
      if (depth == 0) flush();
      ++i;
      begin_physical_line();
      continue;
    }
    if (c == '\r' || c == ' ' || c == '\t' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '\\') {
      // Explicit line join; anything else after a backslash is dropped.
      std::size_t j = i + 1;
      if (j < n && src[j] == '\r') ++j;
      if (j < n && src[j] == '\n') {
        if (!in_logical) {
          cur.indent = indent;
          cur.line_no = line_no;
          in_logical = true;
        }
        i = j + 1;
        ++line_no;
        continue;
      }
      ++i;
      continue;
    }
    if (c == '\'' || c == '"') {
      if (!in_logical) {
        cur.indent = indent;
        cur.line_no = line_no;
        in_logical = true;
      }
      skip_string();
      continue;
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < n && ident_continue(static_cast<unsigned char>(src[i]))) ++i;
      std::string ident(src.substr(start, i - start));
      if (i < n && (src[i] == '\'' || src[i] == '"') && string_prefix(ident)) {
        if (!in_logical) {
          cur.indent = indent;
          cur.line_no = line_no;
          in_logical = true;
        }
        skip_string();  // prefixed string literal; the prefix is not a token
        continue;
      }
      emit(std::move(ident));
      continue;
    }
    if (digit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && digit(static_cast<unsigned char>(src[i + 1])))) {
      // Numeric literal, including exponent forms like 1e-5.
      ++i;
      while (i < n) {
        const unsigned char d = static_cast<unsigned char>(src[i]);
        if (ident_continue(d) || d == '.') {
          ++i;
          continue;
        }
        if ((d == '+' || d == '-') && i > 0 &&
            (src[i - 1] == 'e' || src[i - 1] == 'E') && i + 1 < n &&
            digit(static_cast<unsigned char>(src[i + 1]))) {
          ++i;
          continue;
        }
        break;
      }
      continue;
    }

    // Operators and punctuation, longest match first.
    std::string_view rest = src.substr(i);
    std::string_view matched;
    for (std::string_view op : kOps3)
      if (rest.substr(0, 3) == op) {
        matched = op;
        break;
      }
    if (matched.empty())
      for (std::string_view op : kOps2)
        if (rest.substr(0, 2) == op) {
          matched = op;
          break;
        }
    if (matched.empty()) matched = rest.substr(0, 1);
    if (c == '(' || c == '[' || c == '{') ++depth;
    if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
    emit(std::string(matched));
    i += matched.size();
  }
  flush();
  return out;
}

namespace {

struct Scope {
  int header_indent;
  std::size_t unit_index;  // SIZE_MAX when the scope has no unit yet (module)
  bool is_class;
  bool is_def;
  std::string name;
};

bool identifier_like(const std::string& token) {
  return !token.empty() && ident_start(static_cast<unsigned char>(token[0]));
}

}  // namespace

std::vector<RawUnit> split_units(std::string_view source,
                                 const SplitOptions& options) {
  const std::vector<LogicalLine> lines = tokenize_source(source);
  std::vector<RawUnit> units;
  std::vector<Scope> scopes;
  scopes.push_back({-1, SIZE_MAX, false, false, ""});

  auto qualified_name = [&](const std::string& own) {
    std::string name;
    for (const Scope& s : scopes)
      if (!s.name.empty()) {
        name += s.name;
        name += '.';
      }
    name += own;
    return name;
  };

  for (const LogicalLine& line : lines) {
    while (scopes.size() > 1 && line.indent <= scopes.back().header_indent)
      scopes.pop_back();

    const auto& toks = line.tokens;
    std::size_t kw = 0;
    if (toks[0] == "async" && toks.size() > 1 && toks[1] == "def") kw = 1;
    const bool is_def = toks[kw] == "def";
    const bool is_class = toks[kw] == "class";

    if (is_def || is_class) {
      const std::string own = kw + 1 < toks.size() && identifier_like(toks[kw + 1])
                                  ? toks[kw + 1]
                                  : std::string("<anonymous>");
      Scope& parent = scopes.back();
      const bool nested_def = is_def && parent.is_def;
      std::size_t unit_index;
      if (nested_def && !options.nested_defs_as_units) {
        unit_index = parent.unit_index;
      } else {
        RawUnit unit;
        unit.kind = is_class ? UnitKind::Class
                             : (parent.is_class ? UnitKind::Method
                                                : UnitKind::Function);
        unit.name = qualified_name(own);
        unit.first_line = line.line_no;
        units.push_back(std::move(unit));
        unit_index = units.size() - 1;
      }
      RawUnit& unit = units[unit_index];
      unit.tokens.insert(unit.tokens.end(), toks.begin(), toks.end());
      scopes.push_back({line.indent, unit_index, is_class, is_def, own});
      continue;
    }

    if (scopes.back().unit_index == SIZE_MAX) {
      // First residual module-level statement creates the "<main>" unit.
      RawUnit unit;
      unit.kind = UnitKind::Main;
      unit.name = "<main>";
      unit.first_line = line.line_no;
      units.push_back(std::move(unit));
      scopes.front().unit_index = units.size() - 1;
    }
    RawUnit& unit = units[scopes.back().unit_index];
    unit.tokens.insert(unit.tokens.end(), toks.begin(), toks.end());
  }
  return units;
}

Subset extract_subset(const InstructionCatalog& catalog,
                      const std::vector<std::string>& tokens) {
  std::vector<std::string> names;
  for (const std::string& token : tokens) {
    const Resolution r = catalog.resolve(token);
    if (r.cls == TokenClass::Instruction) names.emplace_back(r.name);
  }
  return make_subset(std::move(names));
}

Subset extract_subset(const InstructionCatalog& catalog,
                      std::string_view body) {
  std::vector<std::string> tokens;
  for (LogicalLine& line : tokenize_source(body))
    for (std::string& t : line.tokens) tokens.push_back(std::move(t));
  return extract_subset(catalog, tokens);
}

namespace {

std::uint64_t count_lines(std::string_view content) {
  if (content.empty()) return 0;
  std::uint64_t lines = 0;
  for (char c : content)
    if (c == '\n') ++lines;
  if (content.back() != '\n') ++lines;
  return lines;
}

bool has_extension(const std::string& path,
                   const std::vector<std::string>& extensions) {
  for (const std::string& ext : extensions)
    if (path.size() >= ext.size() &&
        path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
      return true;
  return false;
}

struct FileOutcome {
  std::vector<UnitRecord> records;
  std::uint64_t lines = 0;
  std::uint64_t units = 0;
  std::uint64_t dropped_empty = 0;
  bool failed = false;
};

FileOutcome process_file(const std::string& rel_path,
                         const std::string& content,
                         const InstructionCatalog& catalog,
                         const SplitOptions& split) {
  FileOutcome out;
  std::vector<RawUnit> raw;
  try {
    raw = split_units(content, split);
  } catch (const ParseError&) {
    out.failed = true;
    return out;
  }
  out.lines = count_lines(content);
  for (RawUnit& unit : raw) {
    ++out.units;
    Subset subset = extract_subset(catalog, unit.tokens);
    if (subset.empty()) {
      ++out.dropped_empty;
      continue;
    }
    UnitRecord record;
    record.path = rel_path;
    record.kind = unit.kind;
    record.name = std::move(unit.name);
    record.instructions = std::move(subset);
    out.records.push_back(std::move(record));
  }
  return out;
}

}  // namespace

ScanResult scan_corpus(const std::filesystem::path& root,
                       const InstructionCatalog& catalog,
                       const ScanOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const bool is_dir = fs::is_directory(root, ec);
  if (ec) throw IoError("cannot access " + root.string() + ": " + ec.message());

  // (relative path, loader) pairs in lexicographic path order.
  std::vector<std::string> rel_paths;
  std::unique_ptr<ZipReader> zip;
  if (is_dir) {
    for (auto it = fs::recursive_directory_iterator(root, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) throw IoError("walk failed under " + root.string() + ": " + ec.message());
      if (!it->is_regular_file()) continue;
      std::string rel = it->path().lexically_relative(root).generic_string();
      if (has_extension(rel, options.extensions)) rel_paths.push_back(std::move(rel));
    }
    if (ec) throw IoError("walk failed under " + root.string() + ": " + ec.message());
  } else if (fs::is_regular_file(root)) {
    zip = std::make_unique<ZipReader>(root);
    for (const std::string& name : zip->names())
      if (has_extension(name, options.extensions)) rel_paths.push_back(name);
  } else {
    throw IoError("corpus root does not exist: " + root.string());
  }
  std::sort(rel_paths.begin(), rel_paths.end());

  std::vector<FileOutcome> outcomes(rel_paths.size());
  parallel_for(rel_paths.size(), options.jobs, [&](std::size_t i) {
    std::string content;
    try {
      content = zip ? zip->read(rel_paths[i]) : read_file(root / rel_paths[i]);
    } catch (const Error&) {
      outcomes[i].failed = true;
      return;
    }
    outcomes[i] =
        process_file(rel_paths[i], content, catalog, options.split);
  });

  ScanResult result;
  for (FileOutcome& out : outcomes) {
    if (out.failed) {
      ++result.stats.parse_failures;
      continue;
    }
    ++result.stats.files;
    result.stats.lines += out.lines;
    result.stats.units += out.units;
    result.stats.dropped_empty += out.dropped_empty;
    for (UnitRecord& r : out.records) result.records.push_back(std::move(r));
  }
  return result;
}

std::string serialize_units(const std::vector<UnitRecord>& records) {
  std::string out;
  for (const UnitRecord& r : records) {
    ordered_json line;
    line["path"] = r.path;
    line["kind"] = unit_kind_name(r.kind);
    line["name"] = r.name;
    line["instructions"] = r.instructions;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<UnitRecord> parse_units(std::string_view jsonl,
                                    const std::string& origin) {
  std::vector<UnitRecord> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    std::size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    ordered_json doc;
    try {
      doc = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    try {
      UnitRecord r;
      r.path = doc.at("path").get<std::string>();
      r.kind = unit_kind_from_name(doc.at("kind").get<std::string>());
      r.name = doc.at("name").get<std::string>();
      r.instructions = doc.at("instructions").get<std::vector<std::string>>();
      if (r.instructions.empty())
        throw ParseError(where + ": empty instruction subset");
      if (!is_canonical(r.instructions))
        throw ParseError(where + ": instructions not sorted/unique");
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return records;
}

std::string serialize_stats(const CorpusStats& stats) {
  ordered_json doc;
  doc["format_version"] = 1;
  doc["files"] = stats.files;
  doc["lines"] = stats.lines;
  doc["units"] = stats.units;
  doc["dropped_empty"] = stats.dropped_empty;
  doc["parse_failures"] = stats.parse_failures;
  return doc.dump(2) + "\n";
}

Family units_to_family(const std::vector<UnitRecord>& records,
                       std::string source_label) {
  Family family;
  family.meta.source = std::move(source_label);
  family.meta.stage = Stage::Raw;
  family.subsets.reserve(records.size());
  for (const UnitRecord& r : records) family.subsets.push_back(r.instructions);
  return family;
}

}  // namespace subsetminer
