#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subsetminer {

struct InstructionDef {
  std::string name;
  std::uint32_t arity = 1;
  std::vector<std::string> aliases;

  bool operator==(const InstructionDef&) const = default;
};

enum class TokenClass { Instruction, Excluded, Unknown };

struct Resolution {
  TokenClass cls = TokenClass::Unknown;
  std::string_view name;  // canonical name, valid while the catalog lives
};

// The instruction universe of one target language: canonical instruction
// names with arities, source-token aliases (e.g. the augmented-assignment
// form of an operator), and tokens explicitly mapped to nothing.
//
// Catalogs are immutable after load and safe for shared concurrent reads.
class InstructionCatalog {
 public:
  InstructionCatalog(std::string language, std::vector<InstructionDef> defs,
                     std::vector<std::string> excluded_tokens);

  // Parses the documented catalog JSON. Throws ParseError on malformed
  // content (with the reporting line number where the parser provides one)
  // and ConflictError on duplicate names/aliases, naming both entries.
  static InstructionCatalog load(std::string_view json_text,
                                 const std::string& origin = "catalog");

  std::string serialize() const;

  // Total over all tokens: canonical name for names and aliases, Excluded
  // for excluded tokens, Unknown otherwise.
  Resolution resolve(std::string_view token) const;

  bool has_instruction(std::string_view name) const;

  const std::string& language() const { return language_; }
  const std::vector<InstructionDef>& defs() const { return defs_; }
  const std::vector<std::string>& excluded_tokens() const { return excluded_; }
  std::size_t size() const { return defs_.size(); }

  // Sorted canonical names, the universe I of this catalog.
  std::vector<std::string> sorted_names() const;

 private:
  std::string language_;
  std::vector<InstructionDef> defs_;
  std::vector<std::string> excluded_;
  // token -> index into defs_, or kExcluded
  std::unordered_map<std::string, std::size_t> lookup_;
  static constexpr std::size_t kExcluded = SIZE_MAX;
};

}  // namespace subsetminer
