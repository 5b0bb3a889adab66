#include "subsetminer/catalog.hpp"

#include <algorithm>

#include "json.hpp"
#include "subsetminer/errors.hpp"

namespace subsetminer {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void conflict(const std::string& token, const std::string& a,
                           const std::string& b) {
  throw ConflictError("token \"" + token + "\" claimed by both \"" + a +
                      "\" and \"" + b + "\"");
}

}  // namespace

InstructionCatalog::InstructionCatalog(std::string language,
                                       std::vector<InstructionDef> defs,
                                       std::vector<std::string> excluded_tokens)
    : language_(std::move(language)),
      defs_(std::move(defs)),
      excluded_(std::move(excluded_tokens)) {
  if (defs_.empty()) throw ArgError("catalog has no instructions");
  lookup_.reserve(defs_.size() * 2 + excluded_.size());
  auto owner_name = [&](std::size_t idx) {
    return idx == kExcluded ? std::string("<excluded>") : defs_[idx].name;
  };
  for (std::size_t i = 0; i < defs_.size(); ++i) {
    const InstructionDef& def = defs_[i];
    if (def.name.empty()) throw ArgError("catalog instruction with empty name");
    auto [it, fresh] = lookup_.emplace(def.name, i);
    if (!fresh) conflict(def.name, owner_name(it->second), def.name);
    for (const std::string& alias : def.aliases) {
      if (alias.empty())
        throw ArgError("empty alias on instruction \"" + def.name + "\"");
      auto [ait, afresh] = lookup_.emplace(alias, i);
      if (!afresh) conflict(alias, owner_name(ait->second), def.name);
    }
  }
  for (const std::string& token : excluded_) {
    auto [it, fresh] = lookup_.emplace(token, kExcluded);
    if (!fresh) conflict(token, owner_name(it->second), "<excluded>");
  }
}

InstructionCatalog InstructionCatalog::load(std::string_view json_text,
                                            const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    throw ParseError(origin + ": " + e.what());
  }
  try {
    if (!doc.is_object()) throw ParseError(origin + ": top level is not an object");
    if (doc.contains("format_version") && doc["format_version"].get<int>() != 1)
      throw ParseError(origin + ": unsupported format_version");
    std::string language = doc.value("language", std::string("unknown"));
    std::vector<std::string> excluded;
    if (doc.contains("excluded_tokens"))
      excluded = doc["excluded_tokens"].get<std::vector<std::string>>();
    if (!doc.contains("instructions"))
      throw ParseError(origin + ": missing \"instructions\"");
    std::vector<InstructionDef> defs;
    for (const auto& entry : doc["instructions"]) {
      InstructionDef def;
      if (!entry.is_object() || !entry.contains("name") ||
          !entry.contains("arity"))
        throw ParseError(origin + ": instruction entry needs name and arity: " +
                         entry.dump());
      def.name = entry["name"].get<std::string>();
      const auto arity = entry["arity"].get<std::int64_t>();
      if (arity < 0)
        throw ParseError(origin + ": negative arity on \"" + def.name + "\"");
      def.arity = static_cast<std::uint32_t>(arity);
      if (entry.contains("aliases"))
        def.aliases = entry["aliases"].get<std::vector<std::string>>();
      defs.push_back(std::move(def));
    }
    return InstructionCatalog(std::move(language), std::move(defs),
                              std::move(excluded));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

std::string InstructionCatalog::serialize() const {
  ordered_json doc;
  doc["format_version"] = 1;
  doc["language"] = language_;
  doc["excluded_tokens"] = excluded_;
  ordered_json instructions = ordered_json::array();
  for (const InstructionDef& def : defs_) {
    ordered_json entry;
    entry["name"] = def.name;
    entry["arity"] = def.arity;
    entry["aliases"] = def.aliases;
    instructions.push_back(std::move(entry));
  }
  doc["instructions"] = std::move(instructions);
  return doc.dump(2) + "\n";
}

Resolution InstructionCatalog::resolve(std::string_view token) const {
  auto it = lookup_.find(std::string(token));
  if (it == lookup_.end()) return {TokenClass::Unknown, {}};
  if (it->second == kExcluded) return {TokenClass::Excluded, {}};
  return {TokenClass::Instruction, defs_[it->second].name};
}

bool InstructionCatalog::has_instruction(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  return it != lookup_.end() && it->second != kExcluded &&
         defs_[it->second].name == name;
}

std::vector<std::string> InstructionCatalog::sorted_names() const {
  std::vector<std::string> names;
  names.reserve(defs_.size());
  for (const InstructionDef& def : defs_) names.push_back(def.name);
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace subsetminer
