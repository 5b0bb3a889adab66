#include "subsetminer/catalog.hpp"

#include <string>

#include "doctest.h"
#include "subsetminer/errors.hpp"
#include "subsetminer/util.hpp"

using namespace subsetminer;

namespace {

InstructionCatalog default_catalog() {
  const std::string path = std::string(SUBSETMINER_DATA_DIR) +
                           "/python_catalog.json";
  return InstructionCatalog::load(read_file(path), path);
}

}  // namespace

TEST_CASE("minimal catalog with one entry") {
  const auto catalog = InstructionCatalog::load(
      R"({"language":"python","instructions":[{"name":"len","arity":1}]})");
  CHECK(catalog.size() == 1);
  CHECK(catalog.resolve("len").cls == TokenClass::Instruction);
}

TEST_CASE("alias and exclusion mapping") {
  const auto catalog = InstructionCatalog::load(R"({
    "language": "python",
    "excluded_tokens": ["="],
    "instructions": [{"name": "+", "arity": 2, "aliases": ["+="]}]
  })");
  const Resolution plus_eq = catalog.resolve("+=");
  CHECK(plus_eq.cls == TokenClass::Instruction);
  CHECK(plus_eq.name == "+");
  CHECK(catalog.resolve("=").cls == TokenClass::Excluded);
  CHECK(catalog.resolve("my_local_var").cls == TokenClass::Unknown);
  CHECK(catalog.resolve("+").name == "+");
}

TEST_CASE("duplicate alias is a conflict naming both entries") {
  const char* text = R"({
    "language": "python",
    "instructions": [
      {"name": "add", "arity": 2, "aliases": ["+"]},
      {"name": "plus", "arity": 2, "aliases": ["+"]}
    ]
  })";
  CHECK_THROWS_AS(InstructionCatalog::load(text), ConflictError);
  try {
    InstructionCatalog::load(text);
  } catch (const ConflictError& e) {
    const std::string what = e.what();
    CHECK(what.find("add") != std::string::npos);
    CHECK(what.find("plus") != std::string::npos);
  }
}

TEST_CASE("excluded token colliding with a name is rejected") {
  CHECK_THROWS_AS(InstructionCatalog::load(R"({
    "language": "python",
    "excluded_tokens": ["len"],
    "instructions": [{"name": "len", "arity": 1}]
  })"),
                  ConflictError);
}

TEST_CASE("malformed catalog reports the parse position") {
  try {
    InstructionCatalog::load("{\n  \"language\": \"python\",\n  oops\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("serialize/load round-trips the default catalog") {
  const InstructionCatalog catalog = default_catalog();
  const InstructionCatalog again =
      InstructionCatalog::load(catalog.serialize());
  CHECK(again.language() == catalog.language());
  CHECK(again.defs() == catalog.defs());
  CHECK(again.excluded_tokens() == catalog.excluded_tokens());
  CHECK(again.serialize() == catalog.serialize());
}

TEST_CASE("resolve is total and maps every alias to its instruction") {
  const InstructionCatalog catalog = default_catalog();
  CHECK(catalog.size() >= 200);
  for (const InstructionDef& def : catalog.defs()) {
    CHECK(def.arity >= 1);
    CHECK(catalog.resolve(def.name).name == def.name);
    for (const std::string& alias : def.aliases)
      CHECK(catalog.resolve(alias).name == def.name);
  }
  for (const std::string& token : catalog.excluded_tokens())
    CHECK(catalog.resolve(token).cls == TokenClass::Excluded);
  CHECK(catalog.resolve("").cls == TokenClass::Unknown);
  CHECK(catalog.resolve("definitely_not_an_instruction").cls ==
        TokenClass::Unknown);
}

TEST_CASE("default catalog carries the documented python mappings") {
  const InstructionCatalog catalog = default_catalog();
  CHECK(catalog.resolve("+=").name == "+");
  CHECK(catalog.resolve("=").cls == TokenClass::Excluded);
  CHECK(catalog.resolve("len").cls == TokenClass::Instruction);
  CHECK(catalog.resolve("print").cls == TokenClass::Instruction);
}
