#pragma once

#include <stdexcept>
#include <string>

#include "lft/ast.hpp"
#include "lft/funir.hpp"

namespace lft {

struct NotPlain : std::runtime_error {
  explicit NotPlain(const std::string& m) : std::runtime_error(m) {}
};
struct NotConsistent : std::runtime_error {
  explicit NotConsistent(const std::string& m) : std::runtime_error(m) {}
};
struct UnknownPredicate : std::runtime_error {
  explicit UnknownPredicate(const std::string& m) : std::runtime_error(m) {}
};

struct TranslateOptions {
  // Skip the consistency/plainness gate (the source program is translated
  // as-is; unproduced variables become never-bound target bindings).
  bool unchecked = false;
};

// The literal clause-by-clause translation: one function per predicate, one
// guard alternative per clause in source order, body atoms becoming
// qualifiers in source order.
FunProgram translate(const Program& p, const TranslateOptions& opts = {});

// Function name a predicate key translates to (disambiguated by arity only
// when two declared predicates share a name).
std::string translated_name(const Program& p, const std::string& key);

// Pattern-guard surface emission, golden-file stable.
std::string emit_haskell(const FunProgram& fp);

} // namespace lft
