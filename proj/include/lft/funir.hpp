#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace lft {

struct FunExpr;
using FunExprPtr = std::shared_ptr<const FunExpr>;

// Expressions of the lazy functional target. BuiltinCall appears only inside
// BoolTest qualifiers.
struct FunExpr {
  enum class Kind {
    VarRef,
    IntLit,
    AtomLit,
    Construct, // data constructors, including ':' and '[]'
    Tuple,     // arity 0 is the unit value ()
    Call,
    SucWrap,
    FailLit,
  };

  Kind kind;
  std::string name; // VarRef / AtomLit / Construct ctor / Call target
  long long ival = 0;
  std::vector<FunExprPtr> args;

  static FunExprPtr var(std::string n);
  static FunExprPtr integer(long long v);
  static FunExprPtr atom(std::string n);
  static FunExprPtr construct(std::string ctor, std::vector<FunExprPtr> args);
  static FunExprPtr tuple(std::vector<FunExprPtr> args);
  static FunExprPtr call(std::string fn, std::vector<FunExprPtr> args);
  static FunExprPtr suc(FunExprPtr e);
  static FunExprPtr fail();
};

// One guard qualifier. Qualifiers run left to right; all variables bound in
// an alternative are in scope for the whole alternative (recursive let).
struct GuardQualifier {
  enum class Kind { PatternMatch, LetBind, BoolTest };

  Kind kind;
  // PatternMatch: pattern (constructors/vars/literals/Suc) against scrutinee.
  FunExprPtr pattern;
  FunExprPtr scrutinee;
  // LetBind: linear tuple of variables bound to rhs (component-wise, lazily).
  std::vector<std::string> let_vars;
  FunExprPtr let_rhs;
  // BoolTest
  std::string op;
  std::vector<FunExprPtr> operands;
};

struct Alternative {
  std::vector<GuardQualifier> qualifiers; // empty list is the trivial guard True
  FunExprPtr result;
};

enum class FunKind { Test, NonTest };

struct FunctionDef {
  std::string name;
  FunKind kind;
  int input_arity = 0;
  int output_arity = 0;
  std::vector<std::string> params; // one per input tuple slot
  std::vector<Alternative> alternatives;
  // Test functions end in `otherwise = Fail`; NonTest functions do not.
  bool otherwise_fail() const { return kind == FunKind::Test; }
};

struct FunProgram {
  std::map<std::string, FunctionDef> functions;
  std::vector<std::string> order; // definition order

  const FunctionDef& at(const std::string& n) const { return functions.at(n); }
  bool has(const std::string& n) const { return functions.count(n) != 0; }
};

nlohmann::json funprogram_to_json(const FunProgram& fp);

} // namespace lft
