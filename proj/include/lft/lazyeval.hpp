#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lft/funir.hpp"
#include "lft/term.hpp"

namespace lft {

// Call-by-need evaluator for the functional IR.  Heap cells (Binding) are
// mutated in place on first demand so sharing is observable: forcing a
// binding twice costs one evaluation.

struct Binding;
using BindingPtr = std::shared_ptr<Binding>;

struct Value {
  enum class Kind { Int, Atom, Construct, Tuple, Suc, Fail };
  Kind kind;
  long long ival = 0;
  std::string name; // Atom text / Construct constructor
  std::vector<BindingPtr> fields; // Construct args, Tuple components, Suc payload
};
using ValuePtr = std::shared_ptr<Value>;

struct Env;
using EnvPtr = std::shared_ptr<Env>;

struct Env {
  std::map<std::string, BindingPtr> vars;
  BindingPtr lookup(const std::string& name) const;
};

struct Binding {
  enum class State {
    Delayed,    // expr/env pending
    Proj,       // component `index` of tuple-valued `source`
    Indirect,   // alias of `source`
    Unfilled,   // allocated but never defined; demand is a black hole
    InProgress, // under evaluation; demand is a black hole
    Evaluated,
  };
  State state = State::Unfilled;
  FunExprPtr expr;
  EnvPtr env;
  BindingPtr source;
  size_t index = 0;
  ValuePtr value;
};

struct EvalLimits {
  uint64_t budget = 10'000'000; // steps before BudgetExceeded
};

struct EvalStats {
  uint64_t steps = 0;      // alternative entries + builtin comparisons
  uint64_t backtracks = 0; // guard alternatives abandoned mid-match
};

enum class Outcome {
  Value,
  Fail,           // Test function exhausted its alternatives
  MatchFailure,   // NonTest function exhausted its alternatives
  BlackHole,
  BudgetExceeded,
  InstantiationError, // non-integer operand of an arithmetic comparison
};

std::string outcome_name(Outcome o);

struct EvalResult {
  Outcome outcome;
  std::vector<TermPtr> outputs; // one term per output position when Value
  EvalStats stats;
  std::string detail; // human-readable note for error outcomes
};

class Evaluator {
 public:
  Evaluator(const FunProgram& prog, EvalLimits limits = {});

  // Calls `fname` on fully ground argument terms and forces the result deep.
  EvalResult run(const std::string& fname, const std::vector<TermPtr>& args);

 private:
  struct Signal { Outcome outcome; std::string detail; };
  struct AltFail {}; // current guard alternative cannot match; try the next

  [[noreturn]] void raise(Outcome o, std::string detail = "");
  void tick();

  ValuePtr whnf(const BindingPtr& b);
  ValuePtr eval(const FunExprPtr& e, const EnvPtr& env);
  ValuePtr call(const FunctionDef& f, std::vector<BindingPtr> args);
  bool try_alternative(const FunctionDef& f, const Alternative& alt,
                       const std::vector<BindingPtr>& args, ValuePtr& out);
  void match(const FunExprPtr& pat, const BindingPtr& subject, Env& frame);
  bool bool_test(const GuardQualifier& q, const EnvPtr& env);
  TermPtr reify(const BindingPtr& b, std::vector<const Value*>& trail);
  TermPtr reify(const BindingPtr& b);

  static BindingPtr lift_term(const TermPtr& t);
  static BindingPtr evaluated(ValuePtr v);

  const FunProgram& prog_;
  EvalLimits limits_;
  EvalStats stats_;
};

// Convenience wrapper: build an evaluator, run one call, return the result.
EvalResult eval_call(const FunProgram& prog, const std::string& fname,
                     const std::vector<TermPtr>& args, EvalLimits limits = {});

// Renders an EvalResult the way the CLI prints it (one line).
std::string format_eval_result(const EvalResult& r, bool test_kind);

} // namespace lft
