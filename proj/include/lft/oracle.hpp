#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lft/ast.hpp"
#include "lft/unify.hpp"

namespace lft {

// Reference interpreter: LD-resolution (leftmost selection, depth-first,
// clause source order) with bounded search and runtime monitors.

struct DerivationLimits {
  uint64_t max_steps = 100000;
  int max_depth = 2000;
  int max_answers = 1000;
};

struct Answer {
  // Query variable name -> instantiated term.
  std::map<std::string, TermPtr> bindings;
  int derivation_length = 0;
};

enum class SearchStatus { Exhausted, LimitHit, Floundered };

struct SolveReport {
  SearchStatus status = SearchStatus::Exhausted;
  uint64_t steps = 0;           // successful resolutions + builtin evaluations
  uint64_t failed_attempts = 0; // head-unification and builtin-test failures
  TermPtr floundered_atom;      // set when status == Floundered
};

struct SolveResult {
  std::vector<Answer> answers;
  SolveReport report;
};

std::string search_status_name(SearchStatus s);

// One LD-resolution step against an already renamed-apart clause.
struct ResolveResult {
  std::vector<TermPtr> resolvent;
  Substitution mgu;
};
std::optional<ResolveResult> resolve_step(const std::vector<TermPtr>& goal,
                                          const Clause& renamed_clause,
                                          bool occurs_check = true);

// Clause with all variables replaced by fresh ones, ids taken from *counter.
Clause rename_apart(const Clause& c, int* counter);

struct SolveOptions {
  DerivationLimits limits;
  bool occurs_check = true;
};

// Observation points along the search, for the monitors and property tests.
struct SolveObserver {
  // Leftmost atom about to be resolved (fully instantiated), search depth.
  std::function<void(const TermPtr& selected, int depth)> on_select;
  // A resolution step succeeded: selected atom, the renamed clause used, its
  // index in Program::clauses, the step MGU, and the new goal.
  std::function<void(const TermPtr& selected, const Clause& renamed,
                     int clause_index, const Substitution& mgu,
                     const std::vector<TermPtr>& resolvent)>
      on_step;
};

SolveResult ld_solve(const Program& p, const Query& q, SolveOptions opts = {},
                     const SolveObserver* obs = nullptr);

// ---------------------------------------------------------------------------
// Dynamic monitors.

struct MonitorViolation {
  std::string predicate;
  std::string detail;
};

struct MonitorReport {
  std::string monitor;
  bool precondition_ok = true;
  std::string precondition_note;
  bool ok = true; // no violations (meaningless when !precondition_ok)
  bool inconclusive = false; // limits hit before a verdict
  uint64_t checks = 0;
  std::vector<MonitorViolation> violations;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Every selected user-predicate atom must be ground on its input positions.
// Precondition: program and query are well-moded.
MonitorReport monitor_groundness(const Program& p, const Query& q,
                                 SolveOptions opts = {});

// Each resolution step must decompose into two matchings (atom inputs -> head,
// then head outputs -> atom) whose composition is the step MGU.
// Precondition: well-moded and simply moded.
MonitorReport monitor_double_matching(const Program& p, const Query& q,
                                      SolveOptions opts = {});

// For every selected call with ground inputs, at most one clause may pass its
// leading tests.  Verdict is bounded when limits were hit.
struct InputDiscriminativeRunReport {
  bool discriminative = true;
  bool bounded = false;
  uint64_t checks = 0;
  size_t answer_count = 0;
  std::vector<MonitorViolation> witnesses;

  std::string to_text() const;
  nlohmann::json to_json() const;
};
InputDiscriminativeRunReport monitor_input_discriminative(const Program& p,
                                                          const Query& q,
                                                          SolveOptions opts = {});

// Every selected NonTest atom must have at least one success within bounded
// side-search (side limits default to 10x the main depth limit).
MonitorReport monitor_partition_correctness(const Program& p, const Query& q,
                                            SolveOptions opts = {});

// Answers rendered as `X = term` lines, or `no` when there are none.
std::string format_answers(const Query& q, const SolveResult& r);

} // namespace lft
