#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lft/ast.hpp"

#include "json.hpp"

namespace lft {

// One argument position of one atom in a clause. atom_index 0 is the head,
// 1..n the body atoms; arg_index is 1-based.
struct Position {
  int atom_index;
  int arg_index;
  bool producing;

  std::string locator(const Clause& c) const {
    const TermPtr& a = atom_index == 0 ? c.head : c.body[atom_index - 1];
    return a->name + "." + std::to_string(arg_index);
  }
};

// Producing positions are the head input positions and the body-atom output
// positions; every argument position is classified exactly once.
struct PositionClassification {
  std::vector<Position> positions;

  std::vector<Position> producing() const;
  std::vector<Position> consuming() const;
};

struct Violation {
  int clause_index; // -1 for query
  std::string predicate;
  std::string position; // e.g. "distribute.2", may be empty
  std::string variable;
  std::string reason;
};

struct AnalysisReport {
  std::string check;
  bool ok = true;
  std::vector<bool> clause_ok;
  std::vector<Violation> violations;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

struct InconsistentInput : std::runtime_error {
  explicit InconsistentInput(const std::string& m) : std::runtime_error(m) {}
};

PositionClassification classify_positions(const Program& p, const Clause& c);

// Every variable occurs in at least one producing position.
AnalysisReport check_consistent(const Program& p);

// (i) body outputs are a linear family of variables disjoint from the head
// inputs; (ii) head inputs are linear.
AnalysisReport check_plain(const Program& p);

// Left-to-right dataflow: Var(inputs_i) within union of earlier outputs.
AnalysisReport check_well_moded(const Program& p);

// Body outputs are fresh distinct variables not used up to their own atom.
AnalysisReport check_simply_moded(const Program& p);

// Query variants, via the dummy-head rule (a query is a headless clause).
AnalysisReport check_query_consistent(const Program& p, const Query& q);
AnalysisReport check_query_plain(const Program& p, const Query& q);
AnalysisReport check_query_well_moded(const Program& p, const Query& q);
AnalysisReport check_query_simply_moded(const Program& p, const Query& q);

// Fixpoint of (a) head-input linearization and (b) body-output flattening,
// both via fresh variables plus == test goals. Throws InconsistentInput.
Program make_plain(const Program& p);

// The same transformation without the consistency gate, for running programs
// that are deliberately out of contract.
Program plainify_unchecked(const Program& p);

// Decidable sufficient condition only: Yes when every same-predicate clause
// pair has non-unifiable input patterns or a complementary builtin test pair;
// otherwise Unknown with the undecided pairs.
struct InputDiscriminativeResult {
  enum class Verdict { Yes, Unknown };
  Verdict verdict = Verdict::Yes;
  struct Pair {
    std::string predicate;
    int clause_a, clause_b;
  };
  std::vector<Pair> undecided;

  nlohmann::json to_json() const;
};

InputDiscriminativeResult check_input_discriminative_static(const Program& p);

} // namespace lft
