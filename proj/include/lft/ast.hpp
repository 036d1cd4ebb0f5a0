#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lft/term.hpp"

namespace lft {

enum class Mode { In, Out };
enum class Kind { Test, NonTest };

// Built-in comparison tests, always Test-kind, all positions In.
bool is_builtin(const std::string& name, size_t arity);
const std::vector<std::string>& builtin_ops();

struct ModeDecl {
  std::string predicate;
  std::vector<Mode> modes; // one per argument position

  size_t arity() const { return modes.size(); }
  std::string key() const { return predicate + "/" + std::to_string(arity()); }
};

struct Clause {
  TermPtr head;             // Atom (arity 0) or Compound
  std::vector<TermPtr> body; // body atoms in source order

  std::string pred_key() const {
    return head->name + "/" + std::to_string(head->args.size());
  }
};

struct Query {
  std::vector<TermPtr> atoms;
  // Named query variables in first-occurrence order.
  std::vector<TermPtr> vars;
};

// predicate key -> Test/NonTest; built-ins and undeclared predicates are Test.
struct Partitioning {
  std::map<std::string, Kind> kinds;

  Kind of(const std::string& key) const {
    auto it = kinds.find(key);
    return it == kinds.end() ? Kind::Test : it->second;
  }
};

struct Program {
  std::vector<Clause> clauses; // textual order
  std::map<std::string, ModeDecl> modes;       // by predicate key
  std::vector<std::string> predicate_order;    // definition order of keys
  Partitioning partition;
  std::vector<Query> queries; // embedded ?- queries, if any
  int next_var_id = 0;

  const ModeDecl& mode_of(const std::string& key) const {
    auto it = modes.find(key);
    if (it == modes.end()) throw std::runtime_error("no mode for " + key);
    return it->second;
  }
  std::vector<int> clause_indices(const std::string& key) const {
    std::vector<int> out;
    for (int i = 0; i < (int)clauses.size(); ++i)
      if (clauses[i].pred_key() == key) out.push_back(i);
    return out;
  }
};

// Mode of an atom occurring in a clause body or head: declared mode for user
// predicates, all-In for builtins.
std::vector<Mode> atom_modes(const Program& p, const TermPtr& atom);

std::vector<TermPtr> input_args(const Program& p, const TermPtr& atom);
std::vector<TermPtr> output_args(const Program& p, const TermPtr& atom);

// Source text for a whole program (directives then clauses); reparses to an
// alpha-equivalent program.
std::string print_program(const Program& p);
std::string print_clause(const Clause& c);

} // namespace lft
