#pragma once

#include <memory>
#include <string>
#include <vector>

namespace lft {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// First-order term. Lists are sugar over '.'/2 and '[]'/0.
struct Term {
  enum class Kind { Var, Int, Atom, Compound };

  Kind kind;
  std::string name;   // variable name, atom name, or compound functor
  long long ival = 0; // Kind::Int payload
  int var_id = -1;    // Kind::Var: unique per occurrence scope
  std::vector<TermPtr> args;

  static TermPtr var(std::string name, int id);
  static TermPtr integer(long long v);
  static TermPtr atom(std::string name);
  static TermPtr compound(std::string functor, std::vector<TermPtr> args);

  static TermPtr nil();
  static TermPtr cons(TermPtr head, TermPtr tail);
  static TermPtr list(const std::vector<TermPtr>& elems, TermPtr tail = nullptr);

  bool is_var() const { return kind == Kind::Var; }
  bool is_int() const { return kind == Kind::Int; }
  bool is_atom() const { return kind == Kind::Atom; }
  bool is_compound() const { return kind == Kind::Compound; }
  bool is_nil() const { return kind == Kind::Atom && name == "[]"; }
  bool is_cons() const { return kind == Kind::Compound && name == "." && args.size() == 2; }
};

// Canonical round-trippable syntax; lists printed in [a,b|T] sugar.
std::string print_term(const TermPtr& t);

// Structural equality, variable ids included.
bool term_equal(const TermPtr& a, const TermPtr& b);

// Equality up to a bijective renaming of variables.
bool alpha_equal(const TermPtr& a, const TermPtr& b);

bool is_ground(const TermPtr& t);

// Variable occurrences in depth-first, left-to-right order (with repeats).
void collect_vars(const TermPtr& t, std::vector<TermPtr>& out);
std::vector<TermPtr> vars_of(const TermPtr& t);

} // namespace lft
