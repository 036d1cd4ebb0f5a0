#pragma once

#include <map>
#include <optional>

#include "lft/term.hpp"

namespace lft {

// Idempotent binding map var_id -> term.
class Substitution {
public:
  bool bound(int var_id) const { return map_.count(var_id) != 0; }
  void bind(int var_id, TermPtr t) { map_[var_id] = std::move(t); }

  // Follow variable bindings at the root only.
  TermPtr walk(const TermPtr& t) const;
  // Apply fully.
  TermPtr apply(const TermPtr& t) const;

  const std::map<int, TermPtr>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }

  // Restrict the fully-applied substitution to the given variables.
  Substitution restrict_to(const std::vector<TermPtr>& vars) const;

private:
  std::map<int, TermPtr> map_;
};

// Most general unifier; occurs-check on by default (--no-occurs makes the
// resulting binding documented-unsound).
std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  bool occurs_check = true);

// As unify, but extending an existing substitution in place.
bool unify_into(const TermPtr& a, const TermPtr& b, Substitution& s,
                bool occurs_check = true);

// One-way matching: bind only variables on the pattern side; the subject is
// treated as constant. Fails rather than binding a subject variable.
std::optional<Substitution> match_pattern(const TermPtr& pattern,
                                          const TermPtr& subject);

} // namespace lft
