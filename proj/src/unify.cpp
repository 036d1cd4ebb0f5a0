#include "lft/unify.hpp"

#include <vector>

namespace lft {

TermPtr Substitution::walk(const TermPtr& t) const {
  TermPtr cur = t;
  while (cur->is_var()) {
    auto it = map_.find(cur->var_id);
    if (it == map_.end()) break;
    cur = it->second;
  }
  return cur;
}

TermPtr Substitution::apply(const TermPtr& t) const {
  TermPtr w = walk(t);
  if (!w->is_compound()) return w;
  std::vector<TermPtr> args;
  args.reserve(w->args.size());
  bool changed = false;
  for (const auto& a : w->args) {
    TermPtr na = apply(a);
    changed = changed || na.get() != a.get();
    args.push_back(std::move(na));
  }
  if (!changed && w.get() == t.get()) return t;
  return Term::compound(w->name, std::move(args));
}

Substitution Substitution::restrict_to(const std::vector<TermPtr>& vars) const {
  Substitution out;
  for (const auto& v : vars) {
    TermPtr t = apply(v);
    if (!(t->is_var() && t->var_id == v->var_id)) out.bind(v->var_id, t);
  }
  return out;
}

namespace {

bool occurs(int var_id, const TermPtr& t, const Substitution& s) {
  TermPtr w = s.walk(t);
  if (w->is_var()) return w->var_id == var_id;
  for (const auto& a : w->args)
    if (occurs(var_id, a, s)) return true;
  return false;
}

} // namespace

bool unify_into(const TermPtr& a, const TermPtr& b, Substitution& s,
                bool occurs_check) {
  TermPtr x = s.walk(a);
  TermPtr y = s.walk(b);
  if (x->is_var() && y->is_var() && x->var_id == y->var_id) return true;
  if (x->is_var()) {
    if (occurs_check && occurs(x->var_id, y, s)) return false;
    s.bind(x->var_id, y);
    return true;
  }
  if (y->is_var()) {
    if (occurs_check && occurs(y->var_id, x, s)) return false;
    s.bind(y->var_id, x);
    return true;
  }
  if (x->kind != y->kind) return false;
  if (x->is_int()) return x->ival == y->ival;
  if (x->is_atom()) return x->name == y->name;
  if (x->name != y->name || x->args.size() != y->args.size()) return false;
  for (size_t i = 0; i < x->args.size(); ++i)
    if (!unify_into(x->args[i], y->args[i], s, occurs_check)) return false;
  return true;
}

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  bool occurs_check) {
  Substitution s;
  if (!unify_into(a, b, s, occurs_check)) return std::nullopt;
  return s;
}

namespace {

bool match_into(const TermPtr& pattern, const TermPtr& subject, Substitution& s) {
  TermPtr p = s.walk(pattern);
  if (p->is_var()) {
    if (subject->is_var() && subject->var_id == p->var_id) return true;
    s.bind(p->var_id, subject);
    return true;
  }
  if (p->kind != subject->kind) return false;
  if (p->is_int()) return p->ival == subject->ival;
  if (p->is_atom()) return p->name == subject->name;
  if (subject->is_var()) return false;
  if (p->name != subject->name || p->args.size() != subject->args.size())
    return false;
  for (size_t i = 0; i < p->args.size(); ++i)
    if (!match_into(p->args[i], subject->args[i], s)) return false;
  return true;
}

} // namespace

std::optional<Substitution> match_pattern(const TermPtr& pattern,
                                          const TermPtr& subject) {
  Substitution s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

} // namespace lft
