#include "lft/term.hpp"

#include <map>
#include <sstream>

namespace lft {

TermPtr Term::var(std::string name, int id) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  t->var_id = id;
  return t;
}

TermPtr Term::integer(long long v) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Int;
  t->ival = v;
  return t;
}

TermPtr Term::atom(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Atom;
  t->name = std::move(name);
  return t;
}

TermPtr Term::compound(std::string functor, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Compound;
  t->name = std::move(functor);
  t->args = std::move(args);
  return t;
}

TermPtr Term::nil() { return atom("[]"); }

TermPtr Term::cons(TermPtr head, TermPtr tail) {
  return compound(".", {std::move(head), std::move(tail)});
}

TermPtr Term::list(const std::vector<TermPtr>& elems, TermPtr tail) {
  TermPtr t = tail ? tail : nil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) t = cons(*it, t);
  return t;
}

namespace {

bool bare_atom_ok(const std::string& s) {
  if (s.empty()) return false;
  if (s == "[]") return true;
  if (!(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

void print_rec(const TermPtr& t, std::ostringstream& os) {
  switch (t->kind) {
    case Term::Kind::Var:
      os << t->name;
      return;
    case Term::Kind::Int:
      os << t->ival;
      return;
    case Term::Kind::Atom:
      if (bare_atom_ok(t->name)) {
        os << t->name;
      } else {
        os << '"';
        for (char c : t->name) {
          if (c == '"' || c == '\\') os << '\\';
          os << c;
        }
        os << '"';
      }
      return;
    case Term::Kind::Compound:
      if (t->is_cons()) {
        os << '[';
        print_rec(t->args[0], os);
        TermPtr rest = t->args[1];
        while (rest->is_cons()) {
          os << ',';
          print_rec(rest->args[0], os);
          rest = rest->args[1];
        }
        if (!rest->is_nil()) {
          os << '|';
          print_rec(rest, os);
        }
        os << ']';
        return;
      }
      os << t->name << '(';
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ',';
        print_rec(t->args[i], os);
      }
      os << ')';
      return;
  }
}

} // namespace

std::string print_term(const TermPtr& t) {
  std::ostringstream os;
  print_rec(t, os);
  return os.str();
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: return a->var_id == b->var_id;
    case Term::Kind::Int: return a->ival == b->ival;
    case Term::Kind::Atom: return a->name == b->name;
    case Term::Kind::Compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

namespace {
bool alpha_rec(const TermPtr& a, const TermPtr& b, std::map<int, int>& fwd,
               std::map<int, int>& bwd) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: {
      auto f = fwd.find(a->var_id);
      auto g = bwd.find(b->var_id);
      if (f == fwd.end() && g == bwd.end()) {
        fwd[a->var_id] = b->var_id;
        bwd[b->var_id] = a->var_id;
        return true;
      }
      return f != fwd.end() && g != bwd.end() && f->second == b->var_id &&
             g->second == a->var_id;
    }
    case Term::Kind::Int: return a->ival == b->ival;
    case Term::Kind::Atom: return a->name == b->name;
    case Term::Kind::Compound:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_rec(a->args[i], b->args[i], fwd, bwd)) return false;
      return true;
  }
  return false;
}
} // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  std::map<int, int> fwd, bwd;
  return alpha_rec(a, b, fwd, bwd);
}

bool is_ground(const TermPtr& t) {
  if (t->is_var()) return false;
  for (const auto& a : t->args)
    if (!is_ground(a)) return false;
  return true;
}

void collect_vars(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->is_var()) {
    out.push_back(t);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

std::vector<TermPtr> vars_of(const TermPtr& t) {
  std::vector<TermPtr> out;
  collect_vars(t, out);
  return out;
}

} // namespace lft
