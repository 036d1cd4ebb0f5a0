#include "lft/ast.hpp"

#include <algorithm>
#include <sstream>

namespace lft {

const std::vector<std::string>& builtin_ops() {
  static const std::vector<std::string> ops = {"==", "\\==", "<", "=<", ">", ">="};
  return ops;
}

bool is_builtin(const std::string& name, size_t arity) {
  if (arity != 2) return false;
  const auto& ops = builtin_ops();
  return std::find(ops.begin(), ops.end(), name) != ops.end();
}

std::vector<Mode> atom_modes(const Program& p, const TermPtr& atom) {
  size_t arity = atom->args.size();
  if (is_builtin(atom->name, arity)) return {Mode::In, Mode::In};
  const auto& md = p.mode_of(atom->name + "/" + std::to_string(arity));
  return md.modes;
}

std::vector<TermPtr> input_args(const Program& p, const TermPtr& atom) {
  auto ms = atom_modes(p, atom);
  std::vector<TermPtr> out;
  for (size_t i = 0; i < ms.size(); ++i)
    if (ms[i] == Mode::In) out.push_back(atom->args[i]);
  return out;
}

std::vector<TermPtr> output_args(const Program& p, const TermPtr& atom) {
  auto ms = atom_modes(p, atom);
  std::vector<TermPtr> out;
  for (size_t i = 0; i < ms.size(); ++i)
    if (ms[i] == Mode::Out) out.push_back(atom->args[i]);
  return out;
}

namespace {
std::string print_atom(const TermPtr& a) {
  if (a->args.size() == 2 && is_builtin(a->name, 2))
    return print_term(a->args[0]) + " " + a->name + " " + print_term(a->args[1]);
  return print_term(a);
}
} // namespace

std::string print_clause(const Clause& c) {
  std::ostringstream os;
  os << print_term(c.head);
  if (!c.body.empty()) {
    os << " :- ";
    for (size_t i = 0; i < c.body.size(); ++i) {
      if (i) os << ", ";
      os << print_atom(c.body[i]);
    }
  }
  os << ".";
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& key : p.predicate_order) {
    const auto& md = p.modes.at(key);
    os << ":- mode " << md.predicate;
    if (!md.modes.empty()) {
      os << "(";
      for (size_t i = 0; i < md.modes.size(); ++i) {
        if (i) os << ",";
        os << (md.modes[i] == Mode::In ? "in" : "out");
      }
      os << ")";
    }
    os << ".\n";
    os << ":- kind " << md.predicate << "("
       << (p.partition.of(key) == Kind::Test ? "test" : "nontest") << ").\n";
  }
  os << "\n";
  for (const auto& c : p.clauses) os << print_clause(c) << "\n";
  for (const auto& q : p.queries) {
    os << "?- ";
    for (size_t i = 0; i < q.atoms.size(); ++i) {
      if (i) os << ", ";
      os << print_atom(q.atoms[i]);
    }
    os << ".\n";
  }
  return os.str();
}

} // namespace lft
