#include "lft/translate.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "lft/modes.hpp"

namespace lft {

namespace {

std::string haskell_op(const std::string& op) {
  if (op == "\\==") return "/=";
  if (op == "=<") return "<=";
  return op;
}

// Per-alternative variable renaming: lowercase the source name, keep it
// unique within the alternative.
class VarNames {
public:
  explicit VarNames(const std::vector<std::string>& reserved) {
    for (const auto& r : reserved) used_.insert(r);
  }

  std::string name_of(const TermPtr& v) {
    auto it = by_id_.find(v->var_id);
    if (it != by_id_.end()) return it->second;
    std::string base = v->name == "_" ? "w" : v->name;
    base[0] = (char)std::tolower((unsigned char)base[0]);
    std::string cand = base;
    for (int n = 1; used_.count(cand); ++n) cand = base + std::to_string(n);
    used_.insert(cand);
    by_id_[v->var_id] = cand;
    return cand;
  }

private:
  std::map<int, std::string> by_id_;
  std::set<std::string> used_;
};

FunExprPtr term_to_expr(const TermPtr& t, VarNames& names) {
  switch (t->kind) {
    case Term::Kind::Var: return FunExpr::var(names.name_of(t));
    case Term::Kind::Int: return FunExpr::integer(t->ival);
    case Term::Kind::Atom:
      if (t->is_nil()) return FunExpr::construct("[]", {});
      return FunExpr::atom(t->name);
    case Term::Kind::Compound: {
      std::vector<FunExprPtr> args;
      for (const auto& a : t->args) args.push_back(term_to_expr(a, names));
      return FunExpr::construct(t->name == "." ? ":" : t->name, std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

// Tuple conventions: arity 0 is unit, arity 1 is the bare expression.
FunExprPtr tupled(std::vector<FunExprPtr> es) {
  if (es.size() == 1) return es[0];
  return FunExpr::tuple(std::move(es));
}

GuardQualifier make_test(const std::string& op, std::vector<FunExprPtr> args) {
  GuardQualifier q;
  q.kind = GuardQualifier::Kind::BoolTest;
  q.op = op;
  q.operands = std::move(args);
  return q;
}

GuardQualifier make_match(FunExprPtr pat, FunExprPtr scrut) {
  GuardQualifier q;
  q.kind = GuardQualifier::Kind::PatternMatch;
  q.pattern = std::move(pat);
  q.scrutinee = std::move(scrut);
  return q;
}

GuardQualifier make_let(std::vector<std::string> vars, FunExprPtr rhs) {
  GuardQualifier q;
  q.kind = GuardQualifier::Kind::LetBind;
  q.let_vars = std::move(vars);
  q.let_rhs = std::move(rhs);
  return q;
}

std::string function_name(const Program& p, const std::string& key) {
  const auto& md = p.modes.at(key);
  // Distinct predicates normally have distinct names; disambiguate by arity
  // only when two arities share a name.
  int same = 0;
  for (const auto& [k, m] : p.modes)
    if (m.predicate == md.predicate) ++same;
  if (same > 1) return md.predicate + "_" + std::to_string(md.arity());
  return md.predicate;
}

} // namespace

FunProgram translate(const Program& p, const TranslateOptions& opts) {
  if (!opts.unchecked) {
    if (!check_consistent(p).ok)
      throw NotConsistent("translate requires a consistent program");
    if (!check_plain(p).ok) throw NotPlain("translate requires a plain program");
  }
  FunProgram fp;
  for (const auto& key : p.predicate_order) {
    const ModeDecl& md = p.modes.at(key);
    FunctionDef f;
    f.name = function_name(p, key);
    f.kind = p.partition.of(key) == Kind::Test ? FunKind::Test : FunKind::NonTest;
    for (Mode m : md.modes) (m == Mode::In ? f.input_arity : f.output_arity)++;
    for (int i = 1; i <= f.input_arity; ++i)
      f.params.push_back("x" + std::to_string(i));

    for (int ci : p.clause_indices(key)) {
      const Clause& c = p.clauses[ci];
      VarNames names(f.params);
      Alternative alt;

      if (f.input_arity > 0) {
        std::vector<FunExprPtr> pats, scruts;
        for (const auto& t : input_args(p, c.head))
          pats.push_back(term_to_expr(t, names));
        for (const auto& prm : f.params) scruts.push_back(FunExpr::var(prm));
        alt.qualifiers.push_back(make_match(tupled(pats), tupled(scruts)));
      }

      for (const auto& atom : c.body) {
        if (is_builtin(atom->name, atom->args.size())) {
          alt.qualifiers.push_back(make_test(
              atom->name,
              {term_to_expr(atom->args[0], names), term_to_expr(atom->args[1], names)}));
          continue;
        }
        std::string akey = atom->name + "/" + std::to_string(atom->args.size());
        if (!p.modes.count(akey)) throw UnknownPredicate("undeclared call to " + akey);
        std::vector<FunExprPtr> in_exprs;
        for (const auto& t : input_args(p, atom))
          in_exprs.push_back(term_to_expr(t, names));
        FunExprPtr call = FunExpr::call(function_name(p, akey), std::move(in_exprs));
        auto outs = output_args(p, atom);
        if (p.partition.of(akey) == Kind::Test) {
          std::vector<FunExprPtr> out_pats;
          for (const auto& t : outs) out_pats.push_back(term_to_expr(t, names));
          FunExprPtr payload =
              outs.empty() ? FunExpr::tuple({}) : tupled(std::move(out_pats));
          alt.qualifiers.push_back(make_match(FunExpr::suc(payload), call));
        } else {
          std::vector<std::string> vars;
          for (const auto& t : outs) {
            if (!t->is_var())
              throw NotPlain("non-variable output of non-test call in " + akey);
            vars.push_back(names.name_of(t));
          }
          alt.qualifiers.push_back(make_let(std::move(vars), call));
        }
      }

      std::vector<FunExprPtr> res;
      for (const auto& t : output_args(p, c.head))
        res.push_back(term_to_expr(t, names));
      FunExprPtr result = res.empty() ? FunExpr::tuple({}) : tupled(std::move(res));
      if (f.kind == FunKind::Test) result = FunExpr::suc(result);
      alt.result = std::move(result);
      f.alternatives.push_back(std::move(alt));
    }
    fp.order.push_back(f.name);
    fp.functions[f.name] = std::move(f);
  }
  return fp;
}

std::string translated_name(const Program& p, const std::string& key) {
  return function_name(p, key);
}

GuardQualifier translate_builtin(const std::string& op,
                                 std::vector<FunExprPtr> args) {
  if (!is_builtin(op, args.size()))
    throw UnknownPredicate("unknown builtin " + op);
  return make_test(op, std::move(args));
}

// ---------------------------------------------------------------------------
// emission

namespace {

std::string emit_expr(const FunExpr& e, bool parenthesize);

std::string emit_list(const FunExpr& e) {
  // best-effort [a,b] sugar for cons spines ending in []
  std::vector<const FunExpr*> elems;
  const FunExpr* cur = &e;
  while (cur->kind == FunExpr::Kind::Construct && cur->name == ":") {
    elems.push_back(cur->args[0].get());
    cur = cur->args[1].get();
  }
  if (cur->kind == FunExpr::Kind::Construct && cur->name == "[]") {
    std::string out = "[";
    for (size_t i = 0; i < elems.size(); ++i) {
      if (i) out += ",";
      out += emit_expr(*elems[i], false);
    }
    return out + "]";
  }
  return "";
}

std::string emit_expr(const FunExpr& e, bool parenthesize) {
  switch (e.kind) {
    case FunExpr::Kind::VarRef: return e.name;
    case FunExpr::Kind::IntLit: {
      std::string s = std::to_string(e.ival);
      return (e.ival < 0 && parenthesize) ? "(" + s + ")" : s;
    }
    case FunExpr::Kind::AtomLit: return "\"" + e.name + "\"";
    case FunExpr::Kind::Construct: {
      if (e.name == "[]") return "[]";
      if (e.name == ":") {
        std::string sugared = emit_list(e);
        if (!sugared.empty()) return sugared;
        std::string s =
            emit_expr(*e.args[0], true) + ":" + emit_expr(*e.args[1], false);
        return parenthesize ? "(" + s + ")" : s;
      }
      std::string s = e.name;
      for (const auto& a : e.args) s += " " + emit_expr(*a, true);
      return (parenthesize && !e.args.empty()) ? "(" + s + ")" : s;
    }
    case FunExpr::Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) s += ",";
        s += emit_expr(*e.args[i], false);
      }
      return s + ")";
    }
    case FunExpr::Kind::Call: {
      std::string s = e.name;
      if (e.args.size() == 1) {
        s += " " + emit_expr(*e.args[0], true);
      } else if (!e.args.empty()) {
        s += " (";
        for (size_t i = 0; i < e.args.size(); ++i) {
          if (i) s += ",";
          s += emit_expr(*e.args[i], false);
        }
        s += ")";
      }
      return (parenthesize && !e.args.empty()) ? "(" + s + ")" : s;
    }
    case FunExpr::Kind::SucWrap: {
      std::string s = "Suc " + emit_expr(*e.args[0], true);
      return parenthesize ? "(" + s + ")" : s;
    }
    case FunExpr::Kind::FailLit: return "Fail";
  }
  throw std::logic_error("unreachable");
}

std::string emit_qualifier(const GuardQualifier& q) {
  switch (q.kind) {
    case GuardQualifier::Kind::PatternMatch:
      return emit_expr(*q.pattern, false) + " <- " +
             emit_expr(*q.scrutinee, false);
    case GuardQualifier::Kind::LetBind: {
      std::string lhs;
      if (q.let_vars.size() == 1) {
        lhs = q.let_vars[0];
      } else {
        lhs = "(";
        for (size_t i = 0; i < q.let_vars.size(); ++i) {
          if (i) lhs += ",";
          lhs += q.let_vars[i];
        }
        lhs += ")";
      }
      return "let " + lhs + " = " + emit_expr(*q.let_rhs, false);
    }
    case GuardQualifier::Kind::BoolTest:
      return emit_expr(*q.operands[0], true) + " " + haskell_op(q.op) + " " +
             emit_expr(*q.operands[1], true);
  }
  throw std::logic_error("unreachable");
}

} // namespace

std::string emit_haskell(const FunProgram& fp) {
  std::ostringstream os;
  os << "data Result a = Suc a | Fail\n";
  for (const auto& name : fp.order) {
    const auto& f = fp.at(name);
    os << "\n";
    std::string headline = f.name;
    if (f.params.size() == 1) {
      headline += " " + f.params[0];
    } else if (!f.params.empty()) {
      headline += " (";
      for (size_t i = 0; i < f.params.size(); ++i) {
        if (i) headline += ",";
        headline += f.params[i];
      }
      headline += ")";
    }
    if (f.alternatives.size() == 1 && f.alternatives[0].qualifiers.empty() &&
        !f.otherwise_fail()) {
      os << headline << " = " << emit_expr(*f.alternatives[0].result, false)
         << "\n";
      continue;
    }
    os << headline << "\n";
    for (const auto& alt : f.alternatives) {
      if (alt.qualifiers.empty()) {
        os << "  | True\n";
      } else {
        for (size_t i = 0; i < alt.qualifiers.size(); ++i)
          os << (i == 0 ? "  | " : "  , ") << emit_qualifier(alt.qualifiers[i])
             << "\n";
      }
      os << "  = " << emit_expr(*alt.result, false) << "\n";
    }
    if (f.otherwise_fail()) os << "  | otherwise = Fail\n";
  }
  return os.str();
}

} // namespace lft
