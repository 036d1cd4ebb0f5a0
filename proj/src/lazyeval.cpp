#include "lft/lazyeval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lft {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Value: return "Value";
    case Outcome::Fail: return "Fail";
    case Outcome::MatchFailure: return "MatchFailure";
    case Outcome::BlackHole: return "BlackHole";
    case Outcome::BudgetExceeded: return "BudgetExceeded";
    case Outcome::InstantiationError: return "InstantiationError";
  }
  return "?";
}

BindingPtr Env::lookup(const std::string& name) const {
  auto it = vars.find(name);
  if (it == vars.end())
    throw std::logic_error("unbound variable in IR: " + name);
  return it->second;
}

Evaluator::Evaluator(const FunProgram& prog, EvalLimits limits)
    : prog_(prog), limits_(limits) {}

void Evaluator::raise(Outcome o, std::string detail) {
  throw Signal{o, std::move(detail)};
}

void Evaluator::tick() {
  if (stats_.steps >= limits_.budget) raise(Outcome::BudgetExceeded);
  ++stats_.steps;
}

BindingPtr Evaluator::evaluated(ValuePtr v) {
  auto b = std::make_shared<Binding>();
  b->state = Binding::State::Evaluated;
  b->value = std::move(v);
  return b;
}

BindingPtr Evaluator::lift_term(const TermPtr& t) {
  auto v = std::make_shared<Value>();
  switch (t->kind) {
    case Term::Kind::Int:
      v->kind = Value::Kind::Int;
      v->ival = t->ival;
      break;
    case Term::Kind::Atom:
      if (t->is_nil()) {
        v->kind = Value::Kind::Construct;
        v->name = "[]";
      } else {
        v->kind = Value::Kind::Atom;
        v->name = t->name;
      }
      break;
    case Term::Kind::Compound:
      v->kind = Value::Kind::Construct;
      v->name = t->name == "." ? ":" : t->name;
      for (const auto& a : t->args) v->fields.push_back(lift_term(a));
      break;
    case Term::Kind::Var:
      throw std::invalid_argument("arguments to run must be ground");
  }
  return evaluated(std::move(v));
}

ValuePtr Evaluator::whnf(const BindingPtr& b) {
  switch (b->state) {
    case Binding::State::Evaluated:
      return b->value;
    case Binding::State::Indirect: {
      ValuePtr v = whnf(b->source);
      b->state = Binding::State::Evaluated;
      b->value = v;
      b->source.reset();
      return v;
    }
    case Binding::State::Proj: {
      ValuePtr src = whnf(b->source);
      if (src->kind != Value::Kind::Tuple || b->index >= src->fields.size())
        throw std::logic_error("projection from non-tuple value");
      BindingPtr field = src->fields[b->index];
      b->state = Binding::State::Indirect;
      b->source = field;
      return whnf(b);
    }
    case Binding::State::Delayed: {
      FunExprPtr e = b->expr;
      EnvPtr env = b->env;
      b->state = Binding::State::InProgress;
      b->expr.reset();
      ValuePtr v = eval(e, env);
      b->state = Binding::State::Evaluated;
      b->value = v;
      b->env.reset();
      return v;
    }
    case Binding::State::Unfilled:
      raise(Outcome::BlackHole, "demanded a variable with no producer");
    case Binding::State::InProgress:
      raise(Outcome::BlackHole, "value depends on itself");
  }
  throw std::logic_error("unreachable");
}

ValuePtr Evaluator::eval(const FunExprPtr& e, const EnvPtr& env) {
  switch (e->kind) {
    case FunExpr::Kind::VarRef:
      return whnf(env->lookup(e->name));
    case FunExpr::Kind::IntLit: {
      auto v = std::make_shared<Value>();
      v->kind = Value::Kind::Int;
      v->ival = e->ival;
      return v;
    }
    case FunExpr::Kind::AtomLit: {
      auto v = std::make_shared<Value>();
      v->kind = Value::Kind::Atom;
      v->name = e->name;
      return v;
    }
    case FunExpr::Kind::Construct:
    case FunExpr::Kind::Tuple:
    case FunExpr::Kind::SucWrap: {
      auto v = std::make_shared<Value>();
      v->kind = e->kind == FunExpr::Kind::Construct ? Value::Kind::Construct
                : e->kind == FunExpr::Kind::Tuple   ? Value::Kind::Tuple
                                                    : Value::Kind::Suc;
      v->name = e->name;
      for (const auto& a : e->args) {
        auto f = std::make_shared<Binding>();
        f->state = Binding::State::Delayed;
        f->expr = a;
        f->env = env;
        v->fields.push_back(std::move(f));
      }
      return v;
    }
    case FunExpr::Kind::FailLit: {
      auto v = std::make_shared<Value>();
      v->kind = Value::Kind::Fail;
      return v;
    }
    case FunExpr::Kind::Call: {
      auto it = prog_.functions.find(e->name);
      if (it == prog_.functions.end())
        throw std::logic_error("call to unknown function " + e->name);
      std::vector<BindingPtr> args;
      for (const auto& a : e->args) {
        auto b = std::make_shared<Binding>();
        b->state = Binding::State::Delayed;
        b->expr = a;
        b->env = env;
        args.push_back(std::move(b));
      }
      return call(it->second, std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_pattern_vars(const FunExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == FunExpr::Kind::VarRef) {
    out.push_back(e->name);
    return;
  }
  for (const auto& a : e->args) collect_pattern_vars(a, out);
}

void collect_free_vars(const FunExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == FunExpr::Kind::VarRef) out.push_back(e->name);
  for (const auto& a : e->args) collect_free_vars(a, out);
}

} // namespace

ValuePtr Evaluator::call(const FunctionDef& f, std::vector<BindingPtr> args) {
  if ((int)args.size() != f.input_arity)
    throw std::logic_error("arity mismatch calling " + f.name);
  for (const auto& alt : f.alternatives) {
    tick();
    try {
      ValuePtr out;
      if (try_alternative(f, alt, args, out)) return out;
    } catch (const AltFail&) {
      ++stats_.backtracks;
    }
  }
  if (f.kind == FunKind::Test) {
    auto v = std::make_shared<Value>();
    v->kind = Value::Kind::Fail;
    return v;
  }
  raise(Outcome::MatchFailure, "no equation of " + f.name + " matched");
}

bool Evaluator::try_alternative(const FunctionDef& f, const Alternative& alt,
                                const std::vector<BindingPtr>& args,
                                ValuePtr& out) {
  auto frame = std::make_shared<Env>();
  for (size_t i = 0; i < f.params.size(); ++i) frame->vars[f.params[i]] = args[i];

  // Allocate every variable the alternative binds before running any
  // qualifier, so let-bindings may be recursive and later bindings are in
  // scope everywhere.  Variables with no binder stay Unfilled; demanding one
  // is a black hole.
  for (const auto& q : alt.qualifiers) {
    switch (q.kind) {
      case GuardQualifier::Kind::PatternMatch: {
        std::vector<std::string> pv;
        collect_pattern_vars(q.pattern, pv);
        for (const auto& n : pv)
          if (!frame->vars.count(n)) frame->vars[n] = std::make_shared<Binding>();
        break;
      }
      case GuardQualifier::Kind::LetBind: {
        if (q.let_vars.size() == 1) {
          auto b = std::make_shared<Binding>();
          b->state = Binding::State::Delayed;
          b->expr = q.let_rhs;
          b->env = frame;
          frame->vars[q.let_vars[0]] = std::move(b);
        } else {
          auto hidden = std::make_shared<Binding>();
          hidden->state = Binding::State::Delayed;
          hidden->expr = q.let_rhs;
          hidden->env = frame;
          for (size_t i = 0; i < q.let_vars.size(); ++i) {
            auto b = std::make_shared<Binding>();
            b->state = Binding::State::Proj;
            b->source = hidden;
            b->index = i;
            frame->vars[q.let_vars[i]] = std::move(b);
          }
        }
        break;
      }
      case GuardQualifier::Kind::BoolTest:
        break;
    }
  }
  {
    std::vector<std::string> fv;
    for (const auto& q : alt.qualifiers) {
      if (q.kind == GuardQualifier::Kind::PatternMatch)
        collect_free_vars(q.scrutinee, fv);
      else if (q.kind == GuardQualifier::Kind::LetBind)
        collect_free_vars(q.let_rhs, fv);
      else
        for (const auto& op : q.operands) collect_free_vars(op, fv);
    }
    collect_free_vars(alt.result, fv);
    for (const auto& n : fv)
      if (!frame->vars.count(n)) frame->vars[n] = std::make_shared<Binding>();
  }

  for (const auto& q : alt.qualifiers) {
    switch (q.kind) {
      case GuardQualifier::Kind::PatternMatch: {
        auto subject = std::make_shared<Binding>();
        subject->state = Binding::State::Delayed;
        subject->expr = q.scrutinee;
        subject->env = frame;
        match(q.pattern, subject, *frame);
        break;
      }
      case GuardQualifier::Kind::LetBind:
        break; // allocated above, evaluated on demand
      case GuardQualifier::Kind::BoolTest:
        if (!bool_test(q, frame)) throw AltFail{};
        break;
    }
  }
  out = eval(alt.result, frame);
  return true;
}

void Evaluator::match(const FunExprPtr& pat, const BindingPtr& subject,
                      Env& frame) {
  if (pat->kind == FunExpr::Kind::VarRef) {
    BindingPtr slot = frame.lookup(pat->name);
    slot->state = Binding::State::Indirect;
    slot->source = subject;
    return;
  }
  ValuePtr v = whnf(subject);
  switch (pat->kind) {
    case FunExpr::Kind::IntLit:
      if (v->kind != Value::Kind::Int || v->ival != pat->ival) throw AltFail{};
      return;
    case FunExpr::Kind::AtomLit:
      if (v->kind != Value::Kind::Atom || v->name != pat->name) throw AltFail{};
      return;
    case FunExpr::Kind::Construct:
      if (v->kind != Value::Kind::Construct || v->name != pat->name ||
          v->fields.size() != pat->args.size())
        throw AltFail{};
      for (size_t i = 0; i < pat->args.size(); ++i)
        match(pat->args[i], v->fields[i], frame);
      return;
    case FunExpr::Kind::Tuple:
      if (v->kind != Value::Kind::Tuple || v->fields.size() != pat->args.size())
        throw AltFail{};
      for (size_t i = 0; i < pat->args.size(); ++i)
        match(pat->args[i], v->fields[i], frame);
      return;
    case FunExpr::Kind::SucWrap:
      if (v->kind != Value::Kind::Suc) throw AltFail{};
      match(pat->args[0], v->fields[0], frame);
      return;
    case FunExpr::Kind::FailLit:
      if (v->kind != Value::Kind::Fail) throw AltFail{};
      return;
    default:
      throw std::logic_error("invalid pattern");
  }
}

bool Evaluator::bool_test(const GuardQualifier& q, const EnvPtr& env) {
  tick();
  auto operand = [&](int i) {
    auto b = std::make_shared<Binding>();
    b->state = Binding::State::Delayed;
    b->expr = q.operands[i];
    b->env = env;
    return b;
  };
  if (q.op == "==" || q.op == "\\==") {
    TermPtr a = reify(operand(0));
    TermPtr b = reify(operand(1));
    bool eq = term_equal(a, b);
    return q.op == "==" ? eq : !eq;
  }
  ValuePtr a = whnf(operand(0));
  ValuePtr b = whnf(operand(1));
  if (a->kind != Value::Kind::Int || b->kind != Value::Kind::Int)
    raise(Outcome::InstantiationError,
          "non-integer operand of " + q.op);
  if (q.op == "<") return a->ival < b->ival;
  if (q.op == "=<") return a->ival <= b->ival;
  if (q.op == ">") return a->ival > b->ival;
  if (q.op == ">=") return a->ival >= b->ival;
  throw std::logic_error("unknown builtin " + q.op);
}

TermPtr Evaluator::reify(const BindingPtr& b, std::vector<const Value*>& trail) {
  ValuePtr v = whnf(b);
  if (std::find(trail.begin(), trail.end(), v.get()) != trail.end())
    raise(Outcome::BlackHole, "cyclic structure forced");
  trail.push_back(v.get());
  TermPtr t;
  switch (v->kind) {
    case Value::Kind::Int: t = Term::integer(v->ival); break;
    case Value::Kind::Atom: t = Term::atom(v->name); break;
    case Value::Kind::Construct: {
      if (v->name == "[]" && v->fields.empty()) {
        t = Term::nil();
      } else {
        std::vector<TermPtr> args;
        for (const auto& f : v->fields) args.push_back(reify(f, trail));
        t = Term::compound(v->name == ":" ? "." : v->name, std::move(args));
      }
      break;
    }
    case Value::Kind::Tuple: {
      std::vector<TermPtr> args;
      for (const auto& f : v->fields) args.push_back(reify(f, trail));
      t = Term::compound("$tuple", std::move(args));
      break;
    }
    case Value::Kind::Suc: {
      std::vector<const Value*> sub;
      t = Term::compound("$suc", {reify(v->fields[0], trail)});
      break;
    }
    case Value::Kind::Fail: t = Term::atom("$fail"); break;
  }
  trail.pop_back();
  return t;
}

TermPtr Evaluator::reify(const BindingPtr& b) {
  std::vector<const Value*> trail;
  return reify(b, trail);
}

EvalResult Evaluator::run(const std::string& fname,
                          const std::vector<TermPtr>& args) {
  stats_ = {};
  EvalResult r;
  auto it = prog_.functions.find(fname);
  if (it == prog_.functions.end())
    throw std::invalid_argument("no function named " + fname);
  const FunctionDef& f = it->second;
  if ((int)args.size() != f.input_arity)
    throw std::invalid_argument("expected " + std::to_string(f.input_arity) +
                                " input arguments for " + fname);
  std::vector<BindingPtr> bs;
  for (const auto& a : args) bs.push_back(lift_term(a));
  try {
    ValuePtr v = call(f, std::move(bs));
    BindingPtr payload = evaluated(v);
    if (f.kind == FunKind::Test) {
      if (v->kind == Value::Kind::Fail) {
        r.outcome = Outcome::Fail;
        r.stats = stats_;
        return r;
      }
      if (v->kind != Value::Kind::Suc)
        throw std::logic_error("test function returned a non-Result value");
      payload = v->fields[0];
    }
    r.outcome = Outcome::Value;
    if (f.output_arity == 1) {
      r.outputs.push_back(reify(payload));
    } else {
      ValuePtr tup = whnf(payload);
      if (tup->kind != Value::Kind::Tuple ||
          (int)tup->fields.size() != f.output_arity)
        throw std::logic_error("result arity mismatch in " + fname);
      for (const auto& fld : tup->fields) r.outputs.push_back(reify(fld));
    }
  } catch (const Signal& s) {
    r.outcome = s.outcome;
    r.detail = s.detail;
  }
  r.stats = stats_;
  return r;
}

EvalResult eval_call(const FunProgram& prog, const std::string& fname,
                     const std::vector<TermPtr>& args, EvalLimits limits) {
  Evaluator ev(prog, limits);
  return ev.run(fname, args);
}

std::string format_eval_result(const EvalResult& r, bool test_kind) {
  switch (r.outcome) {
    case Outcome::Value: {
      std::ostringstream os;
      if (test_kind) os << "Suc ";
      if (r.outputs.size() == 1) {
        os << print_term(r.outputs[0]);
      } else {
        os << "(";
        for (size_t i = 0; i < r.outputs.size(); ++i) {
          if (i) os << ", ";
          os << print_term(r.outputs[i]);
        }
        os << ")";
      }
      return os.str();
    }
    case Outcome::Fail: return "Fail";
    default:
      return r.detail.empty() ? outcome_name(r.outcome)
                              : outcome_name(r.outcome) + ": " + r.detail;
  }
}

} // namespace lft
