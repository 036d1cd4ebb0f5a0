#include "lft/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lft/modes.hpp"

namespace lft {

std::string search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::LimitHit: return "limit_hit";
    case SearchStatus::Floundered: return "floundered";
  }
  return "?";
}

Clause rename_apart(const Clause& c, int* counter) {
  std::map<int, TermPtr> fresh;
  auto rename = [&](const TermPtr& t) {
    std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& t) -> TermPtr {
      switch (t->kind) {
        case Term::Kind::Var: {
          auto it = fresh.find(t->var_id);
          if (it == fresh.end())
            it = fresh.emplace(t->var_id, Term::var(t->name, (*counter)++)).first;
          return it->second;
        }
        case Term::Kind::Compound: {
          std::vector<TermPtr> args;
          for (const auto& a : t->args) args.push_back(go(a));
          return Term::compound(t->name, std::move(args));
        }
        default: return t;
      }
    };
    return go(t);
  };
  Clause out;
  out.head = rename(c.head);
  for (const auto& a : c.body) out.body.push_back(rename(a));
  return out;
}

std::optional<ResolveResult> resolve_step(const std::vector<TermPtr>& goal,
                                          const Clause& renamed_clause,
                                          bool occurs_check) {
  if (goal.empty()) return std::nullopt;
  auto mgu = unify(goal[0], renamed_clause.head, occurs_check);
  if (!mgu) return std::nullopt;
  ResolveResult r;
  for (const auto& a : renamed_clause.body) r.resolvent.push_back(mgu->apply(a));
  for (size_t i = 1; i < goal.size(); ++i)
    r.resolvent.push_back(mgu->apply(goal[i]));
  r.mgu = std::move(*mgu);
  return r;
}

namespace {

int max_var_id(const TermPtr& t) {
  int m = -1;
  for (const auto& v : vars_of(t)) m = std::max(m, v->var_id);
  return m;
}

struct Search {
  const Program& p;
  SolveOptions opts;
  const SolveObserver* obs;
  SolveResult res;
  int counter = 0;
  bool abort = false;
  bool limit_hit = false;

  void tick() {
    if (res.report.steps >= opts.limits.max_steps) {
      limit_hit = true;
      abort = true;
      return;
    }
    ++res.report.steps;
  }

  // true when the ground builtin holds; integer comparisons on non-integer
  // ground operands simply fail.
  bool eval_builtin(const TermPtr& a) {
    const TermPtr& x = a->args[0];
    const TermPtr& y = a->args[1];
    if (a->name == "==") return term_equal(x, y);
    if (a->name == "\\==") return !term_equal(x, y);
    if (!x->is_int() || !y->is_int()) return false;
    if (a->name == "<") return x->ival < y->ival;
    if (a->name == "=<") return x->ival <= y->ival;
    if (a->name == ">") return x->ival > y->ival;
    if (a->name == ">=") return x->ival >= y->ival;
    return false;
  }

  void dfs(const std::vector<TermPtr>& goal,
           const std::map<std::string, TermPtr>& qbind, int depth) {
    if (abort) return;
    if (goal.empty()) {
      Answer ans;
      ans.bindings = qbind;
      ans.derivation_length = depth;
      res.answers.push_back(std::move(ans));
      if ((int)res.answers.size() >= opts.limits.max_answers) {
        limit_hit = true;
        abort = true;
      }
      return;
    }
    if (depth >= opts.limits.max_depth) {
      limit_hit = true;
      return;
    }
    const TermPtr& a = goal[0];
    if (obs && obs->on_select) obs->on_select(a, depth);
    if (abort) return;

    std::vector<TermPtr> rest(goal.begin() + 1, goal.end());
    if (is_builtin(a->name, a->args.size())) {
      tick();
      if (abort) return;
      if (!is_ground(a->args[0]) || !is_ground(a->args[1])) {
        res.report.floundered_atom = a;
        res.report.status = SearchStatus::Floundered;
        abort = true;
        return;
      }
      if (!eval_builtin(a)) {
        ++res.report.failed_attempts;
        return;
      }
      if (obs && obs->on_step) {
        Clause builtin_step;
        builtin_step.head = a;
        obs->on_step(a, builtin_step, -1, Substitution{}, rest);
      }
      dfs(rest, qbind, depth + 1);
      return;
    }

    std::string key = a->name + "/" + std::to_string(a->args.size());
    for (int ci : p.clause_indices(key)) {
      if (abort) return;
      Clause renamed = rename_apart(p.clauses[ci], &counter);
      auto step = resolve_step(goal, renamed, opts.occurs_check);
      if (!step) {
        ++res.report.failed_attempts;
        continue;
      }
      tick();
      if (abort) return;
      std::map<std::string, TermPtr> qb;
      for (const auto& [n, t] : qbind) qb[n] = step->mgu.apply(t);
      if (obs && obs->on_step)
        obs->on_step(a, renamed, ci, step->mgu, step->resolvent);
      dfs(step->resolvent, qb, depth + 1);
    }
  }
};

} // namespace

SolveResult ld_solve(const Program& p, const Query& q, SolveOptions opts,
                     const SolveObserver* obs) {
  Search s{p, opts, obs};
  s.counter = p.next_var_id;
  for (const auto& a : q.atoms) s.counter = std::max(s.counter, max_var_id(a) + 1);
  std::map<std::string, TermPtr> qbind;
  for (const auto& v : q.vars) qbind[v->name] = v;
  s.dfs(q.atoms, qbind, 0);
  if (s.res.report.status != SearchStatus::Floundered && s.limit_hit)
    s.res.report.status = SearchStatus::LimitHit;
  return s.res;
}

// ---------------------------------------------------------------------------
// Monitors.

std::string MonitorReport::to_text() const {
  std::ostringstream os;
  os << monitor << ": ";
  if (!precondition_ok) {
    os << "precondition failed (" << precondition_note << ")";
    if (violations.empty()) return os.str();
    os << "; ";
  }
  os << (ok ? "ok" : "violations") << " (" << checks << " checks";
  if (inconclusive) os << ", bounded";
  os << ")";
  for (const auto& v : violations)
    os << "\n  " << v.predicate << ": " << v.detail;
  return os.str();
}

nlohmann::json MonitorReport::to_json() const {
  nlohmann::json j;
  j["monitor"] = monitor;
  j["precondition_ok"] = precondition_ok;
  if (!precondition_note.empty()) j["precondition_note"] = precondition_note;
  j["ok"] = ok;
  j["inconclusive"] = inconclusive;
  j["checks"] = checks;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    j["violations"].push_back({{"predicate", v.predicate}, {"detail", v.detail}});
  return j;
}

namespace {

TermPtr wrap_args(const std::vector<TermPtr>& args) {
  if (args.empty()) return Term::atom("$t");
  return Term::compound("$t", args);
}

bool is_user_pred(const Program& p, const TermPtr& a) {
  return p.modes.count(a->name + "/" + std::to_string(a->args.size())) != 0;
}

} // namespace

MonitorReport monitor_groundness(const Program& p, const Query& q,
                                 SolveOptions opts) {
  MonitorReport rep;
  rep.monitor = "groundness";
  if (!check_well_moded(p).ok || !check_query_well_moded(p, q).ok) {
    rep.precondition_ok = false;
    rep.precondition_note = "program or query is not well-moded";
    // Still run: a mis-declared program is exactly what the monitor catches.
  }
  SolveObserver obs;
  obs.on_select = [&](const TermPtr& a, int) {
    if (!is_user_pred(p, a)) return;
    ++rep.checks;
    for (const auto& t : input_args(p, a)) {
      if (!is_ground(t)) {
        rep.ok = false;
        rep.violations.push_back(
            {a->name, "non-ground input " + print_term(t) + " in " +
                          print_term(a)});
      }
    }
  };
  auto r = ld_solve(p, q, opts, &obs);
  rep.inconclusive = r.report.status == SearchStatus::LimitHit;
  return rep;
}

MonitorReport monitor_double_matching(const Program& p, const Query& q,
                                      SolveOptions opts) {
  MonitorReport rep;
  rep.monitor = "double_matching";
  if (!check_well_moded(p).ok || !check_simply_moded(p).ok ||
      !check_query_well_moded(p, q).ok || !check_query_simply_moded(p, q).ok) {
    rep.precondition_ok = false;
    rep.precondition_note = "requires a well-moded and simply moded program/query";
    rep.ok = false;
    return rep;
  }
  SolveObserver obs;
  obs.on_step = [&](const TermPtr& a, const Clause& c, int ci,
                    const Substitution& mgu, const std::vector<TermPtr>&) {
    if (ci < 0) return; // builtin step, no head
    ++rep.checks;
    auto complain = [&](const std::string& why) {
      rep.ok = false;
      rep.violations.push_back({a->name, why + " at " + print_term(a)});
    };
    // (a) head input patterns against the atom's (ground) input terms
    auto m1 = match_pattern(wrap_args(input_args(p, c.head)),
                            wrap_args(input_args(p, a)));
    if (!m1) {
      complain("input matching failed");
      return;
    }
    // (b) atom output variables against the instantiated head outputs
    auto m2 = match_pattern(wrap_args(output_args(p, a)),
                            m1->apply(wrap_args(output_args(p, c.head))));
    if (!m2) {
      complain("output matching failed");
      return;
    }
    // composition must agree with the MGU on every variable of A and H
    Substitution comp = *m1;
    for (const auto& [id, t] : m2->bindings()) comp.bind(id, t);
    std::vector<TermPtr> vars = vars_of(a);
    for (const auto& v : vars_of(c.head)) vars.push_back(v);
    for (const auto& v : vars)
      if (!term_equal(comp.apply(v), mgu.apply(v)))
        complain("composition differs from the MGU on " + v->name);
  };
  auto r = ld_solve(p, q, opts, &obs);
  rep.inconclusive = r.report.status == SearchStatus::LimitHit;
  return rep;
}

std::string InputDiscriminativeRunReport::to_text() const {
  std::ostringstream os;
  os << "input_discriminative: ";
  if (!witnesses.empty())
    os << "violated";
  else
    os << (bounded ? "discriminative (bounded)" : "discriminative");
  os << " (" << checks << " checks, " << answer_count << " answers)";
  for (const auto& w : witnesses) os << "\n  " << w.predicate << ": " << w.detail;
  return os.str();
}

nlohmann::json InputDiscriminativeRunReport::to_json() const {
  nlohmann::json j;
  j["monitor"] = "input_discriminative";
  j["discriminative"] = discriminative;
  j["bounded"] = bounded;
  j["checks"] = checks;
  j["answer_count"] = answer_count;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : witnesses)
    j["witnesses"].push_back({{"predicate", w.predicate}, {"detail", w.detail}});
  return j;
}

InputDiscriminativeRunReport monitor_input_discriminative(const Program& p,
                                                          const Query& q,
                                                          SolveOptions opts) {
  InputDiscriminativeRunReport rep;
  std::set<std::string> seen;
  int fresh = p.next_var_id + 1000000; // clear of every id the search mints

  SolveOptions side = opts;
  side.limits.max_answers = 1;
  side.limits.max_depth = opts.limits.max_depth;
  side.limits.max_steps = std::max<uint64_t>(1000, opts.limits.max_steps / 10);

  SolveObserver obs;
  obs.on_select = [&](const TermPtr& a, int) {
    if (!is_user_pred(p, a)) return;
    std::string key = a->name + "/" + std::to_string(a->args.size());
    auto ins = input_args(p, a);
    for (const auto& t : ins)
      if (!is_ground(t)) return; // only ground input tuples are testable
    std::string memo = key + "|" + print_term(wrap_args(ins));
    if (!seen.insert(memo).second) return;
    ++rep.checks;

    const ModeDecl& md = p.mode_of(key);
    std::vector<int> passing;
    for (int ci : p.clause_indices(key)) {
      // fresh call atom: declared inputs, fresh output variables
      std::vector<TermPtr> args;
      size_t in_i = 0;
      for (size_t k = 0; k < md.modes.size(); ++k)
        args.push_back(md.modes[k] == Mode::In
                           ? ins[in_i++]
                           : Term::var("O" + std::to_string(k), fresh++));
      TermPtr call = args.empty() ? Term::atom(a->name)
                                  : Term::compound(a->name, args);
      int counter = fresh;
      Clause renamed = rename_apart(p.clauses[ci], &counter);
      fresh = counter;
      auto mgu = unify(call, renamed.head, opts.occurs_check);
      if (!mgu) continue;
      // the clause's leading tests, instantiated
      std::vector<TermPtr> prefix;
      for (const auto& b : renamed.body) {
        bool test = is_builtin(b->name, b->args.size()) ||
                    p.partition.of(b->name + "/" +
                                   std::to_string(b->args.size())) == Kind::Test;
        if (!test) break;
        prefix.push_back(mgu->apply(b));
      }
      if (prefix.empty()) {
        passing.push_back(ci);
        continue;
      }
      Query sub;
      sub.atoms = prefix;
      auto r = ld_solve(p, sub, side);
      if (!r.answers.empty()) passing.push_back(ci);
      if (r.answers.empty() && r.report.status != SearchStatus::Exhausted)
        rep.bounded = true;
    }
    if (passing.size() > 1) {
      rep.discriminative = false;
      std::ostringstream d;
      d << "clauses";
      for (int ci : passing) d << " " << ci;
      d << " all pass their tests for input " << print_term(wrap_args(ins));
      rep.witnesses.push_back({a->name, d.str()});
    }
  };
  auto r = ld_solve(p, q, opts, &obs);
  rep.answer_count = r.answers.size();
  if (r.report.status == SearchStatus::LimitHit) rep.bounded = true;
  return rep;
}

MonitorReport monitor_partition_correctness(const Program& p, const Query& q,
                                            SolveOptions opts) {
  MonitorReport rep;
  rep.monitor = "partition_correctness";
  std::set<std::string> seen;

  SolveOptions side = opts;
  side.limits.max_answers = 1;
  side.limits.max_depth = opts.limits.max_depth * 10;

  SolveObserver obs;
  obs.on_select = [&](const TermPtr& a, int) {
    if (!is_user_pred(p, a)) return;
    std::string key = a->name + "/" + std::to_string(a->args.size());
    if (p.partition.of(key) != Kind::NonTest) return;
    if (!seen.insert(print_term(a)).second) return;
    ++rep.checks;
    Query sub;
    sub.atoms = {a};
    auto r = ld_solve(p, sub, side);
    if (r.answers.empty()) {
      if (r.report.status == SearchStatus::Exhausted) {
        rep.ok = false;
        rep.violations.push_back(
            {a->name, "no successful derivation for " + print_term(a)});
      } else {
        rep.inconclusive = true;
      }
    }
  };
  auto r = ld_solve(p, q, opts, &obs);
  if (r.report.status == SearchStatus::LimitHit) rep.inconclusive = true;
  return rep;
}

std::string format_answers(const Query& q, const SolveResult& r) {
  std::ostringstream os;
  if (r.answers.empty()) {
    if (r.report.status == SearchStatus::Floundered)
      os << "floundered on " << print_term(r.report.floundered_atom) << "\n";
    os << "no\n";
    return os.str();
  }
  for (size_t i = 0; i < r.answers.size(); ++i) {
    if (i) os << ";\n";
    if (q.vars.empty()) {
      os << "yes\n";
      continue;
    }
    for (const auto& v : q.vars)
      os << v->name << " = " << print_term(r.answers[i].bindings.at(v->name))
         << "\n";
  }
  return os.str();
}

} // namespace lft
