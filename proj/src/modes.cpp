#include "lft/modes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lft/unify.hpp"

namespace lft {

std::vector<Position> PositionClassification::producing() const {
  std::vector<Position> out;
  for (const auto& p : positions)
    if (p.producing) out.push_back(p);
  return out;
}

std::vector<Position> PositionClassification::consuming() const {
  std::vector<Position> out;
  for (const auto& p : positions)
    if (!p.producing) out.push_back(p);
  return out;
}

PositionClassification classify_positions(const Program& p, const Clause& c) {
  PositionClassification pc;
  auto head_modes = atom_modes(p, c.head);
  for (size_t i = 0; i < head_modes.size(); ++i)
    pc.positions.push_back({0, (int)i + 1, head_modes[i] == Mode::In});
  for (size_t b = 0; b < c.body.size(); ++b) {
    auto ms = atom_modes(p, c.body[b]);
    for (size_t i = 0; i < ms.size(); ++i)
      pc.positions.push_back({(int)b + 1, (int)i + 1, ms[i] == Mode::Out});
  }
  return pc;
}

namespace {

// A query is checked as the headless clause q <- atoms.
Clause query_as_clause(const Query& q) {
  Clause c;
  c.head = Term::atom("'$query'");
  c.body = q.atoms;
  return c;
}

struct VarOcc {
  TermPtr var;
  Position pos;
};

// Every variable occurrence paired with its classified position.
std::vector<VarOcc> var_occurrences(const Program& p, const Clause& c,
                                    bool headless) {
  std::vector<VarOcc> out;
  if (!headless) {
    auto ms = atom_modes(p, c.head);
    for (size_t i = 0; i < ms.size(); ++i)
      for (const auto& v : vars_of(c.head->args[i]))
        out.push_back({v, {0, (int)i + 1, ms[i] == Mode::In}});
  }
  for (size_t b = 0; b < c.body.size(); ++b) {
    auto ms = atom_modes(p, c.body[b]);
    for (size_t i = 0; i < ms.size(); ++i)
      for (const auto& v : vars_of(c.body[b]->args[i]))
        out.push_back({v, {(int)b + 1, (int)i + 1, ms[i] == Mode::Out}});
  }
  return out;
}

void check_consistent_clause(const Program& p, const Clause& c, bool headless,
                             int clause_index, AnalysisReport& rep) {
  auto occs = var_occurrences(p, c, headless);
  std::set<int> produced;
  for (const auto& o : occs)
    if (o.pos.producing) produced.insert(o.var->var_id);
  std::set<int> reported;
  bool ok = true;
  for (const auto& o : occs) {
    if (!produced.count(o.var->var_id) && !reported.count(o.var->var_id)) {
      reported.insert(o.var->var_id);
      ok = false;
      rep.violations.push_back({clause_index, c.head->name, o.pos.locator(c),
                                o.var->name,
                                "variable occurs in no producing position"});
    }
  }
  rep.clause_ok.push_back(ok);
  rep.ok = rep.ok && ok;
}

void check_plain_clause(const Program& p, const Clause& c, bool headless,
                        int clause_index, AnalysisReport& rep) {
  bool ok = true;
  // Head-input variable ids; also used for condition (ii) linearity.
  std::set<int> head_input_vars;
  if (!headless) {
    auto ms = atom_modes(p, c.head);
    std::set<int> seen;
    for (size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] != Mode::In) continue;
      for (const auto& v : vars_of(c.head->args[i])) {
        head_input_vars.insert(v->var_id);
        if (!seen.insert(v->var_id).second) {
          ok = false;
          rep.violations.push_back(
              {clause_index, c.head->name,
               c.head->name + "." + std::to_string(i + 1), v->name,
               "head inputs are not linear"});
        }
      }
    }
  }
  // Condition (i): body outputs are a linear family of variables not drawn
  // from the head inputs (a variable fills at most one producing position).
  std::set<int> body_out_vars;
  for (size_t b = 0; b < c.body.size(); ++b) {
    auto ms = atom_modes(p, c.body[b]);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] != Mode::Out) continue;
      const TermPtr& t = c.body[b]->args[i];
      std::string loc = c.body[b]->name + "." + std::to_string(i + 1);
      if (!t->is_var()) {
        ok = false;
        rep.violations.push_back({clause_index, c.head->name, loc, "",
                                  "body output position is not a variable"});
        continue;
      }
      if (!body_out_vars.insert(t->var_id).second) {
        ok = false;
        rep.violations.push_back({clause_index, c.head->name, loc, t->name,
                                  "body output variable is repeated"});
      } else if (head_input_vars.count(t->var_id)) {
        ok = false;
        rep.violations.push_back(
            {clause_index, c.head->name, loc, t->name,
             "body output variable already fills a head input position"});
      }
    }
  }
  rep.clause_ok.push_back(ok);
  rep.ok = rep.ok && ok;
}

void check_well_moded_clause(const Program& p, const Clause& c, bool headless,
                             int clause_index, AnalysisReport& rep) {
  bool ok = true;
  std::set<int> available; // head inputs, then outputs of earlier atoms
  auto add_vars = [&](const std::vector<TermPtr>& ts) {
    for (const auto& t : ts)
      for (const auto& v : vars_of(t)) available.insert(v->var_id);
  };
  auto covered = [&](const std::vector<TermPtr>& ts, const std::string& where) {
    for (const auto& t : ts)
      for (const auto& v : vars_of(t))
        if (!available.count(v->var_id)) {
          ok = false;
          rep.violations.push_back({clause_index, c.head->name, where, v->name,
                                    "variable not covered by earlier outputs"});
          return;
        }
  };
  if (!headless) add_vars(input_args(p, c.head));
  for (size_t b = 0; b < c.body.size(); ++b) {
    covered(input_args(p, c.body[b]),
            c.body[b]->name + " inputs (atom " + std::to_string(b + 1) + ")");
    if (!ok) break;
    add_vars(output_args(p, c.body[b]));
  }
  if (ok && !headless) covered(output_args(p, c.head), c.head->name + " outputs");
  rep.clause_ok.push_back(ok);
  rep.ok = rep.ok && ok;
}

void check_simply_moded_clause(const Program& p, const Clause& c, bool headless,
                               int clause_index, AnalysisReport& rep) {
  bool ok = true;
  std::set<int> out_family;
  // inputs seen so far: head inputs plus body-atom inputs up to and including
  // the atom under consideration
  std::set<int> inputs_seen;
  if (!headless)
    for (const auto& t : input_args(p, c.head))
      for (const auto& v : vars_of(t)) inputs_seen.insert(v->var_id);
  for (size_t b = 0; b < c.body.size() && ok; ++b) {
    for (const auto& t : input_args(p, c.body[b]))
      for (const auto& v : vars_of(t)) inputs_seen.insert(v->var_id);
    auto ms = atom_modes(p, c.body[b]);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] != Mode::Out) continue;
      const TermPtr& t = c.body[b]->args[i];
      std::string loc = c.body[b]->name + "." + std::to_string(i + 1);
      if (!t->is_var()) {
        ok = false;
        rep.violations.push_back({clause_index, c.head->name, loc, "",
                                  "body output position is not a variable"});
        break;
      }
      if (!out_family.insert(t->var_id).second) {
        ok = false;
        rep.violations.push_back({clause_index, c.head->name, loc, t->name,
                                  "body output variable is repeated"});
        break;
      }
      if (inputs_seen.count(t->var_id)) {
        ok = false;
        rep.violations.push_back({clause_index, c.head->name, loc, t->name,
                                  "body output variable occurs in earlier inputs"});
        break;
      }
    }
  }
  rep.clause_ok.push_back(ok);
  rep.ok = rep.ok && ok;
}

template <typename F>
AnalysisReport over_clauses(const Program& p, const std::string& name, F f) {
  AnalysisReport rep;
  rep.check = name;
  for (size_t i = 0; i < p.clauses.size(); ++i)
    f(p, p.clauses[i], false, (int)i, rep);
  return rep;
}

template <typename F>
AnalysisReport over_query(const Program& p, const Query& q,
                          const std::string& name, F f) {
  AnalysisReport rep;
  rep.check = name;
  f(p, query_as_clause(q), true, -1, rep);
  return rep;
}

} // namespace

AnalysisReport check_consistent(const Program& p) {
  return over_clauses(p, "consistent", check_consistent_clause);
}
AnalysisReport check_plain(const Program& p) {
  return over_clauses(p, "plain", check_plain_clause);
}
AnalysisReport check_well_moded(const Program& p) {
  return over_clauses(p, "well_moded", check_well_moded_clause);
}
AnalysisReport check_simply_moded(const Program& p) {
  return over_clauses(p, "simply_moded", check_simply_moded_clause);
}

AnalysisReport check_query_consistent(const Program& p, const Query& q) {
  return over_query(p, q, "consistent", check_consistent_clause);
}
AnalysisReport check_query_plain(const Program& p, const Query& q) {
  return over_query(p, q, "plain", check_plain_clause);
}
AnalysisReport check_query_well_moded(const Program& p, const Query& q) {
  return over_query(p, q, "well_moded", check_well_moded_clause);
}
AnalysisReport check_query_simply_moded(const Program& p, const Query& q) {
  return over_query(p, q, "simply_moded", check_simply_moded_clause);
}

std::string AnalysisReport::to_text() const {
  std::ostringstream os;
  os << check << ": " << (ok ? "pass" : "FAIL") << "\n";
  for (const auto& v : violations) {
    os << "  clause " << v.clause_index << " (" << v.predicate << ")";
    if (!v.position.empty()) os << " at " << v.position;
    if (!v.variable.empty()) os << " var " << v.variable;
    os << ": " << v.reason << "\n";
  }
  return os.str();
}

nlohmann::json AnalysisReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["ok"] = ok;
  j["clause_ok"] = clause_ok;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    j["violations"].push_back({{"clause", v.clause_index},
                               {"predicate", v.predicate},
                               {"position", v.position},
                               {"variable", v.variable},
                               {"reason", v.reason}});
  return j;
}

// ---------------------------------------------------------------------------
// make_plain

namespace {

class FreshNamer {
public:
  explicit FreshNamer(const Program& p) {
    for (const auto& c : p.clauses) {
      record(c.head);
      for (const auto& a : c.body) record(a);
    }
    next_id_ = p.next_var_id;
  }

  TermPtr fresh(const std::string& base) {
    std::string stem = base == "_" ? "V" : base;
    for (int n = 1;; ++n) {
      std::string cand = stem + std::to_string(n);
      if (used_.insert(cand).second) return Term::var(cand, next_id_++);
    }
  }

  int next_id() const { return next_id_; }

private:
  void record(const TermPtr& t) {
    for (const auto& v : vars_of(t)) used_.insert(v->name);
  }
  std::set<std::string> used_;
  int next_id_;
};

TermPtr replace_arg(const TermPtr& atom, size_t idx, TermPtr arg) {
  std::vector<TermPtr> args = atom->args;
  args[idx] = std::move(arg);
  return Term::compound(atom->name, std::move(args));
}

// Replace the occurrence of `target` (by pointer identity) within t.
TermPtr replace_occurrence(const TermPtr& t, const Term* target, const TermPtr& repl,
                           bool& done) {
  if (done) return t;
  if (t.get() == target) {
    done = true;
    return repl;
  }
  if (!t->is_compound()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr na = replace_occurrence(a, target, repl, done);
    changed = changed || na.get() != a.get();
    args.push_back(std::move(na));
  }
  if (!changed) return t;
  return Term::compound(t->name, std::move(args));
}

TermPtr eq_goal(TermPtr lhs, TermPtr rhs) {
  return Term::compound("==", {std::move(lhs), std::move(rhs)});
}

// One transformation pass; returns true if anything changed.
bool plainify_clause(const Program& p, Clause& c, FreshNamer& fresh) {
  // (a) head-input linearization: keep the first occurrence of each repeated
  // variable, replace later ones by fresh variables, prepend == tests.
  auto head_ms = atom_modes(p, c.head);
  std::set<int> seen;
  for (size_t i = 0; i < head_ms.size(); ++i) {
    if (head_ms[i] != Mode::In) continue;
    for (const auto& v : vars_of(c.head->args[i])) {
      if (seen.insert(v->var_id).second) continue;
      TermPtr nv = fresh.fresh(v->name);
      bool done = false;
      TermPtr narg = replace_occurrence(c.head->args[i], v.get(), nv, done);
      c.head = replace_arg(c.head, i, narg);
      c.body.insert(c.body.begin(), eq_goal(v, nv));
      return true;
    }
  }
  // (b) body-output flattening: a body output must be a variable filling no
  // other producing position; otherwise route it through a fresh variable and
  // an == test placed immediately after the producing atom.
  std::set<int> head_inputs;
  for (const auto& t : input_args(p, c.head))
    for (const auto& v : vars_of(t)) head_inputs.insert(v->var_id);
  std::set<int> outs_seen;
  for (size_t b = 0; b < c.body.size(); ++b) {
    auto ms = atom_modes(p, c.body[b]);
    for (size_t i = 0; i < ms.size(); ++i) {
      if (ms[i] != Mode::Out) continue;
      const TermPtr& t = c.body[b]->args[i];
      bool bad = !t->is_var() ||
                 (t->is_var() && (outs_seen.count(t->var_id) ||
                                  head_inputs.count(t->var_id)));
      if (bad) {
        TermPtr nv = fresh.fresh(t->is_var() ? t->name : "L");
        c.body[b] = replace_arg(c.body[b], i, nv);
        c.body.insert(c.body.begin() + b + 1, eq_goal(t, nv));
        return true;
      }
      outs_seen.insert(t->var_id);
    }
  }
  return false;
}

} // namespace

Program make_plain(const Program& p) {
  auto consistent = check_consistent(p);
  if (!consistent.ok)
    throw InconsistentInput("make_plain requires a consistent program");
  return plainify_unchecked(p);
}

Program plainify_unchecked(const Program& p) {
  Program out = p;
  FreshNamer fresh(out);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& c : out.clauses)
      while (plainify_clause(out, c, fresh)) changed = true;
  }
  out.next_var_id = fresh.next_id();
  return out;
}

// ---------------------------------------------------------------------------
// static input-discriminative check

namespace {

// Rename a clause's variables by offsetting ids, so two clauses are disjoint.
TermPtr offset_vars(const TermPtr& t, int offset) {
  if (t->is_var()) return Term::var(t->name, t->var_id + offset);
  if (!t->is_compound()) return t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(offset_vars(a, offset));
  return Term::compound(t->name, std::move(args));
}

bool complementary(const std::string& a, const std::string& b) {
  return (a == "<" && b == ">=") || (a == ">=" && b == "<") ||
         (a == ">" && b == "=<") || (a == "=<" && b == ">") ||
         (a == "==" && b == "\\==") || (a == "\\==" && b == "==");
}

std::vector<TermPtr> builtin_tests(const Clause& c) {
  std::vector<TermPtr> out;
  for (const auto& a : c.body)
    if (is_builtin(a->name, a->args.size())) out.push_back(a);
  return out;
}

} // namespace

InputDiscriminativeResult check_input_discriminative_static(const Program& p) {
  InputDiscriminativeResult res;
  for (const auto& key : p.predicate_order) {
    auto idx = p.clause_indices(key);
    for (size_t a = 0; a < idx.size(); ++a) {
      for (size_t b = a + 1; b < idx.size(); ++b) {
        const Clause& ca = p.clauses[idx[a]];
        Clause cb = p.clauses[idx[b]];
        int offset = p.next_var_id + 1;
        cb.head = offset_vars(cb.head, offset);
        for (auto& at : cb.body) at = offset_vars(at, offset);

        TermPtr ia = Term::compound("'$in'", input_args(p, ca.head).empty()
                                                 ? std::vector<TermPtr>{Term::nil()}
                                                 : input_args(p, ca.head));
        TermPtr ib = Term::compound("'$in'", input_args(p, cb.head).empty()
                                                 ? std::vector<TermPtr>{Term::nil()}
                                                 : input_args(p, cb.head));
        auto theta = unify(ia, ib);
        if (!theta) continue; // inputs cannot coincide
        bool discriminated = false;
        for (const auto& ta : builtin_tests(ca)) {
          for (const auto& tb : builtin_tests(cb)) {
            if (!complementary(ta->name, tb->name)) continue;
            TermPtr l1 = theta->apply(ta->args[0]);
            TermPtr r1 = theta->apply(ta->args[1]);
            TermPtr l2 = theta->apply(tb->args[0]);
            TermPtr r2 = theta->apply(tb->args[1]);
            bool same_args = term_equal(l1, l2) && term_equal(r1, r2);
            // == and \== are symmetric in their arguments
            bool sym = (ta->name == "==" || ta->name == "\\==") &&
                       term_equal(l1, r2) && term_equal(r1, l2);
            if (same_args || sym) {
              discriminated = true;
              break;
            }
          }
          if (discriminated) break;
        }
        if (!discriminated) {
          res.verdict = InputDiscriminativeResult::Verdict::Unknown;
          res.undecided.push_back({key, idx[a], idx[b]});
        }
      }
    }
  }
  return res;
}

nlohmann::json InputDiscriminativeResult::to_json() const {
  nlohmann::json j;
  j["verdict"] = verdict == Verdict::Yes ? "yes" : "unknown";
  j["undecided"] = nlohmann::json::array();
  for (const auto& pr : undecided)
    j["undecided"].push_back(
        {{"predicate", pr.predicate}, {"clause_a", pr.clause_a}, {"clause_b", pr.clause_b}});
  return j;
}

} // namespace lft
