#include "lft/compare.hpp"

#include <set>
#include <sstream>

#include "lft/modes.hpp"
#include "lft/parser.hpp"
#include "lft/translate.hpp"

namespace lft {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::LazyFailOracleSucceeds: return "LazyFailOracleSucceeds";
    case Verdict::MultiAnswerDivergence: return "MultiAnswerDivergence";
    case Verdict::OracleFlounderLazySucceeds: return "OracleFlounderLazySucceeds";
    case Verdict::BothFail: return "BothFail";
    case Verdict::Error: return "Error";
  }
  return "?";
}

QueryCall bridge_query(const Program& p, const Query& q) {
  if (q.atoms.size() != 1)
    throw std::invalid_argument("run/compare need a single-atom query");
  const TermPtr& a = q.atoms[0];
  if (is_builtin(a->name, a->args.size()))
    throw std::invalid_argument("query must call a user predicate");
  QueryCall qc;
  qc.key = a->name + "/" + std::to_string(a->args.size());
  if (!p.modes.count(qc.key))
    throw std::invalid_argument("no mode declaration for " + qc.key);
  const ModeDecl& md = p.mode_of(qc.key);
  std::set<int> out_ids;
  for (size_t i = 0; i < md.modes.size(); ++i) {
    const TermPtr& arg = a->args[i];
    if (md.modes[i] == Mode::In) {
      if (!is_ground(arg))
        throw std::invalid_argument("input argument " + std::to_string(i + 1) +
                                    " must be ground: " + print_term(arg));
      qc.inputs.push_back(arg);
    } else {
      if (!arg->is_var() || !out_ids.insert(arg->var_id).second)
        throw std::invalid_argument("output argument " + std::to_string(i + 1) +
                                    " must be a distinct variable");
      qc.out_vars.push_back(arg);
    }
  }
  for (const auto& in : qc.inputs)
    for (const auto& v : vars_of(in))
      if (out_ids.count(v->var_id))
        throw std::invalid_argument("variable " + v->name +
                                    " used both as input and output");
  qc.fname = translated_name(p, qc.key);
  qc.test_kind = p.partition.of(qc.key) == Kind::Test;
  return qc;
}

std::vector<QueryLine> parse_query_lines(const std::string& content) {
  std::vector<QueryLine> out;
  std::istringstream is(content);
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    QueryLine q;
    size_t hash = line.find('#');
    if (hash != std::string::npos) {
      std::string note = trim(line.substr(hash + 1));
      if (note.rfind("expect:", 0) == 0) q.expect = trim(note.substr(7));
      line = line.substr(0, hash);
    }
    q.text = trim(line);
    if (q.text.empty() || q.text[0] == '%') continue;
    out.push_back(std::move(q));
  }
  return out;
}

namespace {

std::string bindings_line(const std::vector<TermPtr>& vars,
                          const std::map<std::string, TermPtr>& b) {
  std::string s;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ", ";
    s += vars[i]->name + " = " + print_term(b.at(vars[i]->name));
  }
  return s.empty() ? "yes" : s;
}

} // namespace

CompareRow compare_query(const Program& p, const FunProgram& fp,
                         const QueryLine& line, const CompareOptions& opts) {
  CompareRow row;
  row.query_text = line.text;
  row.expect = line.expect;
  Query q;
  QueryCall qc;
  try {
    q = parse_query(line.text, p.next_var_id);
    qc = bridge_query(p, q);
  } catch (const std::exception& e) {
    row.note = e.what();
    row.lazy_result = "error";
    return row;
  }

  EvalResult lazy = eval_call(fp, qc.fname, qc.inputs, opts.eval);
  row.lazy_outcome = lazy.outcome;
  row.lazy_stats = lazy.stats;
  if (lazy.outcome == Outcome::Value) {
    std::string s;
    for (size_t i = 0; i < qc.out_vars.size(); ++i) {
      if (i) s += ", ";
      s += qc.out_vars[i]->name + " = " + print_term(lazy.outputs[i]);
    }
    row.lazy_result = s.empty() ? "yes" : s;
  } else {
    row.lazy_result = outcome_name(lazy.outcome);
  }

  SolveResult oracle = ld_solve(p, q, opts.solve);
  row.oracle_status = oracle.report.status;
  row.oracle_answers = oracle.answers.size();
  std::set<std::string> distinct;
  for (const auto& ans : oracle.answers)
    distinct.insert(bindings_line(q.vars, ans.bindings));
  row.oracle_distinct = distinct.size();
  if (!oracle.answers.empty())
    row.oracle_first = bindings_line(q.vars, oracle.answers[0].bindings);

  bool lazy_value = lazy.outcome == Outcome::Value;
  bool lazy_fail = lazy.outcome == Outcome::Fail;
  if (oracle.report.status == SearchStatus::Floundered) {
    if (lazy_value) {
      row.verdict = Verdict::OracleFlounderLazySucceeds;
    } else {
      row.verdict = Verdict::Error;
      row.note = "oracle floundered and the lazy run did not produce a value";
    }
  } else if (!lazy_value && !lazy_fail) {
    row.verdict = Verdict::Error;
    row.note = lazy.detail.empty() ? outcome_name(lazy.outcome) : lazy.detail;
  } else if (row.oracle_distinct > 1) {
    row.verdict = Verdict::MultiAnswerDivergence;
  } else if (lazy_fail && oracle.answers.empty()) {
    row.verdict = Verdict::BothFail;
    if (oracle.report.status == SearchStatus::LimitHit)
      row.note = "oracle search was bounded";
  } else if (lazy_fail) {
    row.verdict = Verdict::LazyFailOracleSucceeds;
  } else if (oracle.answers.empty()) {
    row.verdict = Verdict::Error;
    row.note = oracle.report.status == SearchStatus::LimitHit
                   ? "oracle hit its limits before any answer"
                   : "lazy run produced a value the oracle refutes";
  } else {
    // one distinct oracle answer, lazy value: compare the bindings
    const auto& first = oracle.answers[0].bindings;
    bool same = true;
    for (size_t i = 0; i < qc.out_vars.size(); ++i)
      if (!alpha_equal(first.at(qc.out_vars[i]->name), lazy.outputs[i]))
        same = false;
    row.verdict = same ? Verdict::Equivalent : Verdict::Error;
    if (!same) row.note = "lazy result differs from the oracle answer";
  }

  row.passed = row.verdict == Verdict::Equivalent ||
               row.verdict == Verdict::BothFail ||
               (!row.expect.empty() && verdict_name(row.verdict) == row.expect);
  return row;
}

CompareReport run_compare(const Program& p, const std::vector<QueryLine>& lines,
                          const CompareOptions& opts) {
  CompareReport rep;
  FunProgram fp = translate(make_plain(p));
  for (const auto& line : lines) {
    CompareRow row = compare_query(p, fp, line, opts);
    rep.all_passed = rep.all_passed && row.passed;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string CompareReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << (r.passed ? "PASS" : "FAIL") << "  " << r.query_text << "\n"
       << "      verdict: " << verdict_name(r.verdict);
    if (!r.expect.empty()) os << " (expected " << r.expect << ")";
    os << "\n      lazy: " << r.lazy_result << "\n      oracle: "
       << (r.oracle_first.empty() ? "no" : r.oracle_first) << " ["
       << r.oracle_answers << " answers, " << r.oracle_distinct << " distinct, "
       << search_status_name(r.oracle_status) << "]\n";
    if (!r.note.empty()) os << "      note: " << r.note << "\n";
  }
  os << (all_passed ? "all queries agree" : "divergences found") << "\n";
  return os.str();
}

nlohmann::json CompareReport::to_json() const {
  nlohmann::json j;
  j["all_passed"] = all_passed;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["query"] = r.query_text;
    if (!r.expect.empty()) row["expect"] = r.expect;
    row["lazy"] = {{"result", r.lazy_result},
                   {"outcome", outcome_name(r.lazy_outcome)},
                   {"steps", r.lazy_stats.steps},
                   {"backtracks", r.lazy_stats.backtracks}};
    row["oracle"] = {{"first", r.oracle_first},
                     {"answers", r.oracle_answers},
                     {"distinct", r.oracle_distinct},
                     {"status", search_status_name(r.oracle_status)}};
    row["verdict"] = verdict_name(r.verdict);
    if (!r.note.empty()) row["note"] = r.note;
    row["passed"] = r.passed;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

} // namespace lft
