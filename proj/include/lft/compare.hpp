#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lft/ast.hpp"
#include "lft/lazyeval.hpp"
#include "lft/oracle.hpp"

namespace lft {

// Bridge a single-atom query onto its translated function: ground input
// arguments become call arguments, output positions must be distinct fresh
// variables and receive the result tuple.
struct QueryCall {
  std::string key;                // predicate key
  std::string fname;              // translated function name
  std::vector<TermPtr> inputs;    // ground input arguments
  std::vector<TermPtr> out_vars;  // query variables at output positions
  bool test_kind = false;
};

// Throws std::invalid_argument on multi-atom queries, non-ground inputs,
// undeclared predicates, or outputs that are not distinct variables.
QueryCall bridge_query(const Program& p, const Query& q);

enum class Verdict {
  Equivalent,
  LazyFailOracleSucceeds,
  MultiAnswerDivergence,
  OracleFlounderLazySucceeds,
  BothFail,
  Error,
};
std::string verdict_name(Verdict v);

struct CompareRow {
  std::string query_text;
  std::string expect; // optional "# expect:" annotation
  std::string lazy_result;
  EvalStats lazy_stats;
  Outcome lazy_outcome = Outcome::Value;
  std::string oracle_first;  // empty when no answer
  size_t oracle_answers = 0; // total
  size_t oracle_distinct = 0;
  SearchStatus oracle_status = SearchStatus::Exhausted;
  Verdict verdict = Verdict::Error;
  std::string note;
  bool passed = false; // Equivalent/BothFail or verdict == expect
};

struct CompareReport {
  std::vector<CompareRow> rows;
  bool all_passed = true;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

struct CompareOptions {
  EvalLimits eval;
  SolveOptions solve;
};

// One query line: source text plus optional expectation annotation.
struct QueryLine {
  std::string text;
  std::string expect;
};

// Parses `queries.txt` content: one query per line, `# expect: Verdict`
// annotations, blank lines and full-line comments skipped.
std::vector<QueryLine> parse_query_lines(const std::string& content);

CompareRow compare_query(const Program& p, const FunProgram& fp,
                         const QueryLine& line, const CompareOptions& opts);

CompareReport run_compare(const Program& p, const std::vector<QueryLine>& lines,
                          const CompareOptions& opts = {});

} // namespace lft
