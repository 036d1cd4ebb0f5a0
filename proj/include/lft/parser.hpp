#pragma once

#include <stdexcept>
#include <string>

#include "lft/ast.hpp"

namespace lft {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line), col(col) {}
};

// Missing, duplicate, or arity-mismatched mode declarations; use of an
// undefined predicate.
struct ModeError : std::runtime_error {
  explicit ModeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses the .lp dialect: clauses, ?- queries, :- mode / :- kind directives
// (:- delay directives are accepted and ignored). Variables are renamed apart
// per clause; each `_` occurrence is fresh.
Program parse_program(const std::string& text);

// A comma-separated atom sequence terminated by `.`.
Query parse_query(const std::string& text, int first_var_id = 0);

} // namespace lft
