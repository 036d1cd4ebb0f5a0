#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lft/ast.hpp"
#include "lft/parser.hpp"
#include "lft/term.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline lft::Program load_fixture(const std::string& name) {
  return lft::parse_program(slurp(fixture_path(name)));
}

// --------------------------------------------------------------------------
// Minimal JSON-schema-subset validator: type, enum, required, properties,
// items.  Returns human-readable errors; empty means valid.

inline void schema_check(const nlohmann::json& schema,
                         const nlohmann::json& value, const std::string& path,
                         std::vector<std::string>& errors) {
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& v : schema["enum"])
      if (v == value) hit = true;
    if (!hit) errors.push_back(path + ": not in enum");
    return;
  }
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    bool ok = (t == "object" && value.is_object()) ||
              (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "number" && value.is_number()) ||
              (t == "boolean" && value.is_boolean());
    if (!ok) {
      errors.push_back(path + ": expected " + t);
      return;
    }
  }
  if (schema.contains("required"))
    for (const auto& k : schema["required"])
      if (!value.contains(k.get<std::string>()))
        errors.push_back(path + ": missing " + k.get<std::string>());
  if (schema.contains("properties") && value.is_object())
    for (const auto& [k, sub] : schema["properties"].items())
      if (value.contains(k)) schema_check(sub, value[k], path + "." + k, errors);
  if (schema.contains("items") && value.is_array())
    for (size_t i = 0; i < value.size(); ++i)
      schema_check(schema["items"], value[i], path + "[" + std::to_string(i) + "]",
                   errors);
}

inline std::vector<std::string> validate_schema(const std::string& schema_file,
                                                const nlohmann::json& value) {
  auto schema = nlohmann::json::parse(slurp(fixture_path("schema/" + schema_file)));
  std::vector<std::string> errors;
  schema_check(schema, value, "$", errors);
  return errors;
}

// --------------------------------------------------------------------------
// Random data.

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) {
  return (int)std::uniform_int_distribution<int>(0, n - 1)(rng);
}

inline lft::TermPtr random_int_list(Rng& rng, int len, int lo = 0, int hi = 9) {
  std::vector<lft::TermPtr> elems;
  for (int i = 0; i < len; ++i)
    elems.push_back(
        lft::Term::integer(std::uniform_int_distribution<int>(lo, hi)(rng)));
  return lft::Term::list(elems);
}

// Terms over the 3-symbol signature {a/0, g/1, h/2} plus variables 0..nvars-1.
inline lft::TermPtr random_sig_term(Rng& rng, int depth, int nvars) {
  int c = pick(rng, depth > 0 ? 4 : 2);
  switch (c) {
    case 0: return lft::Term::atom("a");
    case 1:
      if (nvars > 0) {
        int v = pick(rng, nvars);
        return lft::Term::var(std::string(1, (char)('X' + v)), v);
      }
      return lft::Term::atom("a");
    case 2:
      return lft::Term::compound("g", {random_sig_term(rng, depth - 1, nvars)});
    default:
      return lft::Term::compound("h", {random_sig_term(rng, depth - 1, nvars),
                                       random_sig_term(rng, depth - 1, nvars)});
  }
}

// All ground terms over {a, g/1, h/2} up to the given depth.
inline std::vector<lft::TermPtr> ground_universe(int depth) {
  std::vector<lft::TermPtr> cur = {lft::Term::atom("a")};
  for (int d = 0; d < depth; ++d) {
    std::vector<lft::TermPtr> next = {lft::Term::atom("a")};
    for (const auto& t : cur) next.push_back(lft::Term::compound("g", {t}));
    for (const auto& t : cur)
      for (const auto& u : cur)
        next.push_back(lft::Term::compound("h", {t, u}));
    cur = std::move(next);
  }
  return cur;
}

// Random programs that are consistent, well-moded, and simply moded by
// construction: chains of list transformers q0..qk with mode (in, out).
inline std::string random_moded_program(Rng& rng, int npreds) {
  std::ostringstream os;
  for (int i = 0; i < npreds; ++i) {
    os << ":- mode q" << i << "(in, out).\n";
    os << ":- kind q" << i << "(nontest).\n";
  }
  for (int i = 0; i < npreds; ++i) {
    // base case
    if (pick(rng, 2) == 0)
      os << "q" << i << "([], []).\n";
    else
      os << "q" << i << "([], [" << pick(rng, 5) << "]).\n";
    // recursive case, possibly chaining through an earlier predicate
    int target = pick(rng, i + 1); // 0..i
    if (pick(rng, 2) == 0 || i == 0) {
      os << "q" << i << "([X|Xs], [X|Ys]) :- q" << target << "(Xs, Ys).\n";
    } else {
      int mid = pick(rng, i);
      os << "q" << i << "([X|Xs], [X|Zs]) :- q" << mid << "(Xs, Ys), q"
         << target << "(Ys, Zs).\n";
    }
  }
  return os.str();
}

inline std::string term_text(const lft::TermPtr& t) { return lft::print_term(t); }

} // namespace testsupport
