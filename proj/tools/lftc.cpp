#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lft/compare.hpp"
#include "lft/lazyeval.hpp"
#include "lft/modes.hpp"
#include "lft/oracle.hpp"
#include "lft/parser.hpp"
#include "lft/translate.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot read " << path << "\n";
    std::exit(kExitNoInput);
  }
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

lft::Program load_program(const std::string& path) {
  try {
    return lft::parse_program(slurp(path));
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    std::exit(1);
  }
}

lft::DerivationLimits parse_limits(const std::string& spec) {
  lft::DerivationLimits lim;
  std::istringstream is(spec);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--limits", "expected key=value: " + item);
    std::string key = item.substr(0, eq);
    long long val = std::stoll(item.substr(eq + 1));
    if (val <= 0)
      throw CLI::ValidationError("--limits", "limits must be positive");
    if (key == "steps")
      lim.max_steps = (uint64_t)val;
    else if (key == "depth")
      lim.max_depth = (int)val;
    else if (key == "answers")
      lim.max_answers = (int)val;
    else
      throw CLI::ValidationError("--limits", "unknown limit " + key);
  }
  return lim;
}

int cmd_check(const std::string& file, bool json) {
  lft::Program p = load_program(file);
  auto consistent = lft::check_consistent(p);
  auto plain = lft::check_plain(p);
  auto wm = lft::check_well_moded(p);
  auto sm = lft::check_simply_moded(p);
  auto id = lft::check_input_discriminative_static(p);

  bool plainable = true;
  std::string plainable_note;
  try {
    auto pp = lft::make_plain(p);
    plainable = lft::check_plain(pp).ok;
  } catch (const lft::InconsistentInput& e) {
    plainable = false;
    plainable_note = e.what();
  }

  if (json) {
    nlohmann::json j;
    j["consistent"] = consistent.to_json();
    j["plain"] = plain.to_json();
    j["well_moded"] = wm.to_json();
    j["simply_moded"] = sm.to_json();
    j["plainable"] = plainable;
    j["input_discriminative_static"] = id.to_json();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto* r : {&consistent, &plain, &wm, &sm})
      std::cout << r->to_text() << "\n";
    std::cout << "plainable: " << (plainable ? "yes" : "no")
              << (plainable_note.empty() ? "" : " (" + plainable_note + ")")
              << "\n";
    std::cout << "input-discriminative (static): "
              << (id.verdict == lft::InputDiscriminativeResult::Verdict::Yes
                      ? "yes"
                      : "unknown")
              << "\n";
  }
  return consistent.ok && plain.ok ? 0 : 1;
}

lft::Program plain_form(const lft::Program& p, bool force) {
  try {
    return force ? lft::plainify_unchecked(p) : lft::make_plain(p);
  } catch (const lft::InconsistentInput& e) {
    std::cerr << e.what() << " (use --force to transform anyway)\n";
    std::exit(1);
  }
}

int cmd_run(const std::string& file, const std::string& query_text, bool force,
            uint64_t budget, bool stats) {
  lft::Program p = load_program(file);
  lft::Query q;
  lft::QueryCall qc;
  try {
    q = lft::parse_query(query_text, p.next_var_id);
    qc = lft::bridge_query(p, q);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage; // malformed or out-of-contract query
  }
  lft::FunProgram fp;
  try {
    fp = lft::translate(plain_form(p, force), {.unchecked = force});
  } catch (const std::exception& e) {
    std::cerr << e.what() << (force ? "" : " (use --force to run anyway)")
              << "\n";
    return 1;
  }
  lft::EvalResult r = lft::eval_call(fp, qc.fname, qc.inputs, {.budget = budget});
  int code = 2;
  if (r.outcome == lft::Outcome::Value) {
    if (qc.out_vars.empty()) {
      std::cout << "yes\n";
    } else {
      for (size_t i = 0; i < qc.out_vars.size(); ++i)
        std::cout << qc.out_vars[i]->name << " = " << lft::print_term(r.outputs[i])
                  << "\n";
    }
    code = 0;
  } else if (r.outcome == lft::Outcome::Fail) {
    std::cout << "Fail\n";
    code = 1;
  } else {
    std::cout << lft::outcome_name(r.outcome)
              << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  }
  if (stats)
    std::cerr << "steps: " << r.stats.steps
              << ", backtracks: " << r.stats.backtracks << "\n";
  return code;
}

int cmd_solve(const std::string& file, const std::string& query_text,
              const lft::SolveOptions& opts, const std::string& monitor,
              bool json) {
  lft::Program p = load_program(file);
  lft::Query q;
  try {
    q = lft::parse_query(query_text, p.next_var_id);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (!monitor.empty()) {
    nlohmann::json j;
    std::string text;
    if (monitor == "groundness") {
      auto r = lft::monitor_groundness(p, q, opts);
      j = r.to_json();
      text = r.to_text();
    } else if (monitor == "double-matching") {
      auto r = lft::monitor_double_matching(p, q, opts);
      j = r.to_json();
      text = r.to_text();
    } else if (monitor == "input-discriminative") {
      auto r = lft::monitor_input_discriminative(p, q, opts);
      j = r.to_json();
      text = r.to_text();
    } else if (monitor == "partition") {
      auto r = lft::monitor_partition_correctness(p, q, opts);
      j = r.to_json();
      text = r.to_text();
    } else {
      std::cerr << "unknown monitor " << monitor << "\n";
      return kExitUsage;
    }
    std::cout << (json ? j.dump(2) : text) << "\n";
    return 0;
  }
  auto r = lft::ld_solve(p, q, opts);
  std::cout << lft::format_answers(q, r);
  std::cerr << "search: " << lft::search_status_name(r.report.status)
            << ", steps: " << r.report.steps
            << ", failed attempts: " << r.report.failed_attempts << "\n";
  return r.answers.empty() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"mode-directed transpiler from logic programs to a lazy "
               "functional form, with a resolution oracle"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string file, query, out_path, limits_spec, monitor, queries_file;
  bool json = false, force = false, stats = false, dump_ir = false;
  bool no_occurs = false;
  uint64_t budget = 10'000'000;

  auto* check = app.add_subcommand("check", "run the static analyses");
  check->add_option("file", file)->required();
  check->add_flag("--json", json);

  auto* plainify = app.add_subcommand("plainify", "print the plain form");
  plainify->add_option("file", file)->required();
  plainify->add_flag("--force", force, "skip the consistency gate");

  auto* translate =
      app.add_subcommand("translate", "emit the functional translation");
  translate->add_option("file", file)->required();
  translate->add_option("-o,--output", out_path);
  translate->add_flag("--dump-ir", dump_ir, "print the IR as JSON instead");
  translate->add_flag("--force", force, "skip the consistency/plainness gate");

  auto* run = app.add_subcommand("run", "evaluate a query lazily");
  run->add_option("file", file)->required();
  run->add_option("query", query)->required();
  run->add_flag("--force", force, "run inconsistent programs anyway");
  run->add_option("--budget", budget, "evaluation step budget");
  run->add_flag("--stats", stats, "print step counts to stderr");

  auto* solve = app.add_subcommand("solve", "answer a query by LD-resolution");
  solve->add_option("file", file)->required();
  solve->add_option("query", query)->required();
  solve->add_option("--limits", limits_spec, "steps=N,depth=D,answers=K");
  solve->add_flag("--no-occurs", no_occurs, "disable the occurs check");
  solve->add_option("--monitor", monitor,
                    "groundness|double-matching|input-discriminative|partition");
  solve->add_flag("--json", json);

  auto* compare =
      app.add_subcommand("compare", "run queries under both semantics");
  compare->add_option("file", file)->required();
  compare->add_option("queries", queries_file)->required();
  compare->add_flag("--json", json);
  compare->add_option("--budget", budget, "evaluation step budget");
  compare->add_option("--limits", limits_spec, "steps=N,depth=D,answers=K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(file, json);

    if (plainify->parsed()) {
      lft::Program p = load_program(file);
      std::cout << lft::print_program(plain_form(p, force));
      return 0;
    }

    if (translate->parsed()) {
      lft::Program p = load_program(file);
      lft::FunProgram fp;
      try {
        fp = lft::translate(plain_form(p, force), {.unchecked = force});
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      std::string text =
          dump_ir ? lft::funprogram_to_json(fp).dump(2) + "\n"
                  : lft::emit_haskell(fp);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream o(out_path);
        if (!o) {
          std::cerr << "cannot write " << out_path << "\n";
          return kExitNoInput;
        }
        o << text;
      }
      return 0;
    }

    if (run->parsed()) return cmd_run(file, query, force, budget, stats);

    lft::SolveOptions opts;
    if (!limits_spec.empty()) opts.limits = parse_limits(limits_spec);
    opts.occurs_check = !no_occurs;

    if (solve->parsed()) return cmd_solve(file, query, opts, monitor, json);

    if (compare->parsed()) {
      lft::Program p = load_program(file);
      auto lines = lft::parse_query_lines(slurp(queries_file));
      lft::CompareOptions copts;
      copts.eval.budget = budget;
      copts.solve = opts;
      lft::CompareReport rep;
      try {
        rep = lft::run_compare(p, lines, copts);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      std::cout << (json ? rep.to_json().dump(2) + "\n" : rep.to_text());
      return rep.all_passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
