#include "lft/funir.hpp"

namespace lft {

namespace {
FunExprPtr make(FunExpr::Kind k, std::string name, long long ival,
                std::vector<FunExprPtr> args) {
  auto e = std::make_shared<FunExpr>();
  e->kind = k;
  e->name = std::move(name);
  e->ival = ival;
  e->args = std::move(args);
  return e;
}
} // namespace

FunExprPtr FunExpr::var(std::string n) { return make(Kind::VarRef, std::move(n), 0, {}); }
FunExprPtr FunExpr::integer(long long v) { return make(Kind::IntLit, "", v, {}); }
FunExprPtr FunExpr::atom(std::string n) { return make(Kind::AtomLit, std::move(n), 0, {}); }
FunExprPtr FunExpr::construct(std::string c, std::vector<FunExprPtr> a) {
  return make(Kind::Construct, std::move(c), 0, std::move(a));
}
FunExprPtr FunExpr::tuple(std::vector<FunExprPtr> a) {
  return make(Kind::Tuple, "", 0, std::move(a));
}
FunExprPtr FunExpr::call(std::string f, std::vector<FunExprPtr> a) {
  return make(Kind::Call, std::move(f), 0, std::move(a));
}
FunExprPtr FunExpr::suc(FunExprPtr e) { return make(Kind::SucWrap, "", 0, {std::move(e)}); }
FunExprPtr FunExpr::fail() { return make(Kind::FailLit, "", 0, {}); }

namespace {

nlohmann::json expr_json(const FunExprPtr& e) {
  nlohmann::json j;
  switch (e->kind) {
    case FunExpr::Kind::VarRef: j["var"] = e->name; break;
    case FunExpr::Kind::IntLit: j["int"] = e->ival; break;
    case FunExpr::Kind::AtomLit: j["atom"] = e->name; break;
    case FunExpr::Kind::Construct:
      j["construct"] = e->name;
      break;
    case FunExpr::Kind::Tuple: j["tuple"] = true; break;
    case FunExpr::Kind::Call: j["call"] = e->name; break;
    case FunExpr::Kind::SucWrap: j["suc"] = true; break;
    case FunExpr::Kind::FailLit: j["fail"] = true; break;
  }
  if (!e->args.empty()) {
    j["args"] = nlohmann::json::array();
    for (const auto& a : e->args) j["args"].push_back(expr_json(a));
  }
  return j;
}

} // namespace

nlohmann::json funprogram_to_json(const FunProgram& fp) {
  nlohmann::json out;
  out["functions"] = nlohmann::json::array();
  for (const auto& name : fp.order) {
    const auto& f = fp.at(name);
    nlohmann::json jf;
    jf["name"] = f.name;
    jf["kind"] = f.kind == FunKind::Test ? "test" : "nontest";
    jf["input_arity"] = f.input_arity;
    jf["output_arity"] = f.output_arity;
    jf["params"] = f.params;
    jf["otherwise_fail"] = f.otherwise_fail();
    jf["alternatives"] = nlohmann::json::array();
    for (const auto& alt : f.alternatives) {
      nlohmann::json ja;
      ja["qualifiers"] = nlohmann::json::array();
      for (const auto& q : alt.qualifiers) {
        nlohmann::json jq;
        switch (q.kind) {
          case GuardQualifier::Kind::PatternMatch:
            jq["match"] = {{"pattern", expr_json(q.pattern)},
                           {"scrutinee", expr_json(q.scrutinee)}};
            break;
          case GuardQualifier::Kind::LetBind:
            jq["let"] = {{"vars", q.let_vars}, {"rhs", expr_json(q.let_rhs)}};
            break;
          case GuardQualifier::Kind::BoolTest: {
            nlohmann::json ops = nlohmann::json::array();
            for (const auto& o : q.operands) ops.push_back(expr_json(o));
            jq["test"] = {{"op", q.op}, {"operands", ops}};
            break;
          }
        }
        ja["qualifiers"].push_back(jq);
      }
      ja["result"] = expr_json(alt.result);
      jf["alternatives"].push_back(ja);
    }
    out["functions"].push_back(jf);
  }
  return out;
}

} // namespace lft
