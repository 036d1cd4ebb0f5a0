#include "lft/parser.hpp"

#include <cctype>
#include <iostream>
#include <map>
#include <set>

namespace lft {
namespace {

struct Token {
  enum class Kind { Ident, Var, Int, Str, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long long ival = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      size_t start = pos_;
      if (c == '-') bump();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      tok_.kind = Token::Kind::Int;
      tok_.text = src_.substr(start, pos_ - start);
      tok_.ival = std::stoll(tok_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      tok_.text = src_.substr(start, pos_ - start);
      tok_.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                      ? Token::Kind::Var
                      : Token::Kind::Ident;
      return;
    }
    if (c == '"') {
      bump();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) bump();
        s += src_[pos_];
        bump();
      }
      if (pos_ >= src_.size())
        throw ParseError(tok_.line, tok_.col, "unterminated string");
      bump();
      tok_.kind = Token::Kind::Str;
      tok_.text = s;
      return;
    }
    // multi-char operators first
    for (const char* op : {":-", "?-", "\\==", "==", "=<", ">=", "<", ">"}) {
      size_t n = std::string(op).size();
      if (src_.compare(pos_, n, op) == 0) {
        tok_.kind = Token::Kind::Punct;
        tok_.text = op;
        for (size_t i = 0; i < n; ++i) bump();
        return;
      }
    }
    if (std::string("()[]|,.").find(c) != std::string::npos) {
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
public:
  Parser(const std::string& text, int first_var_id)
      : lex_(text), next_var_id_(first_var_id) {}

  Program parse_program() {
    Program p;
    while (lex_.peek().kind != Token::Kind::End) {
      if (is_punct(":-")) {
        lex_.next();
        directive(p);
      } else if (is_punct("?-")) {
        lex_.next();
        p.queries.push_back(query_tail());
      } else {
        clause(p);
      }
    }
    p.next_var_id = next_var_id_;
    finalize(p);
    return p;
  }

  Query parse_query_only() {
    Query q = query_tail();
    if (lex_.peek().kind != Token::Kind::End)
      err("trailing input after query");
    return q;
  }

  int next_var_id() const { return next_var_id_; }

private:
  [[noreturn]] void err(const std::string& msg) {
    throw ParseError(lex_.peek().line, lex_.peek().col, msg);
  }

  bool is_punct(const std::string& s) {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == s;
  }

  void expect(const std::string& s) {
    if (!is_punct(s)) err("expected '" + s + "'");
    lex_.next();
  }

  void directive(Program& p) {
    if (lex_.peek().kind != Token::Kind::Ident) err("expected directive name");
    std::string which = lex_.next().text;
    if (which == "mode") {
      mode_directive(p);
    } else if (which == "kind") {
      kind_directive(p);
    } else if (which == "delay") {
      // Delay declarations are accepted but have no effect here.
      std::cerr << "warning: delay declaration ignored\n";
      while (!is_punct(".") && lex_.peek().kind != Token::Kind::End) lex_.next();
      expect(".");
    } else {
      err("unknown directive '" + which + "'");
    }
  }

  void mode_directive(Program& p) {
    if (lex_.peek().kind != Token::Kind::Ident) err("expected predicate name");
    ModeDecl md;
    md.predicate = lex_.next().text;
    if (is_punct("(")) {
      lex_.next();
      while (true) {
        if (lex_.peek().kind != Token::Kind::Ident) err("expected 'in' or 'out'");
        std::string m = lex_.next().text;
        if (m == "in")
          md.modes.push_back(Mode::In);
        else if (m == "out")
          md.modes.push_back(Mode::Out);
        else
          err("expected 'in' or 'out', got '" + m + "'");
        if (is_punct(",")) {
          lex_.next();
          continue;
        }
        break;
      }
      expect(")");
    }
    expect(".");
    std::string key = md.key();
    if (p.modes.count(key))
      throw ModeError("duplicate mode declaration for " + key);
    p.modes[key] = md;
    p.predicate_order.push_back(key);
  }

  void kind_directive(Program& p) {
    if (lex_.peek().kind != Token::Kind::Ident) err("expected predicate name");
    std::string pred = lex_.next().text;
    expect("(");
    if (lex_.peek().kind != Token::Kind::Ident) err("expected 'test' or 'nontest'");
    std::string k = lex_.next().text;
    expect(")");
    expect(".");
    if (k != "test" && k != "nontest")
      err("expected 'test' or 'nontest', got '" + k + "'");
    pending_kinds_[pred] = (k == "test") ? Kind::Test : Kind::NonTest;
  }

  void clause(Program& p) {
    var_ids_.clear();
    Clause c;
    c.head = head_atom();
    if (is_punct(":-")) {
      lex_.next();
      c.body = body_atoms();
    }
    expect(".");
    p.clauses.push_back(std::move(c));
  }

  Query query_tail() {
    var_ids_.clear();
    Query q;
    q.atoms = body_atoms();
    expect(".");
    for (const auto& a : q.atoms)
      for (const auto& v : vars_of(a))
        if (v->name != "_") {
          bool seen = false;
          for (const auto& u : q.vars) seen = seen || u->var_id == v->var_id;
          if (!seen) q.vars.push_back(v);
        }
    return q;
  }

  TermPtr head_atom() {
    if (lex_.peek().kind != Token::Kind::Ident) err("expected predicate name");
    TermPtr a = term();
    if (a->is_compound() || a->is_atom()) return a;
    err("clause head must be an atom");
  }

  std::vector<TermPtr> body_atoms() {
    std::vector<TermPtr> atoms;
    while (true) {
      atoms.push_back(body_atom());
      if (is_punct(",")) {
        lex_.next();
        continue;
      }
      break;
    }
    return atoms;
  }

  // goal := term [op term]
  TermPtr body_atom() {
    TermPtr lhs = term();
    if (lex_.peek().kind == Token::Kind::Punct && is_builtin(lex_.peek().text, 2)) {
      std::string op = lex_.next().text;
      TermPtr rhs = term();
      return Term::compound(op, {lhs, rhs});
    }
    if (!lhs->is_compound() && !lhs->is_atom()) err("expected a body atom");
    return lhs;
  }

  TermPtr term() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Int:
        return Term::integer(lex_.next().ival);
      case Token::Kind::Str:
        return Term::atom(lex_.next().text);
      case Token::Kind::Var: {
        Token v = lex_.next();
        if (v.text == "_") return Term::var("_", next_var_id_++);
        auto it = var_ids_.find(v.text);
        if (it == var_ids_.end())
          it = var_ids_.emplace(v.text, next_var_id_++).first;
        return Term::var(v.text, it->second);
      }
      case Token::Kind::Ident: {
        std::string name = lex_.next().text;
        if (is_punct("(")) {
          lex_.next();
          std::vector<TermPtr> args;
          while (true) {
            args.push_back(term());
            if (is_punct(",")) {
              lex_.next();
              continue;
            }
            break;
          }
          expect(")");
          return Term::compound(name, std::move(args));
        }
        return Term::atom(name);
      }
      case Token::Kind::Punct:
        if (t.text == "[") return list_term();
        err("unexpected '" + t.text + "'");
      default:
        err("unexpected end of input");
    }
  }

  TermPtr list_term() {
    expect("[");
    if (is_punct("]")) {
      lex_.next();
      return Term::nil();
    }
    std::vector<TermPtr> elems;
    while (true) {
      elems.push_back(term());
      if (is_punct(",")) {
        lex_.next();
        continue;
      }
      break;
    }
    TermPtr tail = nullptr;
    if (is_punct("|")) {
      lex_.next();
      tail = term();
    }
    expect("]");
    return Term::list(elems, tail);
  }

  // Mode/definedness checks over the finished program.
  void finalize(Program& p) {
    for (auto& [pred, kind] : pending_kinds_) {
      bool found = false;
      for (auto& [key, md] : p.modes)
        if (md.predicate == pred) {
          p.partition.kinds[key] = kind;
          found = true;
        }
      if (!found) throw ModeError("kind declaration for unknown predicate " + pred);
    }
    std::set<std::string> defined;
    for (const auto& c : p.clauses) {
      std::string key = c.pred_key();
      defined.insert(key);
      if (!p.modes.count(key))
        throw ModeError("no mode declaration for " + key);
    }
    for (const auto& [key, md] : p.modes) {
      (void)md;
      if (!defined.count(key))
        throw ModeError("mode declared for undefined predicate " + key);
    }
    for (const auto& c : p.clauses)
      for (const auto& a : c.body) check_callee(p, a);
    for (const auto& q : p.queries)
      for (const auto& a : q.atoms) check_callee(p, a);
  }

  void check_callee(const Program& p, const TermPtr& atom) {
    if (is_builtin(atom->name, atom->args.size())) return;
    std::string key = atom->name + "/" + std::to_string(atom->args.size());
    if (!p.modes.count(key))
      throw ModeError("call to undefined predicate " + key);
  }

  Lexer lex_;
  std::map<std::string, int> var_ids_; // per clause/query
  std::map<std::string, Kind> pending_kinds_;
  int next_var_id_;
};

} // namespace

Program parse_program(const std::string& text) {
  Parser p(text, 0);
  return p.parse_program();
}

Query parse_query(const std::string& text, int first_var_id) {
  Parser p(text, first_var_id);
  return p.parse_query_only();
}

} // namespace lft
