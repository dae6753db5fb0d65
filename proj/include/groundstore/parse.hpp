#pragma once

// Lexer and recursive-descent parsers for the concrete syntax:
//
//   sort table   sort Name = <type>;
//   types        0 | 1 | int | ref Name | T*T | T+T | T->T
//   programs     ret v | let x = p in p | v v | case v of { inl x -> p | inr y -> p }
//                | match v with (x,y) -> p | init v | l := v | !l
//                | letref x1 := v1, ..., xn := vn in p
//   values       x | () | n | (v, v) | inl v | inr v | fun (x:A) -> p | (v : A) | #k
//   formulas     true false /\ \/ -> * -* |-> = not exists forall mu nu
//   heaplets     over {#0:Int, ...} { #0 -> v, ... }
//
// print_term / print_formula invert the parsers modulo whitespace.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "groundstore/ast.hpp"
#include "groundstore/errors.hpp"
#include "groundstore/heaplet.hpp"
#include "groundstore/types.hpp"

namespace gs {

struct Token {
  enum Kind { Ident, Int, Punct, End };
  Kind kind = End;
  std::string text;
  long long num = 0;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }

  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize() {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::string text, long long n, Span sp) {
      toks_.push_back(Token{k, std::move(text), n, sp});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') { ++line; col = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
      if (c == '-' && i + 1 < src_.size() && src_[i + 1] == '-' &&
          !(i + 2 < src_.size() && (src_[i + 2] == '*' || src_[i + 2] == '>'))) {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      Span sp{line, col};
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
          ++j;
        push(Token::Ident, src_.substr(i, j - i), 0, sp);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && i + 1 < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[i + 1])))) {
        std::size_t j = i + (c == '-' ? 1 : 0);
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        push(Token::Int, src_.substr(i, j - i), std::stoll(src_.substr(i, j - i)), sp);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      // multi-char punctuation, longest first
      static const char* puncts[] = {"|->", ":=", "->", "-*", "/\\", "\\/",
                                     "|-", "(", ")", "{", "}", ",", ";", ":",
                                     ".", "*", "+", "=", "!", "#", "|"};
      bool matched = false;
      for (const char* p : puncts) {
        std::size_t n = std::string(p).size();
        if (src_.compare(i, n, p) == 0) {
          push(Token::Punct, p, 0, sp);
          i += n;
          col += static_cast<int>(n);
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    toks_.push_back(Token{Token::End, "", 0, Span{line, col}});
  }

  std::string src_;
  std::vector<Token> toks_;
};

class Parser {
 public:
  Parser(const std::string& src, const SortTable* table)
      : lexer_(src), table_(table) {}

  // ---- token plumbing -----------------------------------------------------

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i >= lexer_.tokens().size()) i = lexer_.tokens().size() - 1;
    return lexer_.tokens()[i];
  }
  bool at_end() const { return peek().kind == Token::End; }
  Token next() { return lexer_.tokens()[pos_++]; }
  bool is_punct(const std::string& p, int ahead = 0) const {
    return peek(ahead).kind == Token::Punct && peek(ahead).text == p;
  }
  bool is_ident(const std::string& w, int ahead = 0) const {
    return peek(ahead).kind == Token::Ident && peek(ahead).text == w;
  }
  void expect_punct(const std::string& p) {
    if (!is_punct(p)) fail("expected '" + p + "'");
    next();
  }
  void expect_ident(const std::string& w) {
    if (!is_ident(w)) fail("expected '" + w + "'");
    next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (found '" + peek().text + "')", peek().span.line,
                     peek().span.col);
  }
  std::size_t save() const { return pos_; }
  void restore(std::size_t p) { pos_ = p; }

  std::string ident() {
    if (peek().kind != Token::Ident) fail("expected identifier");
    return next().text;
  }

  // ---- types --------------------------------------------------------------

  TypeExpr parse_type() {
    TypeExpr a = parse_sum_type();
    if (is_punct("->")) {
      next();
      return TypeExpr::arrow(a, parse_type());
    }
    return a;
  }

  TypeExpr parse_sum_type() {
    TypeExpr a = parse_prod_type();
    if (is_punct("+")) {
      next();
      return TypeExpr::sum(a, parse_sum_type());
    }
    return a;
  }

  TypeExpr parse_prod_type() {
    TypeExpr a = parse_atom_type();
    if (is_punct("*")) {
      next();
      return TypeExpr::prod(a, parse_prod_type());
    }
    return a;
  }

  TypeExpr parse_atom_type() {
    if (peek().kind == Token::Int) {
      long long n = next().num;
      if (n == 0) return TypeExpr::zero();
      if (n == 1) return TypeExpr::one();
      fail("only 0 and 1 are type constants");
    }
    if (is_ident("int")) { next(); return TypeExpr::integer(); }
    if (is_ident("ref")) {
      next();
      std::string n = ident();
      if (!table_) fail("reference type outside a sort table context");
      auto s = table_->find(n);
      if (!s) fail("unknown sort '" + n + "'");
      return TypeExpr::ref(*s);
    }
    if (is_punct("(")) {
      next();
      TypeExpr a = parse_type();
      expect_punct(")");
      return a;
    }
    fail("expected a type");
  }

  // ---- values -------------------------------------------------------------

  bool starts_value() const {
    if (peek().kind == Token::Ident)
      return !reserved(peek().text) || peek().text == "fun" || peek().text == "inl" ||
             peek().text == "inr";
    return peek().kind == Token::Int || is_punct("(") || is_punct("#");
  }

  static bool reserved(const std::string& w) {
    static const char* words[] = {
        "ret",  "let",    "in",    "case", "of",     "match", "with", "init",
        "letref", "fun",  "inl",   "inr",  "sort",   "ref",   "int",  "true",
        "false", "not",   "exists", "forall", "mu",  "nu",    "over", "var"};
    for (const char* x : words)
      if (w == x) return true;
    return false;
  }

  TermPtr parse_value() {
    Span sp = peek().span;
    if (is_ident("inl") || is_ident("inr")) {
      bool left = next().text == "inl";
      auto t = mk_term(left ? Term::InlV : Term::InrV, sp);
      t->kids.push_back(parse_value_atom());
      return t;
    }
    if (is_ident("fun")) {
      next();
      expect_punct("(");
      auto t = mk_term(Term::FunV, sp);
      t->name = ident();
      expect_punct(":");
      t->anno = parse_type();
      expect_punct(")");
      expect_punct("->");
      t->kids.push_back(parse_computation());
      return t;
    }
    return parse_value_atom();
  }

  TermPtr parse_value_atom() {
    Span sp = peek().span;
    if (peek().kind == Token::Ident && !reserved(peek().text)) {
      auto t = mk_term(Term::Var, sp);
      t->name = next().text;
      return t;
    }
    if (is_ident("inl") || is_ident("inr") || is_ident("fun")) return parse_value();
    if (peek().kind == Token::Int) {
      auto t = mk_term(Term::IntLit, sp);
      t->num = next().num;
      return t;
    }
    if (is_punct("#")) {
      next();
      if (peek().kind != Token::Int) fail("expected location index after '#'");
      auto t = mk_term(Term::RefLit, sp);
      t->loc = static_cast<std::uint32_t>(next().num);
      return t;
    }
    if (is_punct("(")) {
      next();
      if (is_punct(")")) {
        next();
        return mk_term(Term::UnitLit, sp);
      }
      TermPtr v = parse_value();
      if (is_punct(":")) {
        next();
        auto t = mk_term(Term::Ascribe, sp);
        t->anno = parse_type();
        t->kids.push_back(v);
        expect_punct(")");
        return t;
      }
      std::vector<TermPtr> items{v};
      while (is_punct(",")) {
        next();
        items.push_back(parse_value());
      }
      expect_punct(")");
      TermPtr r = items.back();
      for (std::size_t i = items.size() - 1; i-- > 0;) {
        auto p = mk_term(Term::PairV, sp);
        p->kids = {items[i], r};
        r = p;
      }
      return r;
    }
    fail("expected a value");
  }

  // ---- computations -------------------------------------------------------

  TermPtr parse_computation() {
    Span sp = peek().span;
    if (is_ident("ret")) {
      next();
      auto t = mk_term(Term::Ret, sp);
      t->kids.push_back(parse_value());
      return t;
    }
    if (is_ident("let")) {
      next();
      auto t = mk_term(Term::Let, sp);
      t->name = ident();
      expect_punct("=");
      t->kids.push_back(parse_computation());
      expect_ident("in");
      t->kids.push_back(parse_computation());
      return t;
    }
    if (is_ident("case")) {
      next();
      auto t = mk_term(Term::Case, sp);
      t->kids.push_back(parse_value());
      expect_ident("of");
      expect_punct("{");
      expect_ident("inl");
      t->binders.push_back(ident());
      expect_punct("->");
      t->kids.push_back(parse_computation());
      expect_punct("|");
      expect_ident("inr");
      t->binders.push_back(ident());
      expect_punct("->");
      t->kids.push_back(parse_computation());
      expect_punct("}");
      return t;
    }
    if (is_ident("match")) {
      next();
      auto t = mk_term(Term::PCase, sp);
      t->kids.push_back(parse_value());
      expect_ident("with");
      expect_punct("(");
      t->binders.push_back(ident());
      expect_punct(",");
      t->binders.push_back(ident());
      expect_punct(")");
      expect_punct("->");
      t->kids.push_back(parse_computation());
      return t;
    }
    if (is_ident("init")) {
      next();
      auto t = mk_term(Term::InitAbort, sp);
      t->kids.push_back(parse_value());
      return t;
    }
    if (is_ident("letref")) {
      next();
      auto t = mk_term(Term::Letref, sp);
      std::vector<TermPtr> inits;
      while (true) {
        t->binders.push_back(ident());
        if (is_punct(":")) {  // optional sort annotation
          next();
          t->sort_annos.push_back(ident());
        } else {
          t->sort_annos.push_back(std::nullopt);
        }
        expect_punct(":=");
        inits.push_back(parse_value());
        if (!is_punct(",")) break;
        next();
      }
      expect_ident("in");
      for (auto& v : inits) t->kids.push_back(v);
      t->kids.push_back(parse_computation());
      return t;
    }
    if (is_punct("!")) {
      next();
      auto t = mk_term(Term::Get, sp);
      t->kids.push_back(parse_value());
      return t;
    }
    // value-led: assignment or application
    TermPtr v = parse_value();
    if (is_punct(":=")) {
      next();
      auto t = mk_term(Term::Put, sp);
      t->kids.push_back(v);
      t->kids.push_back(parse_value());
      return t;
    }
    if (starts_value()) {
      auto t = mk_term(Term::App, sp);
      t->kids.push_back(v);
      t->kids.push_back(parse_value());
      return t;
    }
    fail("expected a computation");
  }

  // ---- formulas -----------------------------------------------------------

  FormulaPtr parse_formula() { return parse_imp(); }

  FormulaPtr parse_imp() {
    FormulaPtr a = parse_or();
    if (is_punct("->") || is_punct("-*")) {
      bool wand = peek().text == "-*";
      Span sp = next().span;
      auto f = mk_formula(wand ? Formula::Wand : Formula::Imp, sp);
      f->lhs = a;
      f->rhs = parse_imp();
      return f;
    }
    return a;
  }

  FormulaPtr parse_or() {
    FormulaPtr a = parse_and();
    while (is_punct("\\/")) {
      Span sp = next().span;
      auto f = mk_formula(Formula::Or, sp);
      f->lhs = a;
      f->rhs = parse_and();
      a = f;
    }
    return a;
  }

  FormulaPtr parse_and() {
    FormulaPtr a = parse_star();
    while (is_punct("/\\")) {
      Span sp = next().span;
      auto f = mk_formula(Formula::And, sp);
      f->lhs = a;
      f->rhs = parse_star();
      a = f;
    }
    return a;
  }

  FormulaPtr parse_star() {
    FormulaPtr a = parse_unary();
    while (is_punct("*")) {
      Span sp = next().span;
      auto f = mk_formula(Formula::Star, sp);
      f->lhs = a;
      f->rhs = parse_unary();
      a = f;
    }
    return a;
  }

  FormulaPtr parse_unary() {
    if (is_ident("not")) {
      Span sp = next().span;
      auto f = mk_formula(Formula::Imp, sp);
      f->lhs = parse_unary();
      f->rhs = mk_formula(Formula::Bot, sp);
      return f;
    }
    return parse_formula_atom();
  }

  PredPtr parse_pred_binder() {
    // mu P(x : A). body   (and nu)
    Span sp = peek().span;
    bool mu = next().text == "mu";
    auto p = std::make_shared<PredExpr>();
    p->kind = mu ? PredExpr::Mu : PredExpr::Nu;
    p->span = sp;
    p->name = ident();
    expect_punct("(");
    p->arg_name = ident();
    expect_punct(":");
    p->arg_type = parse_type();
    expect_punct(")");
    expect_punct(".");
    p->body = parse_formula();
    return p;
  }

  FormulaPtr parse_formula_atom() {
    Span sp = peek().span;
    if (is_ident("true")) { next(); return mk_formula(Formula::Top, sp); }
    if (is_ident("false")) { next(); return mk_formula(Formula::Bot, sp); }
    if (is_ident("exists") || is_ident("forall")) {
      bool ex = next().text == "exists";
      expect_punct("(");
      auto pred = std::make_shared<PredExpr>();
      pred->kind = PredExpr::Abs;
      pred->span = sp;
      pred->arg_name = ident();
      expect_punct(":");
      pred->arg_type = parse_type();
      expect_punct(")");
      expect_punct(".");
      pred->body = parse_formula();
      auto f = mk_formula(ex ? Formula::Exists : Formula::Forall, sp);
      f->pred = pred;
      return f;
    }
    // named predicate application P(v)
    if (peek().kind == Token::Ident && !reserved(peek().text) && is_punct("(", 1)) {
      std::size_t mark = save();
      std::string pname = ident();
      next();  // (
      // Could still be a value like x followed by '=' (e.g. "f (1) = y" does
      // not occur since application only exists in programs); treat as
      // predicate application.
      auto f = mk_formula(Formula::PApp, sp);
      auto p = std::make_shared<PredExpr>();
      p->kind = PredExpr::PVar;
      p->span = sp;
      p->name = pname;
      f->pred = p;
      f->t1 = parse_value();
      expect_punct(")");
      (void)mark;
      return f;
    }
    if (is_punct("(")) {
      // (mu ...)(v) / (nu ...)(v), or a parenthesized formula, or a value
      // (pair, ascription) leading a points-to / equality.
      if (is_ident("mu", 1) || is_ident("nu", 1)) {
        next();
        PredPtr p = parse_pred_binder();
        expect_punct(")");
        expect_punct("(");
        auto f = mk_formula(Formula::PApp, sp);
        f->pred = p;
        f->t1 = parse_value();
        expect_punct(")");
        return f;
      }
      std::size_t mark = save();
      // try: value followed by |-> or =
      try {
        TermPtr v = parse_value();
        if (is_punct("|->") || is_punct("=")) return parse_atom_tail(v, sp);
        restore(mark);
      } catch (const ParseError&) {
        restore(mark);
      }
      next();  // (
      FormulaPtr f = parse_formula();
      expect_punct(")");
      return f;
    }
    // value-led atom: l |-> v or v = u
    TermPtr v = parse_value();
    return parse_atom_tail(v, sp);
  }

  FormulaPtr parse_atom_tail(TermPtr v, Span sp) {
    if (is_punct("|->")) {
      next();
      auto f = mk_formula(Formula::PointsTo, sp);
      f->t1 = v;
      f->t2 = parse_value();
      return f;
    }
    if (is_punct("=")) {
      next();
      auto f = mk_formula(Formula::Eq, sp);
      f->t1 = v;
      f->t2 = parse_value();
      return f;
    }
    fail("expected '|->' or '=' after a value");
  }

  // ---- sort tables, files, literals ---------------------------------------

  // `sort Name = <type>;`* — two passes so sorts may reference each other.
  static SortTable parse_sort_decls(const std::string& src) {
    SortTable table;
    {
      Lexer lx(src);
      const auto& ts = lx.tokens();
      for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (ts[i].kind == Token::Ident && ts[i].text == "sort" &&
            ts[i + 1].kind == Token::Ident)
          table.add(ts[i + 1].text, TypeExpr::one());
    }
    Parser p(src, &table);
    while (p.is_ident("sort")) {
      p.next();
      std::string name = p.ident();
      p.expect_punct("=");
      TypeExpr t = p.parse_type();
      p.expect_punct(";");
      table.set_ctype(*table.find(name), t);
    }
    if (!p.at_end()) p.fail("unexpected trailing input after sort declarations");
    table.validate();
    return table;
  }

  Lexer lexer_;
  const SortTable* table_;
  std::size_t pos_ = 0;
};

// Program file: sort declarations followed by the program.
struct ProgramFile {
  SortTable table;
  TermPtr program;
};

inline ProgramFile parse_program_file(const std::string& src) {
  SortTable table;
  {
    Lexer lx(src);
    const auto& ts = lx.tokens();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
      if (ts[i].kind == Token::Ident && ts[i].text == "sort" &&
          ts[i + 1].kind == Token::Ident)
        table.add(ts[i + 1].text, TypeExpr::one());
  }
  Parser p(src, &table);
  while (p.is_ident("sort")) {
    p.next();
    std::string name = p.ident();
    p.expect_punct("=");
    TypeExpr t = p.parse_type();
    p.expect_punct(";");
    table.set_ctype(*table.find(name), t);
  }
  table.validate();
  TermPtr prog = p.parse_computation();
  if (!p.at_end()) p.fail("unexpected trailing input after the program");
  return ProgramFile{std::move(table), prog};
}

inline TermPtr parse_program(const std::string& src, const SortTable& table) {
  Parser p(src, &table);
  TermPtr t = p.parse_computation();
  if (!p.at_end()) p.fail("unexpected trailing input after the program");
  return t;
}

// Formula file: optional `var x : T;` declarations, then one formula.
struct FormulaFile {
  Ctx ctx;
  FormulaPtr formula;
};

inline FormulaFile parse_formula_file(const std::string& src, const SortTable& table) {
  Parser p(src, &table);
  Ctx ctx;
  while (p.is_ident("var")) {
    p.next();
    std::string name = p.ident();
    p.expect_punct(":");
    TypeExpr t = p.parse_type();
    p.expect_punct(";");
    ctx.entries.push_back({name, false, t});
  }
  FormulaPtr f = p.parse_formula();
  if (!p.at_end()) p.fail("unexpected trailing input after the formula");
  return FormulaFile{std::move(ctx), f};
}

inline FormulaPtr parse_formula(const std::string& src, const SortTable& table) {
  Parser p(src, &table);
  FormulaPtr f = p.parse_formula();
  if (!p.at_end()) p.fail("unexpected trailing input after the formula");
  return f;
}

// Closed first-order value literal, resolved against a world so that #k
// references carry their sorts.
inline Value term_to_value(const Term& t, const World& w) {
  switch (t.kind) {
    case Term::UnitLit: return Value::unit();
    case Term::IntLit: return Value::ground(t.num);
    case Term::RefLit: {
      auto s = w.find(Loc{t.loc});
      if (!s) throw TypeError("location #" + std::to_string(t.loc) + " not in the world");
      return Value::ref(Loc{t.loc}, *s);
    }
    case Term::PairV:
      return Value::pair(term_to_value(*t.kids[0], w), term_to_value(*t.kids[1], w));
    case Term::InlV: return Value::inl(term_to_value(*t.kids[0], w));
    case Term::InrV: return Value::inr(term_to_value(*t.kids[0], w));
    case Term::Ascribe: return term_to_value(*t.kids[0], w);
    default: throw TypeError("not a closed value literal");
  }
}

inline Value parse_value_literal(const std::string& src, const SortTable& table,
                                 const World& w) {
  Parser p(src, &table);
  TermPtr t = p.parse_value();
  if (!p.at_end()) p.fail("unexpected trailing input after the value");
  return term_to_value(*t, w);
}

// `over {#0:Int, #1:RInt} { #0 -> 5 }`
inline Heaplet parse_heaplet_literal(const std::string& src, const SortTable& table) {
  Parser p(src, &table);
  p.expect_ident("over");
  p.expect_punct("{");
  World w;
  while (!p.is_punct("}")) {
    p.expect_punct("#");
    if (p.peek().kind != Token::Int) p.fail("expected location index");
    std::uint32_t ix = static_cast<std::uint32_t>(p.next().num);
    p.expect_punct(":");
    std::string sn = p.ident();
    auto s = table.find(sn);
    if (!s) p.fail("unknown sort '" + sn + "'");
    w.cells[Loc{ix}] = *s;
    if (p.is_punct(",")) p.next();
  }
  p.next();  // }
  Heaplet h{w, {}};
  p.expect_punct("{");
  while (!p.is_punct("}")) {
    p.expect_punct("#");
    if (p.peek().kind != Token::Int) p.fail("expected location index");
    std::uint32_t ix = static_cast<std::uint32_t>(p.next().num);
    p.expect_punct("->");
    TermPtr v = p.parse_value();
    h.cells[Loc{ix}] = term_to_value(*v, w);
    if (p.is_punct(",")) p.next();
  }
  p.next();  // }
  if (!p.at_end()) p.fail("unexpected trailing input after the heaplet");
  check_heaplet(h, table);
  return h;
}

// ---- printers --------------------------------------------------------------

inline std::string print_term(const Term& t, const SortTable& table);

inline std::string print_value_atom(const Term& t, const SortTable& table) {
  switch (t.kind) {
    case Term::Var: return t.name;
    case Term::UnitLit: return "()";
    case Term::IntLit: return std::to_string(t.num);
    case Term::RefLit: return "#" + std::to_string(t.loc);
    case Term::PairV:
      return "(" + print_term(*t.kids[0], table) + ", " + print_term(*t.kids[1], table) + ")";
    case Term::Ascribe:
      return "(" + print_term(*t.kids[0], table) + " : " + type_to_string(*t.anno, table) + ")";
    default:
      return "(" + print_term(t, table) + ")";
  }
}

inline std::string print_term(const Term& t, const SortTable& table) {
  switch (t.kind) {
    case Term::Var:
    case Term::UnitLit:
    case Term::IntLit:
    case Term::RefLit:
    case Term::PairV:
    case Term::Ascribe:
      return print_value_atom(t, table);
    case Term::InlV: return "inl " + print_value_atom(*t.kids[0], table);
    case Term::InrV: return "inr " + print_value_atom(*t.kids[0], table);
    case Term::FunV:
      return "fun (" + t.name + " : " + type_to_string(*t.anno, table) + ") -> " +
             print_term(*t.kids[0], table);
    case Term::Ret: return "ret " + print_value_atom(*t.kids[0], table);
    case Term::Let:
      return "let " + t.name + " = " + print_term(*t.kids[0], table) + " in " +
             print_term(*t.kids[1], table);
    case Term::App:
      return print_value_atom(*t.kids[0], table) + " " + print_value_atom(*t.kids[1], table);
    case Term::Case:
      return "case " + print_value_atom(*t.kids[0], table) + " of { inl " + t.binders[0] +
             " -> " + print_term(*t.kids[1], table) + " | inr " + t.binders[1] + " -> " +
             print_term(*t.kids[2], table) + " }";
    case Term::PCase:
      return "match " + print_value_atom(*t.kids[0], table) + " with (" + t.binders[0] +
             ", " + t.binders[1] + ") -> " + print_term(*t.kids[1], table);
    case Term::InitAbort: return "init " + print_value_atom(*t.kids[0], table);
    case Term::Put:
      return print_value_atom(*t.kids[0], table) + " := " + print_value_atom(*t.kids[1], table);
    case Term::Get: return "!" + print_value_atom(*t.kids[0], table);
    case Term::Letref: {
      std::string s = "letref ";
      std::size_t n = t.binders.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (i) s += ", ";
        s += t.binders[i];
        if (t.sort_annos.size() > i && t.sort_annos[i]) s += " : " + *t.sort_annos[i];
        s += " := " + print_term(*t.kids[i], table);
      }
      return s + " in " + print_term(*t.kids[n], table);
    }
  }
  return "?";
}

inline std::string print_formula(const Formula& f, const SortTable& table);

inline std::string print_pred(const PredExpr& p, const SortTable& table) {
  switch (p.kind) {
    case PredExpr::PVar: return p.name;
    case PredExpr::Abs:
      return p.arg_name + " : " + type_to_string(p.arg_type, table) + ". " +
             print_formula(*p.body, table);
    case PredExpr::Mu:
    case PredExpr::Nu:
      return std::string(p.kind == PredExpr::Mu ? "mu " : "nu ") + p.name + "(" +
             p.arg_name + " : " + type_to_string(p.arg_type, table) + "). " +
             print_formula(*p.body, table);
  }
  return "?";
}

inline std::string print_formula(const Formula& f, const SortTable& table) {
  auto paren = [&](const FormulaPtr& g) { return "(" + print_formula(*g, table) + ")"; };
  switch (f.kind) {
    case Formula::Top: return "true";
    case Formula::Bot: return "false";
    case Formula::And: return paren(f.lhs) + " /\\ " + paren(f.rhs);
    case Formula::Or: return paren(f.lhs) + " \\/ " + paren(f.rhs);
    case Formula::Imp: return paren(f.lhs) + " -> " + paren(f.rhs);
    case Formula::Star: return paren(f.lhs) + " * " + paren(f.rhs);
    case Formula::Wand: return paren(f.lhs) + " -* " + paren(f.rhs);
    case Formula::PointsTo:
      return print_value_atom(*f.t1, table) + " |-> " + print_value_atom(*f.t2, table);
    case Formula::Eq:
      return print_value_atom(*f.t1, table) + " = " + print_value_atom(*f.t2, table);
    case Formula::PApp:
      if (f.pred->kind == PredExpr::PVar)
        return f.pred->name + "(" + print_term(*f.t1, table) + ")";
      return "(" + print_pred(*f.pred, table) + ")(" + print_term(*f.t1, table) + ")";
    case Formula::Exists:
      return "exists (" + f.pred->arg_name + " : " +
             type_to_string(f.pred->arg_type, table) + "). " +
             print_formula(*f.pred->body, table);
    case Formula::Forall:
      return "forall (" + f.pred->arg_name + " : " +
             type_to_string(f.pred->arg_type, table) + "). " +
             print_formula(*f.pred->body, table);
  }
  return "?";
}

}  // namespace gs
