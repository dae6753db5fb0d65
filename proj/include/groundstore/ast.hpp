#pragma once

// Abstract syntax for the program language (fine-grain call-by-value: value
// terms vs computation terms) and for the assertion language, with source
// spans. The typechecker fills the `ty` annotations in place.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groundstore/types.hpp"

namespace gs {

struct Span {
  int line = 0, col = 0;
};

struct Term;
using TermPtr = std::shared_ptr<Term>;

struct Term {
  enum Kind {
    // value terms
    Var, UnitLit, IntLit, PairV, InlV, InrV, FunV, RefLit, Ascribe,
    // computation terms
    Ret, Let, App, Case, PCase, InitAbort, Put, Get, Letref,
  };
  Kind kind = UnitLit;
  Span span;
  std::string name;                  // Var; Let/FunV binder
  long long num = 0;                 // IntLit
  std::uint32_t loc = 0;             // RefLit
  std::vector<TermPtr> kids;
  std::vector<std::string> binders;  // Case [x,y]; PCase [x,y]; Letref names
  std::optional<TypeExpr> anno;      // FunV param type; Ascribe type
  std::vector<std::optional<std::string>> sort_annos;  // Letref, per binding
  std::vector<Sort> sorts;           // Letref, resolved by the typechecker
  std::optional<TypeExpr> ty;        // filled by the typechecker

  bool is_value_term() const { return kind <= Ascribe; }
};

inline TermPtr mk_term(Term::Kind k, Span sp = {}) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->span = sp;
  return t;
}

struct Formula;
using FormulaPtr = std::shared_ptr<Formula>;
struct PredExpr;
using PredPtr = std::shared_ptr<PredExpr>;

struct Formula {
  enum Kind { Top, Bot, And, Or, Imp, Star, Wand, PointsTo, Eq, PApp, Exists, Forall };
  Kind kind = Top;
  Span span;
  FormulaPtr lhs, rhs;  // connectives
  TermPtr t1, t2;       // PointsTo(t1 |-> t2), Eq(t1 = t2), PApp argument t1
  PredPtr pred;         // PApp, Exists, Forall
};

// Predicate expressions: variables, abstraction x.phi, and the fixpoint
// binders. Quantifier surface syntax elaborates to Exists/Forall over an
// abstraction.
struct PredExpr {
  enum Kind { PVar, Abs, Mu, Nu };
  Kind kind = PVar;
  Span span;
  std::string name;      // PVar; Mu/Nu predicate name
  std::string arg_name;  // Abs/Mu/Nu
  TypeExpr arg_type;     // Abs/Mu/Nu
  FormulaPtr body;
};

inline FormulaPtr mk_formula(Formula::Kind k, Span sp = {}) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->span = sp;
  return f;
}

// Typing context: value variables and predicate variables (type P A).
struct CtxEntry {
  std::string name;
  bool is_pred = false;
  TypeExpr type;
};

struct Ctx {
  std::vector<CtxEntry> entries;

  const CtxEntry* lookup(const std::string& n) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->name == n) return &*it;
    return nullptr;
  }

  Ctx extended(const std::string& n, TypeExpr t, bool pred = false) const {
    Ctx c = *this;
    c.entries.push_back({n, pred, std::move(t)});
    return c;
  }
};

}  // namespace gs
