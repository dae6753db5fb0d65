#pragma once

// Bidirectional typechecker for programs and formulas. Synthesis rules fill
// the `ty` annotations the evaluator and the satisfaction engine rely on.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "groundstore/ast.hpp"
#include "groundstore/errors.hpp"
#include "groundstore/types.hpp"

namespace gs {

inline TypeExpr synth_value(const SortTable& table, const Ctx& ctx, Term& t);
inline void check_value(const SortTable& table, const Ctx& ctx, Term& t,
                        const TypeExpr& want);
inline TypeExpr synth_comp(const SortTable& table, const Ctx& ctx, Term& t);

namespace detail {

[[noreturn]] inline void type_fail(const Term& t, const std::string& msg) {
  throw TypeError(msg + " at " + std::to_string(t.span.line) + ":" +
                  std::to_string(t.span.col));
}

}  // namespace detail

inline TypeExpr synth_value(const SortTable& table, const Ctx& ctx, Term& t) {
  switch (t.kind) {
    case Term::Var: {
      const CtxEntry* e = ctx.lookup(t.name);
      if (!e || e->is_pred) detail::type_fail(t, "unbound variable '" + t.name + "'");
      t.ty = e->type;
      return e->type;
    }
    case Term::UnitLit: t.ty = TypeExpr::one(); return *t.ty;
    case Term::IntLit: t.ty = TypeExpr::integer(); return *t.ty;
    case Term::RefLit:
      detail::type_fail(t, "raw location literals are not program values");
    case Term::PairV: {
      TypeExpr a = synth_value(table, ctx, *t.kids[0]);
      TypeExpr b = synth_value(table, ctx, *t.kids[1]);
      t.ty = TypeExpr::prod(a, b);
      return *t.ty;
    }
    case Term::InlV:
    case Term::InrV:
      detail::type_fail(t, "cannot infer a sum type; ascribe it: (inl v : A + B)");
    case Term::FunV: {
      Ctx c2 = ctx.extended(t.name, *t.anno);
      TypeExpr b = synth_comp(table, c2, *t.kids[0]);
      t.ty = TypeExpr::arrow(*t.anno, b);
      return *t.ty;
    }
    case Term::Ascribe: {
      check_value(table, ctx, *t.kids[0], *t.anno);
      t.ty = *t.anno;
      return *t.ty;
    }
    default:
      detail::type_fail(t, "expected a value term");
  }
}

inline void check_value(const SortTable& table, const Ctx& ctx, Term& t,
                        const TypeExpr& want) {
  switch (t.kind) {
    case Term::InlV: {
      auto s = want.as_sum();
      if (!s) detail::type_fail(t, "inl checked against a non-sum type");
      check_value(table, ctx, *t.kids[0], *s->lhs);
      t.ty = want;
      return;
    }
    case Term::InrV: {
      auto s = want.as_sum();
      if (!s) detail::type_fail(t, "inr checked against a non-sum type");
      check_value(table, ctx, *t.kids[0], *s->rhs);
      t.ty = want;
      return;
    }
    case Term::PairV: {
      auto p = want.as_prod();
      if (!p) detail::type_fail(t, "pair checked against a non-product type");
      check_value(table, ctx, *t.kids[0], *p->fst);
      check_value(table, ctx, *t.kids[1], *p->snd);
      t.ty = want;
      return;
    }
    case Term::FunV: {
      auto a = want.as_arrow();
      if (!a) detail::type_fail(t, "fun checked against a non-arrow type");
      if (!type_equal(*t.anno, *a->dom))
        detail::type_fail(t, "parameter annotation differs from the expected domain");
      Ctx c2 = ctx.extended(t.name, *t.anno);
      TypeExpr b = synth_comp(table, c2, *t.kids[0]);
      if (!type_equal(b, *a->cod)) detail::type_fail(t, "function body has the wrong type");
      t.ty = want;
      return;
    }
    default: {
      TypeExpr got = synth_value(table, ctx, t);
      if (!type_equal(got, want))
        detail::type_fail(t, "expected " + type_to_string(want, table) + ", found " +
                                 type_to_string(got, table));
    }
  }
}

inline TypeExpr synth_comp(const SortTable& table, const Ctx& ctx, Term& t) {
  switch (t.kind) {
    case Term::Ret: {
      TypeExpr a = synth_value(table, ctx, *t.kids[0]);
      t.ty = a;
      return a;
    }
    case Term::Let: {
      TypeExpr a = synth_comp(table, ctx, *t.kids[0]);
      Ctx c2 = ctx.extended(t.name, a);
      TypeExpr b = synth_comp(table, c2, *t.kids[1]);
      t.ty = b;
      return b;
    }
    case Term::App: {
      TypeExpr f = synth_value(table, ctx, *t.kids[0]);
      auto a = f.as_arrow();
      if (!a) detail::type_fail(t, "application of a non-function");
      check_value(table, ctx, *t.kids[1], *a->dom);
      t.ty = *a->cod;
      return *t.ty;
    }
    case Term::Case: {
      TypeExpr sc = synth_value(table, ctx, *t.kids[0]);
      auto s = sc.as_sum();
      if (!s) detail::type_fail(t, "case scrutinee is not a sum");
      TypeExpr l = synth_comp(table, ctx.extended(t.binders[0], *s->lhs), *t.kids[1]);
      TypeExpr r = synth_comp(table, ctx.extended(t.binders[1], *s->rhs), *t.kids[2]);
      // the empty type is initial, so an aborting branch takes the other's type
      if (type_equal(l, r)) t.ty = l;
      else if (l.is_zero()) t.ty = r;
      else if (r.is_zero()) t.ty = l;
      else detail::type_fail(t, "case branches have different types");
      return *t.ty;
    }
    case Term::PCase: {
      TypeExpr sc = synth_value(table, ctx, *t.kids[0]);
      auto p = sc.as_prod();
      if (!p) detail::type_fail(t, "match scrutinee is not a pair");
      Ctx c2 = ctx.extended(t.binders[0], *p->fst).extended(t.binders[1], *p->snd);
      TypeExpr b = synth_comp(table, c2, *t.kids[1]);
      t.ty = b;
      return b;
    }
    case Term::InitAbort: {
      check_value(table, ctx, *t.kids[0], TypeExpr::zero());
      t.ty = TypeExpr::zero();
      return *t.ty;
    }
    case Term::Put: {
      TypeExpr lt = synth_value(table, ctx, *t.kids[0]);
      auto r = lt.as_ref();
      if (!r) detail::type_fail(t, "assignment target is not a reference");
      check_value(table, ctx, *t.kids[1], table.ctype(r->sort));
      t.ty = TypeExpr::one();
      return *t.ty;
    }
    case Term::Get: {
      TypeExpr lt = synth_value(table, ctx, *t.kids[0]);
      auto r = lt.as_ref();
      if (!r) detail::type_fail(t, "dereference of a non-reference");
      t.ty = table.ctype(r->sort);
      return *t.ty;
    }
    case Term::Letref: {
      std::size_t n = t.binders.size();
      // candidate sorts per binding: the annotation if present, else all
      std::vector<std::vector<Sort>> cand(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (i < t.sort_annos.size() && t.sort_annos[i]) {
          auto s = table.find(*t.sort_annos[i]);
          if (!s) detail::type_fail(t, "unknown sort '" + *t.sort_annos[i] + "'");
          cand[i] = {*s};
        } else {
          cand[i] = table.sorts();
        }
      }
      std::vector<std::vector<Sort>> good;
      std::vector<Sort> pick(n);
      auto attempt = [&](const std::vector<Sort>& sorts) {
        Ctx c2 = ctx;
        for (std::size_t i = 0; i < n; ++i)
          c2 = c2.extended(t.binders[i], TypeExpr::ref(sorts[i]));
        try {
          for (std::size_t i = 0; i < n; ++i)
            check_value(table, c2, *t.kids[i], table.ctype(sorts[i]));
          return true;
        } catch (const TypeError&) {
          return false;
        }
      };
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == n) {
          if (attempt(pick)) good.push_back(pick);
          return;
        }
        for (Sort s : cand[i]) {
          pick[i] = s;
          go(i + 1);
        }
      };
      go(0);
      if (good.empty())
        detail::type_fail(t, "no consistent sort assignment for letref bindings");
      if (good.size() > 1)
        detail::type_fail(t,
                          "ambiguous sorts for letref bindings; annotate as `x : Sort := v`");
      t.sorts = good[0];
      Ctx c2 = ctx;
      for (std::size_t i = 0; i < n; ++i)
        c2 = c2.extended(t.binders[i], TypeExpr::ref(t.sorts[i]));
      for (std::size_t i = 0; i < n; ++i)  // re-annotate along the chosen sorts
        check_value(table, c2, *t.kids[i], table.ctype(t.sorts[i]));
      TypeExpr b = synth_comp(table, c2, *t.kids[n]);
      t.ty = b;
      return b;
    }
    default:
      detail::type_fail(t, "expected a computation term");
  }
}

// ---- formulas ---------------------------------------------------------------

inline void check_formula(const SortTable& table, const Ctx& ctx, Formula& f);
inline TypeExpr synth_pred(const SortTable& table, const Ctx& ctx, PredExpr& p);

namespace detail {

[[noreturn]] inline void formula_fail(const Formula& f, const std::string& msg) {
  throw TypeError(msg + " at " + std::to_string(f.span.line) + ":" +
                  std::to_string(f.span.col));
}

// Syntactic positivity of predicate variable `name`: it may not occur to the
// left of -> or -*.
inline void check_positive(const Formula& f, const std::string& name, bool positive) {
  switch (f.kind) {
    case Formula::Top:
    case Formula::Bot:
    case Formula::PointsTo:
    case Formula::Eq:
      return;
    case Formula::And:
    case Formula::Or:
    case Formula::Star:
      check_positive(*f.lhs, name, positive);
      check_positive(*f.rhs, name, positive);
      return;
    case Formula::Imp:
    case Formula::Wand:
      check_positive(*f.lhs, name, !positive);
      check_positive(*f.rhs, name, positive);
      return;
    case Formula::PApp:
      if (f.pred->kind == PredExpr::PVar) {
        if (f.pred->name == name && !positive)
          formula_fail(f, "predicate variable '" + name + "' occurs negatively");
      } else if (f.pred->name != name) {  // binders shadow
        check_positive(*f.pred->body, name, positive);
      }
      return;
    case Formula::Exists:
    case Formula::Forall:
      check_positive(*f.pred->body, name, positive);
      return;
  }
}

inline void free_vars(const Term& t, std::set<std::string>& bound,
                      std::set<std::string>& out) {
  if (t.kind == Term::Var && !bound.count(t.name)) out.insert(t.name);
  for (auto& k : t.kids)
    if (k) free_vars(*k, bound, out);
}

inline void free_vars(const Formula& f, std::set<std::string>& bound,
                      std::set<std::string>& out) {
  if (f.t1) free_vars(*f.t1, bound, out);
  if (f.t2) free_vars(*f.t2, bound, out);
  if (f.lhs) free_vars(*f.lhs, bound, out);
  if (f.rhs) free_vars(*f.rhs, bound, out);
  if (f.pred && f.pred->body) {
    bool inserted = bound.insert(f.pred->arg_name).second;
    free_vars(*f.pred->body, bound, out);
    if (inserted) bound.erase(f.pred->arg_name);
  }
}

}  // namespace detail

inline void check_formula(const SortTable& table, const Ctx& ctx, Formula& f) {
  switch (f.kind) {
    case Formula::Top:
    case Formula::Bot:
      return;
    case Formula::And:
    case Formula::Or:
    case Formula::Imp:
    case Formula::Star:
    case Formula::Wand:
      check_formula(table, ctx, *f.lhs);
      check_formula(table, ctx, *f.rhs);
      return;
    case Formula::PointsTo: {
      TypeExpr lt = synth_value(table, ctx, *f.t1);
      auto r = lt.as_ref();
      if (!r) detail::formula_fail(f, "left of |-> must be a reference");
      check_value(table, ctx, *f.t2, table.ctype(r->sort));
      return;
    }
    case Formula::Eq: {
      TypeExpr a;
      try {
        a = synth_value(table, ctx, *f.t1);
        check_value(table, ctx, *f.t2, a);
      } catch (const TypeError&) {
        a = synth_value(table, ctx, *f.t2);
        check_value(table, ctx, *f.t1, a);
      }
      if (!first_order(a))
        detail::formula_fail(f, "equality at a function type is not supported");
      return;
    }
    case Formula::PApp: {
      TypeExpr a = synth_pred(table, ctx, *f.pred);
      check_value(table, ctx, *f.t1, a);
      return;
    }
    case Formula::Exists:
    case Formula::Forall:
      synth_pred(table, ctx, *f.pred);
      return;
  }
}

inline TypeExpr synth_pred(const SortTable& table, const Ctx& ctx, PredExpr& p) {
  switch (p.kind) {
    case PredExpr::PVar: {
      const CtxEntry* e = ctx.lookup(p.name);
      if (!e || !e->is_pred)
        throw TypeError("unbound predicate variable '" + p.name + "'");
      return e->type;
    }
    case PredExpr::Abs: {
      Ctx c2 = ctx.extended(p.arg_name, p.arg_type);
      check_formula(table, c2, *p.body);
      return p.arg_type;
    }
    case PredExpr::Mu:
    case PredExpr::Nu: {
      // fixpoint bodies close over their own binders only
      std::set<std::string> bound{p.arg_name}, free;
      detail::free_vars(*p.body, bound, free);
      for (auto& v : free) {
        const CtxEntry* e = ctx.lookup(v);
        if (e && !e->is_pred)
          throw TypeError("fixpoint body captures outer variable '" + v +
                          "'; only its own argument is allowed");
      }
      Ctx c2;
      c2.entries.push_back({p.name, true, p.arg_type});
      c2.entries.push_back({p.arg_name, false, p.arg_type});
      check_formula(table, c2, *p.body);
      detail::check_positive(*p.body, p.name, true);
      return p.arg_type;
    }
  }
  throw InternalError("synth_pred: unreachable");
}

}  // namespace gs
