#pragma once

// The denotational interpreter: standard fine-grain call-by-value clauses
// over the store monad, plus put/get/letref through the store operations.
// Evaluation is total and deterministic on well-typed terms.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "groundstore/ast.hpp"
#include "groundstore/errors.hpp"
#include "groundstore/hiding.hpp"
#include "groundstore/store.hpp"
#include "groundstore/typecheck.hpp"
#include "groundstore/value.hpp"

namespace gs {

// Environment: bindings at a world. Renaming an environment moves every
// binding to the future world.
struct Env {
  World world;
  std::map<std::string, Value> vals;

  const Value& at(const std::string& n) const {
    auto it = vals.find(n);
    if (it == vals.end()) throw InternalError("unbound variable '" + n + "' at runtime");
    return it->second;
  }
};

inline Env rename_env(const Injection& rho, const Env& env) {
  Env r{rho.target, {}};
  for (auto& [n, v] : env.vals) r.vals[n] = rename_value(rho, v);
  return r;
}

inline Value eval_value(const SortTable& table, const Term& t, const Env& env);
inline MonadVal eval_comp(const SortTable& table, const Term& t, const Env& env);

namespace detail {

// Closure for fun (x:A) -> body: captures the environment, renames it lazily
// at call time along the accumulated move.
struct TermClosure final : FunClosure {
  const SortTable* table;
  Env captured;
  std::string param;
  TermPtr body;

  TermClosure(const SortTable* tb, Env env, std::string p, TermPtr b)
      : table(tb), captured(std::move(env)), param(std::move(p)), body(std::move(b)) {}

  MonadVal apply(const Injection& rho, const Value& arg) const override {
    Env e2 = rename_env(rho, captured);
    e2.vals[param] = arg;
    return eval_comp(*table, *body, e2);
  }
};

}  // namespace detail

inline Value eval_value(const SortTable& table, const Term& t, const Env& env) {
  switch (t.kind) {
    case Term::Var: return env.at(t.name);
    case Term::UnitLit: return Value::unit();
    case Term::IntLit: return Value::ground(t.num);
    case Term::RefLit: throw TypeError("raw location literal in a program");
    case Term::PairV:
      return Value::pair(eval_value(table, *t.kids[0], env),
                         eval_value(table, *t.kids[1], env));
    case Term::InlV: return Value::inl(eval_value(table, *t.kids[0], env));
    case Term::InrV: return Value::inr(eval_value(table, *t.kids[0], env));
    case Term::Ascribe: return eval_value(table, *t.kids[0], env);
    case Term::FunV:
      return Value::fun(std::make_shared<detail::TermClosure>(&table, env, t.name,
                                                              t.kids[0]));
    default:
      throw InternalError("eval_value on a computation term");
  }
}

inline MonadVal eval_comp(const SortTable& table, const Term& t, const Env& env) {
  if (!t.ty) throw InternalError("eval_comp on an untypechecked term");
  switch (t.kind) {
    case Term::Ret:
      return t_unit(eval_value(table, *t.kids[0], env), *t.ty, env.world);
    case Term::Let: {
      MonadVal m = eval_comp(table, *t.kids[0], env);
      TermPtr body = t.kids[1];
      std::string x = t.name;
      TypeExpr bt = *t.ty;
      const SortTable* tb = &table;
      return t_bind(m, bt, [tb, body, x, env](const Injection& sigma, const Value& a) {
        Env e2 = rename_env(sigma, env);
        e2.vals[x] = a;
        return eval_comp(*tb, *body, e2);
      });
    }
    case Term::App: {
      Value f = eval_value(table, *t.kids[0], env);
      Value a = eval_value(table, *t.kids[1], env);
      return apply_fun(f, identity_injection(env.world), a);
    }
    case Term::Case: {
      Value sc = eval_value(table, *t.kids[0], env);
      Env e2 = env;
      if (auto l = sc.as_inl()) {
        e2.vals[t.binders[0]] = *l->v;
        return eval_comp(table, *t.kids[1], e2);
      }
      auto r = sc.as_inr();
      if (!r) throw InternalError("case scrutinee is not a sum value");
      e2.vals[t.binders[1]] = *r->v;
      return eval_comp(table, *t.kids[2], e2);
    }
    case Term::PCase: {
      Value sc = eval_value(table, *t.kids[0], env);
      auto p = sc.as_pair();
      if (!p) throw InternalError("match scrutinee is not a pair value");
      Env e2 = env;
      e2.vals[t.binders[0]] = *p->fst;
      e2.vals[t.binders[1]] = *p->snd;
      return eval_comp(table, *t.kids[1], e2);
    }
    case Term::InitAbort:
      throw InternalError("init was forced: a value of the empty type exists");
    case Term::Put:
      return op_put(eval_value(table, *t.kids[0], env),
                    eval_value(table, *t.kids[1], env), env.world, table);
    case Term::Get:
      return op_get(eval_value(table, *t.kids[0], env), env.world, table);
    case Term::Letref: {
      std::size_t n = t.binders.size();
      std::vector<NewDecl> decls;
      for (std::size_t i = 0; i < n; ++i) {
        TermPtr vi = t.kids[i];
        std::vector<std::string> names = t.binders;
        const SortTable* tb = &table;
        decls.push_back(NewDecl{
            t.sorts[i],
            [tb, vi, names, env](const Injection& to_new, const std::vector<Value>& refs) {
              Env e2 = rename_env(to_new, env);
              for (std::size_t j = 0; j < names.size(); ++j) e2.vals[names[j]] = refs[j];
              return eval_value(*tb, *vi, e2);
            }});
      }
      MonadVal m = op_new(decls, env.world, table);
      TermPtr body = t.kids[n];
      std::vector<std::string> names = t.binders;
      TypeExpr bt = *t.ty;
      const SortTable* tb = &table;
      return t_bind(m, bt, [tb, body, names, env](const Injection& sigma, const Value& refs) {
        Env e2 = rename_env(sigma, env);
        const Value* cur = &refs;
        for (std::size_t j = 0; j + 1 < names.size(); ++j) {
          auto p = cur->as_pair();
          e2.vals[names[j]] = *p->fst;
          cur = p->snd.get();
        }
        e2.vals[names.back()] = *cur;
        return eval_comp(*tb, *body, e2);
      });
    }
    default:
      throw InternalError("eval_comp on a value term");
  }
}

// Typechecks a closed first-order program, evaluates it at the empty world
// and heap, and canonicalizes the result.
inline Hidden run_closed(const SortTable& table, Term& program) {
  Ctx ctx;
  TypeExpr a = synth_comp(table, ctx, program);
  if (!first_order(a))
    throw HigherOrderError("program result type is higher order; not canonicalizable");
  Env env{World{}, {}};
  MonadVal m = eval_comp(table, program, env);
  Hidden r = m.run(identity_injection(World{}), empty_heaplet(World{}));
  return canonicalize(r, table);
}

}  // namespace gs
