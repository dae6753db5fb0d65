#pragma once

// Satisfaction s, rho, eta |= phi, clause by clause:
//
//   - implication quantifies over ~-equivalent representatives and their
//     heaplet extensions (not merely extensions at the same carrier);
//   - separating conjunction splits the dom of the given representative;
//   - magic wand quantifies over representatives and compatible heaplets;
//   - exists/forall move along partial initializations within the bound and
//     re-base the environment at the new world;
//   - points-to and equality evaluate terms under the renamed environment.
//
// Quantifier and ~-searches allocate at most bounds.max_extra_cells fresh
// cells per step, so verdicts are "at bound": a reported countermodel is a
// real countermodel, while HoldsAtBound for negative connectives means "no
// countermodel within the bound".

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groundstore/ast.hpp"
#include "groundstore/enumerate.hpp"
#include "groundstore/errors.hpp"
#include "groundstore/hiding.hpp"
#include "groundstore/interp.hpp"
#include "groundstore/parse.hpp"
#include "groundstore/typecheck.hpp"

namespace gs {

struct SatOpts {
  bool naive_implication = false;  // the rejected Kripke clause, diagnostics only
};

// World-indexed predicate: membership bits for canonical (rho, (value,
// heaplet)) keys within the enumerated universe. Keys outside the universe
// resolve to default_member (false for mu, true for nu).
struct PredTable {
  TypeExpr arg_type;
  std::set<Hidden, HiddenLess> universe;
  std::set<Hidden, HiddenLess> members;
  bool default_member = false;

  bool lookup(const Hidden& canonical_key) const {
    if (universe.count(canonical_key)) return members.count(canonical_key) != 0;
    return default_member;
  }
};

struct SatContext {
  const SortTable* table = nullptr;
  Bounds bounds;
  SatOpts opts;
  Env env;  // bindings at the public world env.world
  std::map<std::string, std::shared_ptr<const PredTable>> preds;
  // fixpoint tables are computed once per binder occurrence
  std::shared_ptr<std::map<const PredExpr*, std::shared_ptr<const PredTable>>> fix_cache =
      std::make_shared<std::map<const PredExpr*, std::shared_ptr<const PredTable>>>();
};

inline bool sat(const SatContext& sc, const Injection& rho, const Heaplet& eta,
                const Formula& f);
inline bool sat_pred(const SatContext& sc, const Injection& rho, const Value& arg_at_public,
                     const Heaplet& eta, const PredExpr& p);

// Knaster-Tarski iteration on the finite table lattice: mu grows from the
// empty table, nu shrinks from the full one.
inline std::shared_ptr<const PredTable> fixpoint(const SatContext& sc, const PredExpr& p) {
  if (!first_order(p.arg_type))
    throw HigherOrderError("fixpoint argument type is higher order");
  bool is_mu = p.kind == PredExpr::Mu;
  auto table = std::make_shared<PredTable>();
  table->arg_type = p.arg_type;
  table->default_member = !is_mu;
  for (auto& w : enum_worlds(*sc.table, sc.bounds.max_world))
    for (auto& key : enum_canonical_hiddens(w, *sc.table, sc.bounds,
                                            sc.bounds.max_extra_cells, &p.arg_type))
      table->universe.insert(key);
  if (!is_mu) table->members = table->universe;

  auto eval_key = [&](const PredTable& current, const Hidden& key) {
    auto preimage = unrename_value(key.rho, *key.val);
    if (!preimage) return false;  // the abstraction clause: arg must be public
    SatContext sc2;
    sc2.table = sc.table;
    sc2.bounds = sc.bounds;
    sc2.opts = sc.opts;
    sc2.env = Env{key.rho.source, {{p.arg_name, *preimage}}};
    sc2.preds[p.name] = std::shared_ptr<const PredTable>(&current, [](const PredTable*) {});
    sc2.fix_cache = sc.fix_cache;
    return sat(sc2, key.rho, key.heap, *p.body);
  };

  std::size_t guard = table->universe.size() + 2;
  while (guard-- > 0) {
    std::set<Hidden, HiddenLess> next;
    for (auto& key : table->universe)
      if (eval_key(*table, key)) next.insert(key);
    if (next == table->members) return table;
    table->members = std::move(next);
  }
  throw InternalError("fixpoint iteration failed to converge");
}

inline std::shared_ptr<const PredTable> fixpoint_cached(const SatContext& sc,
                                                        const PredExpr& p) {
  auto it = sc.fix_cache->find(&p);
  if (it != sc.fix_cache->end()) return it->second;
  auto t = fixpoint(sc, p);
  (*sc.fix_cache)[&p] = t;
  return t;
}

inline bool sat_pred(const SatContext& sc, const Injection& rho,
                     const Value& arg_at_public, const Heaplet& eta, const PredExpr& p) {
  switch (p.kind) {
    case PredExpr::Abs: {
      SatContext sc2 = sc;
      sc2.env.vals[p.arg_name] = arg_at_public;
      return sat(sc2, rho, eta, *p.body);
    }
    case PredExpr::PVar: {
      auto it = sc.preds.find(p.name);
      if (it == sc.preds.end())
        throw InternalError("unbound predicate variable '" + p.name + "' in sat");
      Hidden key = canonicalize(
          Hidden{rho, rename_value(rho, arg_at_public), eta}, *sc.table);
      return it->second->lookup(key);
    }
    case PredExpr::Mu:
    case PredExpr::Nu: {
      auto table = fixpoint_cached(sc, p);
      Hidden key = canonicalize(
          Hidden{rho, rename_value(rho, arg_at_public), eta}, *sc.table);
      return table->lookup(key);
    }
  }
  throw InternalError("sat_pred: unreachable");
}

inline bool sat(const SatContext& sc, const Injection& rho, const Heaplet& eta,
                const Formula& f) {
  switch (f.kind) {
    case Formula::Top: return true;
    case Formula::Bot: return false;
    case Formula::And: return sat(sc, rho, eta, *f.lhs) && sat(sc, rho, eta, *f.rhs);
    case Formula::Or: return sat(sc, rho, eta, *f.lhs) || sat(sc, rho, eta, *f.rhs);

    case Formula::Imp: {
      if (sc.opts.naive_implication) {
        // the rejected clause: extensions at the same carrier only
        for (auto& ext : enum_extensions(eta, *sc.table, sc.bounds))
          if (sat(sc, rho, ext, *f.lhs) && !sat(sc, rho, ext, *f.rhs)) return false;
        return true;
      }
      Hidden here{rho, std::nullopt, eta};
      for (auto& rep : class_members(here, *sc.table, sc.bounds,
                                     sc.bounds.max_extra_cells))
        for (auto& ext : enum_extensions(rep.heap, *sc.table, sc.bounds))
          if (sat(sc, rep.rho, ext, *f.lhs) && !sat(sc, rep.rho, ext, *f.rhs))
            return false;
      return true;
    }

    case Formula::Star: {
      for (auto& [h1, h2] : enum_splits(eta))
        if (sat(sc, rho, h1, *f.lhs) && sat(sc, rho, h2, *f.rhs)) return true;
      return false;
    }

    case Formula::Wand: {
      Hidden here{rho, std::nullopt, eta};
      for (auto& rep : class_members(here, *sc.table, sc.bounds,
                                     sc.bounds.max_extra_cells)) {
        for (auto& other : enum_heaplets(rep.rho.target, *sc.table, sc.bounds)) {
          auto joined = pcm_mult(rep.heap, other);
          if (!joined) continue;
          if (sat(sc, rep.rho, other, *f.lhs) && !sat(sc, rep.rho, *joined, *f.rhs))
            return false;
        }
      }
      return true;
    }

    case Formula::PointsTo: {
      Value lv = rename_value(rho, eval_value(*sc.table, *f.t1, sc.env));
      Value vv = rename_value(rho, eval_value(*sc.table, *f.t2, sc.env));
      auto r = lv.as_ref();
      if (!r) throw InternalError("points-to target did not evaluate to a reference");
      return eta.has(r->loc) && value_equal(eta.at(r->loc), vv);
    }

    case Formula::Eq: {
      // first-order renaming is injective, so equality is decided at the
      // public world directly
      Value a = eval_value(*sc.table, *f.t1, sc.env);
      Value b = eval_value(*sc.table, *f.t2, sc.env);
      return value_equal(a, b);
    }

    case Formula::PApp: {
      Value a = eval_value(*sc.table, *f.t1, sc.env);
      return sat_pred(sc, rho, a, eta, *f.pred);
    }

    case Formula::Exists:
    case Formula::Forall: {
      bool exists = f.kind == Formula::Exists;
      const TypeExpr& a_ty = f.pred->arg_type;
      if (!first_order(a_ty))
        throw HigherOrderError("quantifier over a higher-order domain");
      for (auto& e : enum_inits(eta.over, *sc.table, sc.bounds,
                                sc.bounds.max_extra_cells, true)) {
        SatContext sc2 = sc;
        sc2.env = rename_env(inj_compose(e.rho, rho), sc.env);
        Heaplet eta2 = hhat_apply(e, eta);
        Injection id2 = identity_injection(e.rho.target);
        for (auto& a : enum_values(a_ty, e.rho.target, sc.bounds)) {
          bool ok = sat_pred(sc2, id2, a, eta2, *f.pred);
          if (exists && ok) return true;
          if (!exists && !ok) return false;
        }
      }
      return !exists;
    }
  }
  throw InternalError("sat: unreachable");
}

// Smallest bounded-upward-closed set of hidden heaplets containing the
// input: closes under ~-respecting extension within every carrier reachable
// with at most max_extra_cells hidden cells. Idempotent, extensive,
// monotone.
inline std::set<Hidden, HiddenLess> ucl_op(const std::set<Hidden, HiddenLess>& raw,
                                           const SortTable& table, const Bounds& bounds) {
  std::set<Hidden, HiddenLess> out;
  std::vector<Hidden> queue;
  auto add = [&](const Hidden& h) {
    Hidden c = canonicalize(h, table);
    if (c.rho.target.size() - c.rho.source.size() >
        static_cast<std::size_t>(bounds.max_extra_cells))
      return;
    if (out.insert(c).second) queue.push_back(c);
  };
  for (auto& h : raw) add(h);
  while (!queue.empty()) {
    Hidden h = queue.back();
    queue.pop_back();
    for (auto& rep : class_members(h, table, bounds, bounds.max_extra_cells))
      for (auto& ext : enum_extensions(rep.heap, table, bounds))
        add(Hidden{rep.rho, rep.val, ext});
  }
  return out;
}

// ---- entailment -------------------------------------------------------------

struct Witness {
  World world;
  std::map<std::string, Value> env_vals;
  Hidden at;  // the (rho, heaplet) countermodel
};

struct Verdict {
  enum Outcome { HoldsAtBound, FailsWithWitness };
  Outcome outcome = HoldsAtBound;
  Bounds bound_used;
  std::optional<Witness> witness;
};

namespace detail {

inline void enum_envs_go(const SortTable& table, const Bounds& bounds, const World& w,
                         const std::vector<CtxEntry>& entries, std::size_t i,
                         std::map<std::string, Value>& cur,
                         std::vector<std::map<std::string, Value>>& out) {
  if (i == entries.size()) {
    out.push_back(cur);
    return;
  }
  for (auto& v : enum_values(entries[i].type, w, bounds)) {
    cur[entries[i].name] = v;
    enum_envs_go(table, bounds, w, entries, i + 1, cur, out);
  }
  cur.erase(entries[i].name);
}

}  // namespace detail

// All environments for a first-order context at a world.
inline std::vector<std::map<std::string, Value>> enum_envs(const Ctx& ctx, const World& w,
                                                           const SortTable& table,
                                                           const Bounds& bounds) {
  for (auto& e : ctx.entries) {
    if (e.is_pred)
      throw HigherOrderError("entailment contexts with predicate variables are not supported");
    if (!first_order(e.type))
      throw HigherOrderError("entailment context has a higher-order variable type");
  }
  std::vector<std::map<std::string, Value>> out;
  std::map<std::string, Value> cur;
  detail::enum_envs_go(table, bounds, w, ctx.entries, 0, cur, out);
  return out;
}

// Semantic consequence over the enumerated models: worlds up to max_world
// cells, all environments, all canonical hidden heaplets within the hidden
// cell bound. Returns the first countermodel in enumeration order.
inline Verdict entails(const SortTable& table, const Ctx& ctx, const Formula& phi,
                       const Formula& psi, const Bounds& bounds,
                       const SatOpts& opts = {}) {
  for (auto& w : enum_worlds(table, bounds.max_world)) {
    auto envs = enum_envs(ctx, w, table, bounds);
    for (auto& env_vals : envs) {
      SatContext sc;
      sc.table = &table;
      sc.bounds = bounds;
      sc.opts = opts;
      sc.env = Env{w, env_vals};
      for (auto& key : enum_canonical_hiddens(w, table, bounds, bounds.max_extra_cells)) {
        if (sat(sc, key.rho, key.heap, phi) && !sat(sc, key.rho, key.heap, psi))
          return Verdict{Verdict::FailsWithWitness, bounds,
                         Witness{w, env_vals, key}};
      }
    }
  }
  return Verdict{Verdict::HoldsAtBound, bounds, std::nullopt};
}

// Validity of a single formula = entailment from ⊤.
inline Verdict check_valid(const SortTable& table, const Ctx& ctx, const Formula& phi,
                           const Bounds& bounds, const SatOpts& opts = {}) {
  Formula top = *mk_formula(Formula::Top);
  return entails(table, ctx, top, phi, bounds, opts);
}

inline std::string verdict_to_string(const Verdict& v, const SortTable& table) {
  if (v.outcome == Verdict::HoldsAtBound) return "HoldsAtBound";
  std::string s = "FailsWithWitness: world " + world_to_string(v.witness->world, table);
  for (auto& [n, val] : v.witness->env_vals) s += " " + n + " = " + value_to_string(val);
  s += "; " + hidden_to_string(v.witness->at, table);
  return s;
}

}  // namespace gs
