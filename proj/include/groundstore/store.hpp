#pragma once

// The full ground store monad. A monadic value at world w is a behavior
// function taking a move rho: w -> w' and a total heap over w' to a hidden
// (result, heap) pair at public world w'. The end condition (coherence of
// behaviors across moves) is a tested invariant, not enforced by
// representation.

#include <functional>
#include <memory>
#include <vector>

#include "groundstore/errors.hpp"
#include "groundstore/heaplet.hpp"
#include "groundstore/hiding.hpp"
#include "groundstore/init.hpp"
#include "groundstore/types.hpp"
#include "groundstore/value.hpp"
#include "groundstore/world.hpp"

namespace gs {

struct MonadVal {
  TypeExpr result_type;
  World at_world;
  // rho: at_world -> w', heap: total over w'. Returns a Hidden with public
  // world w', a value payload and a total heap.
  std::function<Hidden(const Injection&, const Heaplet&)> run;
};

inline MonadVal t_unit(const Value& v, const TypeExpr& a, const World& w) {
  return MonadVal{a, w, [v](const Injection& rho, const Heaplet& h) {
    return Hidden{identity_injection(rho.target), rename_value(rho, v), h};
  }};
}

// Kleisli extension. The continuation is world-indexed: it receives the
// composite move from the monadic value's home world and the result value at
// the world where it materialized.
using Kont = std::function<MonadVal(const Injection&, const Value&)>;

inline MonadVal t_bind(const MonadVal& m, const TypeExpr& result_type, const Kont& f) {
  World w = m.at_world;
  auto run_m = m.run;
  return MonadVal{result_type, w,
                  [w, run_m, f](const Injection& rho, const Heaplet& h) {
    Hidden r1 = run_m(rho, h);                       // public rho.target
    Injection sigma = inj_compose(r1.rho, rho);      // w -> carrier
    MonadVal next = f(sigma, *r1.val);
    Hidden r2 = next.run(identity_injection(r1.rho.target), r1.heap);
    return Hidden{inj_compose(r2.rho, r1.rho), r2.val, r2.heap};
  }};
}

// Tensorial strength: pairs a context value (renamed into the result's
// carrier) with the result inside the hidden class.
inline MonadVal t_strength(const Value& s, const TypeExpr& s_type, const MonadVal& m) {
  TypeExpr rt = TypeExpr::prod(s_type, m.result_type);
  auto run_m = m.run;
  return MonadVal{rt, m.at_world,
                  [s, run_m](const Injection& rho, const Heaplet& h) {
    Hidden r = run_m(rho, h);
    Value ctx = rename_value(inj_compose(r.rho, rho), s);
    return Hidden{r.rho, Value::pair(ctx, *r.val), r.heap};
  }};
}

inline MonadVal op_get(const Value& l, const World& w, const SortTable& table) {
  auto rv = l.as_ref();
  if (!rv || w.find(rv->loc) != std::optional<Sort>(rv->sort))
    throw TypeError("get: not a reference into the current world");
  TypeExpr rt = table.ctype(rv->sort);
  Loc loc = rv->loc;
  return MonadVal{rt, w, [loc](const Injection& rho, const Heaplet& h) {
    return Hidden{identity_injection(rho.target), h.at(rho.apply(loc)), h};
  }};
}

inline MonadVal op_put(const Value& l, const Value& v, const World& w,
                       const SortTable& table) {
  auto rv = l.as_ref();
  if (!rv || w.find(rv->loc) != std::optional<Sort>(rv->sort))
    throw TypeError("put: not a reference into the current world");
  if (!well_typed(v, table.ctype(rv->sort), w))
    throw TypeError("put: stored value has the wrong type");
  Loc loc = rv->loc;
  return MonadVal{TypeExpr::one(), w, [loc, v](const Injection& rho, const Heaplet& h) {
    Heaplet h2 = h;
    h2.cells[rho.apply(loc)] = rename_value(rho, v);
    return Hidden{identity_injection(rho.target), Value::unit(), h2};
  }};
}

// One letref binding: the sort of the fresh cell and its initializer. The
// initializer sees the composite move from the home world and all n fresh
// references, so mutual and cyclic initialization is possible.
struct NewDecl {
  Sort sort;
  std::function<Value(const Injection&, const std::vector<Value>&)> init;
};

// Simultaneous n-ary allocation. Returns the fresh references as a
// right-nested tuple; the fresh cells are hidden in the result.
inline MonadVal op_new(const std::vector<NewDecl>& decls, const World& w,
                       const SortTable& table) {
  if (decls.empty()) throw Error("op_new: no declarations");
  TypeExpr rt = TypeExpr::ref(decls.back().sort);
  for (std::size_t i = decls.size() - 1; i-- > 0;)
    rt = TypeExpr::prod(TypeExpr::ref(decls[i].sort), rt);
  return MonadVal{rt, w, [decls, &table](const Injection& rho, const Heaplet& h) {
    World fresh;
    for (std::size_t i = 0; i < decls.size(); ++i)
      fresh.cells[Loc{static_cast<std::uint32_t>(i)}] = decls[i].sort;
    OplusResult o = oplus(rho.target, fresh);
    std::vector<Value> refs;
    std::vector<Loc> fresh_locs;
    for (std::size_t i = 0; i < decls.size(); ++i) {
      Loc at = o.inj2.apply(Loc{static_cast<std::uint32_t>(i)});
      fresh_locs.push_back(at);
      refs.push_back(Value::ref(at, decls[i].sort));
    }
    Injection to_new = inj_compose(o.inj1, rho);
    Heaplet heap = transport(h, o.inj1);
    for (std::size_t i = 0; i < decls.size(); ++i) {
      Value v = decls[i].init(to_new, refs);
      if (!well_typed(v, table.ctype(decls[i].sort), o.world))
        throw TypeError("new: initializer value has the wrong type");
      heap.cells[fresh_locs[i]] = v;
    }
    Value tuple = refs.back();
    for (std::size_t i = refs.size() - 1; i-- > 0;)
      tuple = Value::pair(refs[i], tuple);
    return Hidden{o.inj1, tuple, heap};
  }};
}

// Forces a function value at a future world: composes the move with any
// pending renaming and dispatches to the closure.
inline MonadVal apply_fun(const Value& f, const Injection& rho, const Value& arg) {
  auto fn = f.as_fun();
  if (!fn) throw TypeError("application of a non-function value");
  if (fn->pre) return fn->fn->apply(inj_compose(rho, *fn->pre), arg);
  return fn->fn->apply(rho, arg);
}

// Observable equality of monadic values: canonical forms of the run results
// agree over every enumerated move and total heap within the bounds. Only
// meaningful for first-order result types.
inline bool monad_equal(const MonadVal& m1, const MonadVal& m2, const SortTable& table,
                        const Bounds& bounds, int max_extra = 1) {
  if (m1.at_world != m2.at_world) return false;
  for (auto& seq : enum_sort_seqs(table, max_extra)) {
    World fresh;
    for (std::size_t i = 0; i < seq.size(); ++i)
      fresh.cells[Loc{static_cast<std::uint32_t>(i)}] = seq[i];
    OplusResult o = oplus(m1.at_world, fresh);
    for (auto& rho : enum_injections(m1.at_world, o.world)) {
      for (auto& h : enum_total_heaps(o.world, table, bounds)) {
        Hidden a = canonicalize(m1.run(rho, h), table);
        Hidden b = canonicalize(m2.run(rho, h), table);
        if (!hidden_equal(a, b)) return false;
      }
    }
  }
  return true;
}

}  // namespace gs
