#pragma once

// Values: the presheaf interpretation of types. First-order values are
// finite data over a world; function values are world-indexed closures whose
// renaming is recorded lazily and only forced at call time.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groundstore/errors.hpp"
#include "groundstore/types.hpp"
#include "groundstore/world.hpp"

namespace gs {

class Value;
struct MonadVal;

// World-indexed function payload: given a move rho to a future world and an
// argument there, yields a computation at that world. Implementations live
// with the store monad; only the interface is needed here.
struct FunClosure {
  virtual ~FunClosure() = default;
  virtual MonadVal apply(const Injection& rho, const Value& arg) const = 0;
};

class Value {
 public:
  struct Unit {};
  struct Ground { long long n = 0; };
  struct RefVal { Loc loc; Sort sort; };
  struct Pair { std::shared_ptr<const Value> fst, snd; };
  struct Inl { std::shared_ptr<const Value> v; };
  struct Inr { std::shared_ptr<const Value> v; };
  // pre records pending renamings, forced only at call time.
  struct Fun {
    std::shared_ptr<const FunClosure> fn;
    std::shared_ptr<const Injection> pre;  // null = identity
  };

  std::variant<Unit, Ground, RefVal, Pair, Inl, Inr, Fun> node;

  Value() : node(Unit{}) {}
  explicit Value(std::variant<Unit, Ground, RefVal, Pair, Inl, Inr, Fun> n)
      : node(std::move(n)) {}

  static Value unit() { return Value{Unit{}}; }
  static Value ground(long long n) { return Value{Ground{n}}; }
  static Value ref(Loc l, Sort s) { return Value{RefVal{l, s}}; }
  static Value pair(Value a, Value b) {
    return Value{Pair{std::make_shared<Value>(std::move(a)),
                      std::make_shared<Value>(std::move(b))}};
  }
  static Value inl(Value v) { return Value{Inl{std::make_shared<Value>(std::move(v))}}; }
  static Value inr(Value v) { return Value{Inr{std::make_shared<Value>(std::move(v))}}; }
  static Value fun(std::shared_ptr<const FunClosure> f) {
    return Value{Fun{std::move(f), nullptr}};
  }

  bool is_unit() const { return std::holds_alternative<Unit>(node); }
  const Ground* as_ground() const { return std::get_if<Ground>(&node); }
  const RefVal* as_ref() const { return std::get_if<RefVal>(&node); }
  const Pair* as_pair() const { return std::get_if<Pair>(&node); }
  const Inl* as_inl() const { return std::get_if<Inl>(&node); }
  const Inr* as_inr() const { return std::get_if<Inr>(&node); }
  const Fun* as_fun() const { return std::get_if<Fun>(&node); }
};

// Total order on first-order values; any function value involved is a
// higher-order comparison error.
inline int value_cmp(const Value& a, const Value& b) {
  if (a.as_fun() || b.as_fun())
    throw HigherOrderError("comparison of function values");
  if (a.node.index() != b.node.index())
    return a.node.index() < b.node.index() ? -1 : 1;
  if (a.is_unit()) return 0;
  if (auto g = a.as_ground()) {
    long long x = g->n, y = b.as_ground()->n;
    return x < y ? -1 : x > y ? 1 : 0;
  }
  if (auto r = a.as_ref()) {
    auto s = b.as_ref();
    if (r->loc != s->loc) return r->loc < s->loc ? -1 : 1;
    if (r->sort != s->sort) return r->sort < s->sort ? -1 : 1;
    return 0;
  }
  if (auto p = a.as_pair()) {
    int c = value_cmp(*p->fst, *b.as_pair()->fst);
    if (c) return c;
    return value_cmp(*p->snd, *b.as_pair()->snd);
  }
  if (auto l = a.as_inl()) return value_cmp(*l->v, *b.as_inl()->v);
  return value_cmp(*a.as_inr()->v, *b.as_inr()->v);
}

inline bool value_equal(const Value& a, const Value& b) { return value_cmp(a, b) == 0; }

inline bool operator==(const Value& a, const Value& b) { return value_equal(a, b); }
inline bool operator!=(const Value& a, const Value& b) { return !value_equal(a, b); }

struct ValueLess {
  bool operator()(const Value& a, const Value& b) const { return value_cmp(a, b) < 0; }
};

// Functorial action of the type interpretation: relabels every reference
// along rho. Function values are renamed by precomposition, recorded lazily
// in the pending injection.
inline Value rename_value(const Injection& rho, const Value& v) {
  if (v.is_unit() || v.as_ground()) return v;
  if (auto r = v.as_ref()) return Value::ref(rho.apply(r->loc), r->sort);
  if (auto p = v.as_pair())
    return Value::pair(rename_value(rho, *p->fst), rename_value(rho, *p->snd));
  if (auto l = v.as_inl()) return Value::inl(rename_value(rho, *l->v));
  if (auto r = v.as_inr()) return Value::inr(rename_value(rho, *r->v));
  auto f = v.as_fun();
  Injection pre = f->pre ? inj_compose(rho, *f->pre) : rho;
  return Value{Value::Fun{f->fn, std::make_shared<Injection>(std::move(pre))}};
}

// Partial inverse of rename_value on first-order values: defined exactly
// when every reference lies in the image of rho.
inline std::optional<Value> unrename_value(const Injection& rho, const Value& v) {
  if (v.as_fun()) throw HigherOrderError("unrename of a function value");
  if (v.is_unit() || v.as_ground()) return v;
  if (auto r = v.as_ref()) {
    auto pre = rho.preimage(r->loc);
    if (!pre) return std::nullopt;
    return Value::ref(*pre, r->sort);
  }
  if (auto p = v.as_pair()) {
    auto a = unrename_value(rho, *p->fst);
    auto b = unrename_value(rho, *p->snd);
    if (!a || !b) return std::nullopt;
    return Value::pair(*a, *b);
  }
  if (auto l = v.as_inl()) {
    auto a = unrename_value(rho, *l->v);
    if (!a) return std::nullopt;
    return Value::inl(*a);
  }
  auto a = unrename_value(rho, *v.as_inr()->v);
  if (!a) return std::nullopt;
  return Value::inr(*a);
}

// Membership in the presheaf interpretation of A at w. With bounds given,
// ground literals must lie in the checking domain.
inline bool well_typed(const Value& v, const TypeExpr& a, const World& w,
                       const Bounds* bounds = nullptr) {
  if (a.is_zero()) return false;
  if (a.is_one()) return v.is_unit();
  if (a.is_int()) {
    auto g = v.as_ground();
    if (!g) return false;
    return !bounds || (g->n >= bounds->int_min && g->n <= bounds->int_max);
  }
  if (auto r = a.as_ref()) {
    auto rv = v.as_ref();
    return rv && rv->sort == r->sort && w.find(rv->loc) == std::optional<Sort>(r->sort);
  }
  if (auto p = a.as_prod()) {
    auto pv = v.as_pair();
    return pv && well_typed(*pv->fst, *p->fst, w, bounds) &&
           well_typed(*pv->snd, *p->snd, w, bounds);
  }
  if (auto s = a.as_sum()) {
    if (auto l = v.as_inl()) return well_typed(*l->v, *s->lhs, w, bounds);
    if (auto r = v.as_inr()) return well_typed(*r->v, *s->rhs, w, bounds);
    return false;
  }
  // Arrow: only the shape is checkable.
  return v.as_fun() != nullptr;
}

// Enumerates ⟦A⟧w exactly, without duplicates, in a fixed order:
// unit; ints ascending; references ascending; sums inl-then-inr; products
// first-component-major.
inline std::vector<Value> enum_values(const TypeExpr& a, const World& w,
                                      const Bounds& bounds) {
  if (a.as_arrow()) throw HigherOrderError("higher-order domain is not enumerable");
  if (a.is_zero()) return {};
  if (a.is_one()) return {Value::unit()};
  if (a.is_int()) {
    std::vector<Value> r;
    for (long long n = bounds.int_min; n <= bounds.int_max; ++n)
      r.push_back(Value::ground(n));
    return r;
  }
  if (auto rf = a.as_ref()) {
    std::vector<Value> r;
    for (Loc l : w.locs_of_sort(rf->sort)) r.push_back(Value::ref(l, rf->sort));
    return r;
  }
  if (auto s = a.as_sum()) {
    std::vector<Value> r;
    for (auto& v : enum_values(*s->lhs, w, bounds)) r.push_back(Value::inl(v));
    for (auto& v : enum_values(*s->rhs, w, bounds)) r.push_back(Value::inr(v));
    return r;
  }
  auto p = a.as_prod();
  std::vector<Value> r;
  for (auto& x : enum_values(*p->fst, w, bounds))
    for (auto& y : enum_values(*p->snd, w, bounds)) r.push_back(Value::pair(x, y));
  return r;
}

// Locations occurring in a first-order value, in component order (the
// traversal order used by canonical naming).
inline void collect_locs(const Value& v, std::vector<Loc>& out) {
  if (v.as_fun()) throw HigherOrderError("location scan of a function value");
  if (auto r = v.as_ref()) { out.push_back(r->loc); return; }
  if (auto p = v.as_pair()) { collect_locs(*p->fst, out); collect_locs(*p->snd, out); return; }
  if (auto l = v.as_inl()) { collect_locs(*l->v, out); return; }
  if (auto r = v.as_inr()) { collect_locs(*r->v, out); return; }
}

inline std::string value_to_string(const Value& v) {
  if (v.is_unit()) return "()";
  if (auto g = v.as_ground()) return std::to_string(g->n);
  if (auto r = v.as_ref()) return "#" + std::to_string(r->loc.index);
  if (auto p = v.as_pair())
    return "(" + value_to_string(*p->fst) + ", " + value_to_string(*p->snd) + ")";
  if (auto l = v.as_inl()) return "inl " + value_to_string(*l->v);
  if (auto r = v.as_inr()) return "inr " + value_to_string(*r->v);
  return "<fun>";
}

}  // namespace gs
