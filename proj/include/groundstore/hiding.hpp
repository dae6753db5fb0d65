#pragma once

// The hiding quotient. A Hidden value is a representative (rho: w -> w',
// payload over w') of a class under ~, the symmetric-transitive closure of
// the forward step
//
//   (rho, x)  ⪯  (û e ∘ rho, Ĥ e x)          (e an initialization from w')
//
// Production code decides ~ by canonical forms: delete hidden cells not
// reachable from the public image and the payload value, then rename the
// survivors deterministically. The generative bounded oracle lives here too;
// tests require the two to agree.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groundstore/enumerate.hpp"
#include "groundstore/errors.hpp"
#include "groundstore/heaplet.hpp"
#include "groundstore/init.hpp"
#include "groundstore/value.hpp"
#include "groundstore/world.hpp"

namespace gs {

struct Hidden {
  Injection rho;              // public world -> carrier world
  std::optional<Value> val;   // result part, when the payload is a pair
  Heaplet heap;               // over the carrier

  const World& public_world() const { return rho.source; }
  const World& carrier() const { return rho.target; }
};

inline void check_hidden(const Hidden& h, const SortTable& table) {
  check_injection(h.rho);
  if (h.heap.over != h.rho.target)
    throw WorldMismatch("hidden: payload lives over the wrong world");
  check_heaplet(h.heap, table);
}

inline int hidden_cmp(const Hidden& a, const Hidden& b) {
  if (a.rho != b.rho) return a.rho < b.rho ? -1 : 1;
  if (a.val.has_value() != b.val.has_value()) return a.val.has_value() ? 1 : -1;
  if (a.val) {
    int c = value_cmp(*a.val, *b.val);
    if (c) return c;
  }
  return heaplet_cmp(a.heap, b.heap);
}

inline bool hidden_equal(const Hidden& a, const Hidden& b) { return hidden_cmp(a, b) == 0; }

struct HiddenLess {
  bool operator()(const Hidden& a, const Hidden& b) const { return hidden_cmp(a, b) < 0; }
};

// Contravariant action: shrinks the public world.
inline Hidden hide(const Injection& rho, const Hidden& h) {
  if (rho.target != h.rho.source)
    throw WorldMismatch("hide: injection does not reach the public world");
  return Hidden{inj_compose(h.rho, rho), h.val, h.heap};
}

// Pushes the payload along an initialization of the carrier (no change of
// the class, a new representative).
inline Hidden forward_step(const Hidden& h, const Init& e) {
  if (e.rho.source != h.rho.target)
    throw WorldMismatch("forward_step: initialization source differs from carrier");
  return Hidden{inj_compose(e.rho, h.rho),
                h.val ? std::optional<Value>(rename_value(e.rho, *h.val)) : std::nullopt,
                hhat_apply(e, h.heap)};
}

// Covariant action of the hiding functor: promotes the initialization and
// the representative past each other.
//   (P X)(e: w1 ~> w2)(rho: w1 -> w1', x) = (ûe • rho, X(rho • e)(x))
inline Hidden pcov_apply(const Init& e, const Hidden& h) {
  if (e.rho.source != h.rho.source)
    throw WorldMismatch("pcov_apply: sources differ");
  Init promoted = promote(h.rho, e);          // w1' ~> rho ⊕ ûe
  LocalOplusResult lo = local_oplus(h.rho, e.rho);
  return Hidden{lo.b21,
                h.val ? std::optional<Value>(rename_value(promoted.rho, *h.val))
                      : std::nullopt,
                hhat_apply(promoted, h.heap)};
}

// Canonical form. Roots are the public image (ascending public index) and
// the payload value's references in occurrence order; edges go from a filled
// cell to the references stored in it. Hidden cells not reachable from the
// roots are deleted; the survivors are renamed onto the first free indices
// in breadth-first discovery order. The public world itself is untouched and
// embeds by inclusion.
inline Hidden canonicalize(const Hidden& h, const SortTable& table) {
  if (h.val && h.val->as_fun())
    throw HigherOrderError("higher-order payload is not canonicalizable");
  const World& w = h.rho.source;
  const World& carrier = h.rho.target;

  std::vector<Loc> order;
  std::set<Loc> seen;
  std::deque<Loc> queue;
  auto visit = [&](Loc l) {
    if (seen.insert(l).second) {
      order.push_back(l);
      queue.push_back(l);
    }
  };
  for (auto& [l, s] : w.cells) visit(h.rho.apply(l));
  if (h.val) {
    std::vector<Loc> vs;
    collect_locs(*h.val, vs);
    for (Loc l : vs) visit(l);
  }
  while (!queue.empty()) {
    Loc c = queue.front();
    queue.pop_front();
    auto it = h.heap.cells.find(c);
    if (it == h.heap.cells.end()) continue;
    std::vector<Loc> vs;
    collect_locs(it->second, vs);
    for (Loc l : vs) visit(l);
  }

  // Survivors renamed: public cells back to their source index, hidden
  // cells onto free indices ascending, in discovery order.
  std::map<Loc, Loc> ren;
  for (auto& [l, s] : w.cells) ren[h.rho.apply(l)] = l;
  std::uint32_t next_free = 0;
  auto take_free = [&]() {
    while (w.contains(Loc{next_free})) ++next_free;
    return Loc{next_free++};
  };
  World canon_world = w;
  World survivors;
  for (Loc l : order) {
    survivors.cells[l] = carrier.at(l);
    if (!ren.count(l)) {
      Loc fresh = take_free();
      ren[l] = fresh;
      canon_world.cells[fresh] = carrier.at(l);
    }
  }

  Injection sigma{survivors, canon_world, ren};
  Heaplet canon_heap{canon_world, {}};
  for (auto& [l, v] : h.heap.cells) {
    if (!survivors.contains(l)) continue;
    canon_heap.cells[sigma.apply(l)] = rename_value(sigma, v);
  }
  return Hidden{inclusion(w, canon_world),
                h.val ? std::optional<Value>(rename_value(sigma, *h.val)) : std::nullopt,
                canon_heap};
}

inline bool is_canonical(const Hidden& h, const SortTable& table) {
  return hidden_equal(h, canonicalize(h, table));
}

// All representatives of the class of h whose carrier exceeds the canonical
// carrier by at most max_extra cells, in inclusion shape. By the diamond
// property every class member is one forward step from the canonical form,
// so up to world isomorphism this enumerates the whole class within the
// bound.
inline std::vector<Hidden> class_members(const Hidden& h, const SortTable& table,
                                         const Bounds& bounds, int max_extra) {
  Hidden c = canonicalize(h, table);
  std::vector<Hidden> out;
  for (auto& e : enum_inits(c.rho.target, table, bounds, max_extra, true))
    out.push_back(forward_step(c, e));
  return out;
}

namespace detail {

// Iso-invariant fingerprint of a representative, anchored at the public
// world: hidden reference targets are wildcarded by sort, hidden cells are
// listed as a sorted multiset. Representatives matched by an isomorphism
// over the public part necessarily share fingerprints.
inline std::string rep_fingerprint(const Hidden& r) {
  auto shape = [&](const Value& v) {
    std::string s;
    std::function<void(const Value&)> go = [&](const Value& x) {
      if (x.is_unit()) { s += "u"; return; }
      if (auto g = x.as_ground()) { s += "g" + std::to_string(g->n); return; }
      if (auto rf = x.as_ref()) {
        auto pre = r.rho.preimage(rf->loc);
        if (pre)
          s += "p" + std::to_string(pre->index);
        else
          s += "h" + std::to_string(rf->sort.id);
        return;
      }
      if (auto p = x.as_pair()) { s += "("; go(*p->fst); s += ","; go(*p->snd); s += ")"; return; }
      if (auto l = x.as_inl()) { s += "L"; go(*l->v); return; }
      s += "R"; go(*x.as_inr()->v);
    };
    go(v);
    return s;
  };
  std::string fp = "n" + std::to_string(r.rho.target.size()) + ";";
  for (auto& [l, s] : r.rho.source.cells) {
    Loc t = r.rho.apply(l);
    fp += "P" + std::to_string(l.index) + ":";
    auto it = r.heap.cells.find(t);
    fp += it == r.heap.cells.end() ? "-" : shape(it->second);
    fp += ";";
  }
  std::vector<std::string> hid;
  for (auto& [l, s] : r.rho.target.cells) {
    if (r.rho.preimage(l)) continue;
    auto it = r.heap.cells.find(l);
    hid.push_back("H" + std::to_string(s.id) + ":" +
                  (it == r.heap.cells.end() ? "-" : shape(it->second)));
  }
  std::sort(hid.begin(), hid.end());
  for (auto& x : hid) fp += x + ";";
  if (r.val) fp += "v" + shape(*r.val);
  return fp;
}

inline std::vector<Hidden> oracle_reps(const Hidden& h, const SortTable& table,
                                       const Bounds& bounds) {
  std::vector<Hidden> out;
  for (auto& e : enum_inits(h.rho.target, table, bounds, bounds.max_extra_cells, true))
    out.push_back(forward_step(h, e));
  return out;
}

}  // namespace detail

// Bounded generative decision of ~: searches for a common upper bound with
// at most bounds.max_extra_cells fresh cells on each side, comparing the
// pushed payloads up to an isomorphism that matches the public injections.
// true implies h1 ~ h2; false means no witness within the bound.
inline bool equiv_oracle(const Hidden& h1, const Hidden& h2, const SortTable& table,
                         const Bounds& bounds) {
  if (h1.rho.source != h2.rho.source)
    throw WorldMismatch("equiv_oracle: public worlds differ");
  if (h1.val.has_value() != h2.val.has_value()) return false;

  std::vector<Hidden> reps1 = detail::oracle_reps(h1, table, bounds);
  std::vector<Hidden> reps2 = detail::oracle_reps(h2, table, bounds);
  std::multimap<std::string, std::size_t> index2;
  for (std::size_t j = 0; j < reps2.size(); ++j)
    index2.emplace(detail::rep_fingerprint(reps2[j]), j);

  for (auto& r1 : reps1) {
    auto [lo, hi] = index2.equal_range(detail::rep_fingerprint(r1));
    for (auto it = lo; it != hi; ++it) {
      const Hidden& r2 = reps2[it->second];
      for (auto& iota : enum_isos(r1.rho.target, r2.rho.target)) {
        if (inj_compose(iota, r1.rho) != r2.rho) continue;
        if (r1.val && !value_equal(rename_value(iota, *r1.val), *r2.val)) continue;
        if (!heaplet_equal(transport(r1.heap, iota), r2.heap)) continue;
        return true;
      }
    }
  }
  return false;
}

// All canonical Hidden forms with public world w and at most max_extra
// hidden cells; with a value type given, the payload carries a value of that
// type. Used to materialize predicate tables.
inline std::vector<Hidden> enum_canonical_hiddens(
    const World& w, const SortTable& table, const Bounds& bounds, int max_extra,
    const TypeExpr* val_type = nullptr) {
  std::vector<Hidden> out;
  for (auto& seq : enum_sort_seqs(table, max_extra)) {
    World fresh;
    for (std::size_t i = 0; i < seq.size(); ++i)
      fresh.cells[Loc{static_cast<std::uint32_t>(i)}] = seq[i];
    OplusResult o = oplus(w, fresh);
    Injection incl = o.inj1;
    for (auto& eta : enum_heaplets(o.world, table, bounds)) {
      if (val_type) {
        for (auto& a : enum_values(*val_type, o.world, bounds)) {
          Hidden h{incl, a, eta};
          if (is_canonical(h, table)) out.push_back(h);
        }
      } else {
        Hidden h{incl, std::nullopt, eta};
        if (is_canonical(h, table)) out.push_back(h);
      }
    }
  }
  return out;
}

inline std::string hidden_to_string(const Hidden& h, const SortTable& table) {
  std::string s = "public " + world_to_string(h.rho.source, table);
  if (!h.rho.is_inclusion()) {
    s += " via [";
    bool first = true;
    for (auto& [a, b] : h.rho.map) {
      if (!first) s += ", ";
      first = false;
      s += "#" + std::to_string(a.index) + "->#" + std::to_string(b.index);
    }
    s += "]";
  }
  s += " carrier " + world_to_string(h.rho.target, table);
  if (h.val) s += " value " + value_to_string(*h.val);
  s += " heap { ";
  bool first = true;
  for (auto& [l, v] : h.heap.cells) {
    if (!first) s += ", ";
    first = false;
    s += "#" + std::to_string(l.index) + " -> " + value_to_string(v);
  }
  s += first ? "}" : " }";
  return s;
}

}  // namespace gs
