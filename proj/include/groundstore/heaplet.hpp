#pragma once

// Heaplets: contents for a sub-layout of a world, with values over the whole
// world. A heap is the total case. Carries the ordered-pcm structure used by
// the logic (disjoint union, extension order) and the two bifunctor actions.

#include <map>
#include <optional>
#include <string>

#include "groundstore/errors.hpp"
#include "groundstore/types.hpp"
#include "groundstore/value.hpp"
#include "groundstore/world.hpp"

namespace gs {

struct Heaplet {
  World over;
  std::map<Loc, Value> cells;  // keys are the dom; values live over `over`

  bool total() const { return cells.size() == over.size(); }

  bool has(Loc l) const { return cells.count(l) != 0; }

  const Value& at(Loc l) const {
    auto it = cells.find(l);
    if (it == cells.end())
      throw WorldMismatch("heaplet has no cell #" + std::to_string(l.index));
    return it->second;
  }

  World dom_world() const {
    World d;
    for (auto& [l, v] : cells) d.cells[l] = over.at(l);
    return d;
  }
};

inline Heaplet empty_heaplet(const World& over) { return Heaplet{over, {}}; }

// dom ⊆ over and every stored value well-typed at its cell's content type.
inline void check_heaplet(const Heaplet& h, const SortTable& table,
                          const Bounds* bounds = nullptr) {
  for (auto& [l, v] : h.cells) {
    auto s = h.over.find(l);
    if (!s) throw WorldMismatch("heaplet cell outside its world");
    if (!well_typed(v, table.ctype(*s), h.over, bounds))
      throw TypeError("heaplet cell #" + std::to_string(l.index) + " ill-typed");
  }
}

inline int heaplet_cmp(const Heaplet& a, const Heaplet& b) {
  if (a.over != b.over) return a.over < b.over ? -1 : 1;
  auto ia = a.cells.begin(), ib = b.cells.begin();
  for (; ia != a.cells.end() && ib != b.cells.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = value_cmp(ia->second, ib->second);
    if (c) return c;
  }
  if (ia != a.cells.end()) return 1;
  if (ib != b.cells.end()) return -1;
  return 0;
}

inline bool heaplet_equal(const Heaplet& a, const Heaplet& b) {
  return heaplet_cmp(a, b) == 0;
}

struct HeapletLess {
  bool operator()(const Heaplet& a, const Heaplet& b) const {
    return heaplet_cmp(a, b) < 0;
  }
};

// Covariant action: pushes the dom forward along rho and renames every
// stored value.
inline Heaplet transport(const Heaplet& h, const Injection& rho) {
  if (rho.source != h.over)
    throw WorldMismatch("transport: injection source differs from heaplet world");
  Heaplet r{rho.target, {}};
  for (auto& [l, v] : h.cells) r.cells[rho.apply(l)] = rename_value(rho, v);
  return r;
}

// Contravariant action: projection onto a sub-layout of the dom.
inline Heaplet restrict_heaplet(const Heaplet& h, const World& w0) {
  Heaplet r{h.over, {}};
  for (auto& [l, s] : w0.cells) {
    auto it = h.cells.find(l);
    if (it == h.cells.end() || h.over.at(l) != s)
      throw WorldMismatch("restrict: not a sub-layout of the dom");
    r.cells[l] = it->second;
  }
  return r;
}

// pcm multiplication: union when the doms are disjoint, otherwise the
// distinguished undefined outcome (not an error).
inline std::optional<Heaplet> pcm_mult(const Heaplet& h1, const Heaplet& h2) {
  if (h1.over != h2.over)
    throw WorldMismatch("pcm_mult: heaplets live over different worlds");
  Heaplet r = h1;
  for (auto& [l, v] : h2.cells) {
    if (r.cells.count(l)) return std::nullopt;
    r.cells[l] = v;
  }
  return r;
}

// Extension order: h1 ≤ h2 iff dom h1 ⊆ dom h2 and the cells agree there.
inline bool pcm_leq(const Heaplet& h1, const Heaplet& h2) {
  if (h1.over != h2.over)
    throw WorldMismatch("pcm_leq: heaplets live over different worlds");
  for (auto& [l, v] : h1.cells) {
    auto it = h2.cells.find(l);
    if (it == h2.cells.end() || !value_equal(it->second, v)) return false;
  }
  return true;
}

// Amalgamation along the independent coproduct of the underlying worlds:
// both heaplets are transported into over1 ⊕ over2 and joined.
inline Heaplet heaplet_oplus(const Heaplet& h1, const Heaplet& h2) {
  OplusResult o = oplus(h1.over, h2.over);
  Heaplet a = transport(h1, o.inj1);
  Heaplet b = transport(h2, o.inj2);
  auto r = pcm_mult(a, b);
  if (!r) throw InternalError("heaplet_oplus: images not disjoint");
  return *r;
}

inline std::string heaplet_to_string(const Heaplet& h, const SortTable& table) {
  std::string s = "over " + world_to_string(h.over, table) + " { ";
  bool first = true;
  for (auto& [l, v] : h.cells) {
    if (!first) s += ", ";
    first = false;
    s += "#" + std::to_string(l.index) + " -> " + value_to_string(v);
  }
  return s + (first ? "}" : " }");
}

}  // namespace gs
