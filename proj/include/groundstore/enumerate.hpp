#pragma once

// Deterministic small-scale enumerators used by the bounded quantifier
// clauses, the equivalence oracle and the law suites. Everything here is
// exhaustive within the stated bound and enumerated in a fixed order.

#include <cstdint>
#include <functional>
#include <vector>

#include "groundstore/heaplet.hpp"
#include "groundstore/init.hpp"
#include "groundstore/types.hpp"
#include "groundstore/value.hpp"
#include "groundstore/world.hpp"

namespace gs {

// All worlds with support inside {0..max_cells-1} over the given sorts
// (all subsets of the index range, all sort assignments).
inline std::vector<World> enum_worlds(const SortTable& table, int max_cells) {
  std::vector<Sort> sorts = table.sorts();
  std::vector<World> out;
  for (std::uint32_t mask = 0; mask < (1u << max_cells); ++mask) {
    std::vector<std::uint32_t> idx;
    for (int i = 0; i < max_cells; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<World> partial{World{}};
    for (std::uint32_t i : idx) {
      std::vector<World> next;
      for (auto& w : partial)
        for (Sort s : sorts) {
          World w2 = w;
          w2.cells[Loc{i}] = s;
          next.push_back(w2);
        }
      partial = std::move(next);
    }
    for (auto& w : partial) out.push_back(w);
  }
  return out;
}

// All sort-preserving injective maps w1 -> w2.
inline std::vector<Injection> enum_injections(const World& w1, const World& w2) {
  std::vector<Loc> src = w1.locs();
  std::vector<Injection> out;
  Injection cur{w1, w2, {}};
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == src.size()) {
      out.push_back(cur);
      return;
    }
    Loc a = src[i];
    for (auto& [b, s] : w2.cells) {
      if (s != w1.at(a)) continue;
      bool used = false;
      for (auto& [x, y] : cur.map)
        if (y == b) { used = true; break; }
      if (used) continue;
      cur.map[a] = b;
      go(i + 1);
      cur.map.erase(a);
    }
  };
  go(0);
  return out;
}

inline std::vector<Injection> enum_isos(const World& w1, const World& w2) {
  if (w1.size() != w2.size()) return {};
  return enum_injections(w1, w2);
}

// All fills of the cells of `dom` with values over `over`, in cell-major
// order. Requires dom ⊆ over.
inline std::vector<Heaplet> enum_fills(const World& dom, const World& over,
                                       const SortTable& table, const Bounds& bounds) {
  std::vector<Heaplet> out{empty_heaplet(over)};
  for (auto& [l, s] : dom.cells) {
    std::vector<Value> vals = enum_values(table.ctype(s), over, bounds);
    std::vector<Heaplet> next;
    for (auto& h : out)
      for (auto& v : vals) {
        Heaplet h2 = h;
        h2.cells[l] = v;
        next.push_back(h2);
      }
    out = std::move(next);
  }
  return out;
}

// All heaplets over w: every dom subset, every fill.
inline std::vector<Heaplet> enum_heaplets(const World& w, const SortTable& table,
                                          const Bounds& bounds) {
  std::vector<Loc> ls = w.locs();
  std::vector<Heaplet> out;
  for (std::uint32_t mask = 0; mask < (1u << ls.size()); ++mask) {
    World dom;
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (mask & (1u << i)) dom.cells[ls[i]] = w.at(ls[i]);
    for (auto& h : enum_fills(dom, w, table, bounds)) out.push_back(h);
  }
  return out;
}

inline std::vector<Heaplet> enum_total_heaps(const World& w, const SortTable& table,
                                             const Bounds& bounds) {
  return enum_fills(w, w, table, bounds);
}

// All extensions of h within its carrier: heaplets h' with h ≤ h'.
inline std::vector<Heaplet> enum_extensions(const Heaplet& h, const SortTable& table,
                                            const Bounds& bounds) {
  World rest;
  for (auto& [l, s] : h.over.cells)
    if (!h.has(l)) rest.cells[l] = s;
  std::vector<Heaplet> out;
  std::vector<Loc> ls = rest.locs();
  for (std::uint32_t mask = 0; mask < (1u << ls.size()); ++mask) {
    World dom;
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (mask & (1u << i)) dom.cells[ls[i]] = rest.at(ls[i]);
    for (auto& extra : enum_fills(dom, h.over, table, bounds)) {
      Heaplet h2 = h;
      for (auto& [l, v] : extra.cells) h2.cells[l] = v;
      out.push_back(h2);
    }
  }
  return out;
}

// All sort sequences of length 0..max_len (the shapes of freshly appended
// cells, shortest first).
inline std::vector<std::vector<Sort>> enum_sort_seqs(const SortTable& table, int max_len) {
  std::vector<std::vector<Sort>> out{{}};
  std::vector<std::vector<Sort>> layer{{}};
  for (int n = 1; n <= max_len; ++n) {
    std::vector<std::vector<Sort>> next;
    for (auto& seq : layer)
      for (Sort s : table.sorts()) {
        auto seq2 = seq;
        seq2.push_back(s);
        next.push_back(seq2);
        out.push_back(seq2);
      }
    layer = std::move(next);
  }
  return out;
}

// Inclusion-shaped initializations from w: append 0..max_extra fresh cells
// by ⊕ and fill them in every possible way (every partial fill, or only the
// total ones). Fill values live over the extended world.
inline std::vector<Init> enum_inits(const World& w, const SortTable& table,
                                    const Bounds& bounds, int max_extra,
                                    bool partial) {
  std::vector<Init> out;
  for (auto& seq : enum_sort_seqs(table, max_extra)) {
    World fresh;
    for (std::size_t i = 0; i < seq.size(); ++i)
      fresh.cells[Loc{static_cast<std::uint32_t>(i)}] = seq[i];
    OplusResult o = oplus(w, fresh);
    World fresh_cells = complement(o.inj1).world;
    if (partial) {
      std::vector<Loc> ls = fresh_cells.locs();
      for (std::uint32_t mask = 0; mask < (1u << ls.size()); ++mask) {
        World dom;
        for (std::size_t i = 0; i < ls.size(); ++i)
          if (mask & (1u << i)) dom.cells[ls[i]] = fresh_cells.at(ls[i]);
        for (auto& f : enum_fills(dom, o.world, table, bounds))
          out.push_back(Init{o.inj1, f});
      }
    } else {
      for (auto& f : enum_fills(fresh_cells, o.world, table, bounds))
        out.push_back(Init{o.inj1, f});
    }
  }
  return out;
}

// All two-way splits (d1, d2) of the dom of a heaplet.
inline std::vector<std::pair<Heaplet, Heaplet>> enum_splits(const Heaplet& h) {
  std::vector<Loc> ls;
  for (auto& [l, v] : h.cells) ls.push_back(l);
  std::vector<std::pair<Heaplet, Heaplet>> out;
  for (std::uint32_t mask = 0; mask < (1u << ls.size()); ++mask) {
    Heaplet a{h.over, {}}, b{h.over, {}};
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (mask & (1u << i))
        a.cells[ls[i]] = h.at(ls[i]);
      else
        b.cells[ls[i]] = h.at(ls[i]);
    }
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace gs
