#pragma once

// Heap layouts (worlds), sort-preserving injections, complements and
// (local) independent coproducts.
//
// A world is a finitely supported map from locations to sorts; iteration is
// always in ascending location index, so every derived construction is
// deterministic. Worlds and injections are immutable values.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "groundstore/errors.hpp"

namespace gs {

// Location. The isomorphism # between locations and naturals is fixed as the
// identity; locations print as #k.
struct Loc {
  std::uint32_t index = 0;
  friend auto operator<=>(const Loc&, const Loc&) = default;
};

inline Loc operator+(Loc l, std::uint32_t n) { return Loc{l.index + n}; }

// Interned sort identifier; the name lives in the SortTable.
struct Sort {
  std::uint32_t id = 0;
  friend auto operator<=>(const Sort&, const Sort&) = default;
};

struct World {
  std::map<Loc, Sort> cells;

  bool empty() const { return cells.empty(); }
  std::size_t size() const { return cells.size(); }
  bool contains(Loc l) const { return cells.count(l) != 0; }

  Sort at(Loc l) const {
    auto it = cells.find(l);
    if (it == cells.end())
      throw WorldMismatch("location #" + std::to_string(l.index) + " not in world");
    return it->second;
  }

  std::optional<Sort> find(Loc l) const {
    auto it = cells.find(l);
    if (it == cells.end()) return std::nullopt;
    return it->second;
  }

  // Largest defined index, -1 when empty.
  std::int64_t max_index() const {
    if (cells.empty()) return -1;
    return static_cast<std::int64_t>(cells.rbegin()->first.index);
  }

  // Sublayout test: same sort at every shared location.
  bool sublayout_of(const World& o) const {
    for (auto& [l, s] : cells) {
      auto t = o.find(l);
      if (!t || *t != s) return false;
    }
    return true;
  }

  std::vector<Loc> locs() const {
    std::vector<Loc> r;
    r.reserve(cells.size());
    for (auto& [l, s] : cells) r.push_back(l);
    return r;
  }

  // All locations of a given sort, ascending (the set w^-1(S)).
  std::vector<Loc> locs_of_sort(Sort s) const {
    std::vector<Loc> r;
    for (auto& [l, t] : cells)
      if (t == s) r.push_back(l);
    return r;
  }

  friend auto operator<=>(const World&, const World&) = default;
  friend bool operator==(const World&, const World&) = default;
};

// Sort-preserving injection between worlds. Total on the source; an
// inclusion iff it maps every location to itself.
struct Injection {
  World source;
  World target;
  std::map<Loc, Loc> map;

  Loc apply(Loc l) const {
    auto it = map.find(l);
    if (it == map.end())
      throw WorldMismatch("injection undefined on #" + std::to_string(l.index));
    return it->second;
  }

  bool is_inclusion() const {
    for (auto& [a, b] : map)
      if (a != b) return false;
    return true;
  }

  bool is_identity() const { return source == target && is_inclusion(); }

  bool in_image(Loc l) const {
    for (auto& [a, b] : map)
      if (b == l) return true;
    return false;
  }

  std::optional<Loc> preimage(Loc l) const {
    for (auto& [a, b] : map)
      if (b == l) return a;
    return std::nullopt;
  }

  friend auto operator<=>(const Injection&, const Injection&) = default;
  friend bool operator==(const Injection&, const Injection&) = default;
};

// Validates totality, injectivity and sort preservation.
inline void check_injection(const Injection& rho) {
  if (rho.map.size() != rho.source.cells.size())
    throw WorldMismatch("injection not total on its source");
  std::map<Loc, int> seen;
  for (auto& [a, b] : rho.map) {
    if (!rho.source.contains(a)) throw WorldMismatch("injection defined outside source");
    if (!rho.target.contains(b)) throw WorldMismatch("injection lands outside target");
    if (rho.source.at(a) != rho.target.at(b))
      throw WorldMismatch("injection does not preserve sorts");
    if (seen[b]++) throw WorldMismatch("injection not injective");
  }
}

inline Injection identity_injection(const World& w) {
  Injection r{w, w, {}};
  for (auto& [l, s] : w.cells) r.map[l] = l;
  return r;
}

inline Injection inclusion(const World& sub, const World& sup) {
  if (!sub.sublayout_of(sup)) throw WorldMismatch("not a sublayout");
  Injection r{sub, sup, {}};
  for (auto& [l, s] : sub.cells) r.map[l] = l;
  return r;
}

// g after f.
inline Injection inj_compose(const Injection& g, const Injection& f) {
  if (f.target != g.source)
    throw WorldMismatch("inj_compose: middle worlds differ");
  Injection r{f.source, g.target, {}};
  for (auto& [a, b] : f.map) r.map[a] = g.apply(b);
  return r;
}

struct OplusResult {
  World world;
  Injection inj1;  // inclusion of w1
  Injection inj2;  // shift of w2 by max_index(w1)+1
};

// Independent coproduct: w1 ⊕ w2 keeps w1 fixed and shifts every w2 cell
// past the largest index of w1.
inline OplusResult oplus(const World& w1, const World& w2) {
  std::uint32_t shift = static_cast<std::uint32_t>(w1.max_index() + 1);
  World r = w1;
  Injection i2{w2, {}, {}};
  for (auto& [l, s] : w2.cells) {
    Loc moved = l + shift;
    r.cells[moved] = s;
    i2.map[l] = moved;
  }
  i2.target = r;
  return {r, inclusion(w1, r), i2};
}

struct ComplementResult {
  World world;          // target ⊖ rho
  Injection include;    // its inclusion into rho.target
};

// Cells of rho.target the injection misses.
inline ComplementResult complement(const Injection& rho) {
  World c;
  for (auto& [l, s] : rho.target.cells)
    if (!rho.in_image(l)) c.cells[l] = s;
  return {c, inclusion(c, rho.target)};
}

struct LocalOplusResult {
  World world;     // rho1 ⊕_w rho2 = w ⊕ (w1 ⊖ rho1) ⊕ (w2 ⊖ rho2)
  Injection b12;   // rho1 • rho2 : w1 -> world
  Injection b21;   // rho2 • rho1 : w2 -> world
};

// Local independent coproduct of two futures of a shared world.
// Satisfies b12 ∘ rho1 = b21 ∘ rho2, and b12, b21 are jointly surjective.
inline LocalOplusResult local_oplus(const Injection& rho1, const Injection& rho2) {
  if (rho1.source != rho2.source)
    throw WorldMismatch("local_oplus: sources differ");
  const World& w = rho1.source;
  ComplementResult c1 = complement(rho1);
  ComplementResult c2 = complement(rho2);
  OplusResult a = oplus(w, c1.world);
  OplusResult r = oplus(a.world, c2.world);

  Injection b12{rho1.target, r.world, {}};
  for (auto& [l1, s] : rho1.target.cells) {
    auto pre = rho1.preimage(l1);
    if (pre)
      b12.map[l1] = r.inj1.apply(a.inj1.apply(*pre));
    else
      b12.map[l1] = r.inj1.apply(a.inj2.apply(l1));
  }
  Injection b21{rho2.target, r.world, {}};
  for (auto& [l2, s] : rho2.target.cells) {
    auto pre = rho2.preimage(l2);
    if (pre)
      b21.map[l2] = r.inj1.apply(a.inj1.apply(*pre));
    else
      b21.map[l2] = r.inj2.apply(l2);
  }
  return {r.world, b12, b21};
}

}  // namespace gs
