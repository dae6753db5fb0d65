#pragma once

// Initializations: a world injection plus a filling of (some of) the fresh
// cells. Total fillings are the morphisms of the category of heaps E; the
// partial case is Ê. One representation covers both, distinguished by
// total().

#include <string>

#include "groundstore/errors.hpp"
#include "groundstore/heaplet.hpp"
#include "groundstore/world.hpp"

namespace gs {

struct Init {
  Injection rho;  // w -> w'
  Heaplet fill;   // over w'; dom ⊆ w' ⊖ rho

  // An E-morphism inside Ê: every fresh cell is filled.
  bool total() const {
    return fill.cells.size() == rho.target.size() - rho.source.size();
  }
};

inline void check_init(const Init& e, const SortTable& table,
                       const Bounds* bounds = nullptr) {
  check_injection(e.rho);
  if (e.fill.over != e.rho.target)
    throw WorldMismatch("init: fill lives over the wrong world");
  for (auto& [l, v] : e.fill.cells)
    if (e.rho.in_image(l))
      throw WorldMismatch("init: fill overwrites an old cell");
  check_heaplet(e.fill, table, bounds);
}

inline Init identity_init(const World& w) {
  return Init{identity_injection(w), empty_heaplet(w)};
}

// e2 after e1. Old fills are renamed along the outer injection; the outer
// fill is kept; remaining fresh cells stay unfilled. This is the unique law
// making hhat_apply functorial.
inline Init init_compose(const Init& e2, const Init& e1) {
  if (e1.rho.target != e2.rho.source)
    throw WorldMismatch("init_compose: middle worlds differ");
  Init r{inj_compose(e2.rho, e1.rho), empty_heaplet(e2.rho.target)};
  for (auto& [l, v] : e1.fill.cells)
    r.fill.cells[e2.rho.apply(l)] = rename_value(e2.rho, v);
  for (auto& [l, v] : e2.fill.cells) r.fill.cells[l] = v;
  return r;
}

// The heaplet functor's action: old cells move along rho (values renamed),
// fresh cells come from the fill.
inline Heaplet hhat_apply(const Init& e, const Heaplet& h) {
  if (h.over != e.rho.source)
    throw WorldMismatch("hhat_apply: heaplet lives over the wrong world");
  Heaplet r = transport(h, e.rho);
  for (auto& [l, v] : e.fill.cells) r.cells[l] = v;
  return r;
}

// Promotes an initialization from w along an injection rho1 from w. The
// result starts at rho1's target and lands in the local independent
// coproduct, with the fill mapped forward.
inline Init promote(const Injection& rho1, const Init& e) {
  if (rho1.source != e.rho.source)
    throw WorldMismatch("promote: sources differ");
  LocalOplusResult lo = local_oplus(rho1, e.rho);
  return Init{lo.b12, transport(e.fill, lo.b21)};
}

}  // namespace gs
