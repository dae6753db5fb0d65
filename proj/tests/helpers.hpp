#pragma once

// Shared fixtures for the test suites: a couple of standard sort tables and
// terse constructors for worlds, heaplets and values.

#include <initializer_list>
#include <utility>

#include "groundstore/heaplet.hpp"
#include "groundstore/types.hpp"
#include "groundstore/value.hpp"
#include "groundstore/world.hpp"

namespace gst {

using namespace gs;

// Int plus one level of references: sort Int = int; sort RInt = ref Int.
inline SortTable int_ref_table() {
  SortTable t;
  Sort i = t.add("Int", TypeExpr::integer());
  t.add("RInt", TypeExpr::ref(i));
  t.validate();
  return t;
}

// Single ground sort, no references.
inline SortTable int_only_table() {
  SortTable t;
  t.add("Int", TypeExpr::integer());
  t.validate();
  return t;
}

inline World world(std::initializer_list<std::pair<std::uint32_t, Sort>> cells) {
  World w;
  for (auto& [i, s] : cells) w.cells[Loc{i}] = s;
  return w;
}

inline Heaplet heap(const World& over,
                    std::initializer_list<std::pair<std::uint32_t, Value>> cells) {
  Heaplet h{over, {}};
  for (auto& [i, v] : cells) h.cells[Loc{i}] = v;
  return h;
}

inline Value iv(long long n) { return Value::ground(n); }
inline Value rv(std::uint32_t l, Sort s) { return Value::ref(Loc{l}, s); }

}  // namespace gst
