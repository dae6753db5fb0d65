#pragma once

// The type grammar 0 | 1 | A*B | A+B | A->B | ref S | int, and the sort
// table assigning a first-order content type CType(S) to every sort.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groundstore/errors.hpp"
#include "groundstore/world.hpp"

namespace gs {

class TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

class TypeExpr {
 public:
  struct Zero {};
  struct One {};
  struct Int {};
  struct Prod { TypePtr fst, snd; };
  struct Sum { TypePtr lhs, rhs; };
  struct Arrow { TypePtr dom, cod; };
  struct Ref { Sort sort; };

  std::variant<Zero, One, Int, Prod, Sum, Arrow, Ref> node;

  TypeExpr() : node(One{}) {}
  explicit TypeExpr(std::variant<Zero, One, Int, Prod, Sum, Arrow, Ref> n)
      : node(std::move(n)) {}

  static TypeExpr zero() { return TypeExpr{Zero{}}; }
  static TypeExpr one() { return TypeExpr{One{}}; }
  static TypeExpr integer() { return TypeExpr{Int{}}; }
  static TypeExpr prod(TypeExpr a, TypeExpr b) {
    return TypeExpr{Prod{std::make_shared<TypeExpr>(std::move(a)),
                         std::make_shared<TypeExpr>(std::move(b))}};
  }
  static TypeExpr sum(TypeExpr a, TypeExpr b) {
    return TypeExpr{Sum{std::make_shared<TypeExpr>(std::move(a)),
                        std::make_shared<TypeExpr>(std::move(b))}};
  }
  static TypeExpr arrow(TypeExpr a, TypeExpr b) {
    return TypeExpr{Arrow{std::make_shared<TypeExpr>(std::move(a)),
                          std::make_shared<TypeExpr>(std::move(b))}};
  }
  static TypeExpr ref(Sort s) { return TypeExpr{Ref{s}}; }

  bool is_zero() const { return std::holds_alternative<Zero>(node); }
  bool is_one() const { return std::holds_alternative<One>(node); }
  bool is_int() const { return std::holds_alternative<Int>(node); }
  const Prod* as_prod() const { return std::get_if<Prod>(&node); }
  const Sum* as_sum() const { return std::get_if<Sum>(&node); }
  const Arrow* as_arrow() const { return std::get_if<Arrow>(&node); }
  const Ref* as_ref() const { return std::get_if<Ref>(&node); }
};

inline bool type_equal(const TypeExpr& a, const TypeExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto p = a.as_prod())
    return type_equal(*p->fst, *b.as_prod()->fst) && type_equal(*p->snd, *b.as_prod()->snd);
  if (auto s = a.as_sum())
    return type_equal(*s->lhs, *b.as_sum()->lhs) && type_equal(*s->rhs, *b.as_sum()->rhs);
  if (auto f = a.as_arrow())
    return type_equal(*f->dom, *b.as_arrow()->dom) && type_equal(*f->cod, *b.as_arrow()->cod);
  if (auto r = a.as_ref()) return r->sort == b.as_ref()->sort;
  return true;  // Zero/One/Int
}

inline bool first_order(const TypeExpr& t) {
  if (t.as_arrow()) return false;
  if (auto p = t.as_prod()) return first_order(*p->fst) && first_order(*p->snd);
  if (auto s = t.as_sum()) return first_order(*s->lhs) && first_order(*s->rhs);
  return true;
}

// Sort table: name and content type per sort. Recursive reference sorts are
// permitted (DLList-style); every CType must be first order.
class SortTable {
 public:
  struct Entry {
    std::string name;
    TypeExpr ctype;
  };

  Sort add(const std::string& name, TypeExpr ctype) {
    for (auto& e : entries_)
      if (e.name == name) throw TypeError("duplicate sort '" + name + "'");
    entries_.push_back({name, std::move(ctype)});
    return Sort{static_cast<std::uint32_t>(entries_.size() - 1)};
  }

  std::size_t size() const { return entries_.size(); }

  const TypeExpr& ctype(Sort s) const {
    if (s.id >= entries_.size()) throw TypeError("unknown sort id");
    return entries_[s.id].ctype;
  }

  void set_ctype(Sort s, TypeExpr t) {
    if (s.id >= entries_.size()) throw TypeError("unknown sort id");
    entries_[s.id].ctype = std::move(t);
  }

  const std::string& name(Sort s) const {
    if (s.id >= entries_.size()) throw TypeError("unknown sort id");
    return entries_[s.id].name;
  }

  std::optional<Sort> find(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].name == name) return Sort{static_cast<std::uint32_t>(i)};
    return std::nullopt;
  }

  std::vector<Sort> sorts() const {
    std::vector<Sort> r;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      r.push_back(Sort{static_cast<std::uint32_t>(i)});
    return r;
  }

  // Every CType must be first order and mention only registered sorts.
  void validate() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!first_order(entries_[i].ctype))
        throw TypeError("CType(" + entries_[i].name + ") is not first order");
      check_sorts(entries_[i].ctype);
    }
  }

 private:
  void check_sorts(const TypeExpr& t) const {
    if (auto r = t.as_ref()) {
      if (r->sort.id >= entries_.size())
        throw TypeError("CType mentions unregistered sort");
      return;
    }
    if (auto p = t.as_prod()) { check_sorts(*p->fst); check_sorts(*p->snd); }
    if (auto s = t.as_sum()) { check_sorts(*s->lhs); check_sorts(*s->rhs); }
    if (auto f = t.as_arrow()) { check_sorts(*f->dom); check_sorts(*f->cod); }
  }

  std::vector<Entry> entries_;
};

// Finite search bounds for the checker. In checking mode integer values
// range over [int_min, int_max]; quantifiers and ~-searches may allocate at
// most max_extra_cells fresh cells per step; entailment enumerates public
// worlds of at most max_world cells.
struct Bounds {
  int max_extra_cells = 2;
  long long int_min = 0;
  long long int_max = 7;
  int max_world = 3;

  void validate() const {
    if (max_extra_cells < 0 || max_world < 0 || int_min > int_max)
      throw Error("invalid bounds");
  }
};

inline std::string type_to_string(const TypeExpr& t, const SortTable& table) {
  // Parenthesizes children conservatively; products/sums/arrows associate to
  // the right in the parser.
  struct P {
    const SortTable& tb;
    std::string go(const TypeExpr& t, int prec) const {
      if (t.is_zero()) return "0";
      if (t.is_one()) return "1";
      if (t.is_int()) return "int";
      if (auto r = t.as_ref()) return "ref " + tb.name(r->sort);
      std::string s;
      int p;
      if (auto pr = t.as_prod()) {
        p = 2;
        s = go(*pr->fst, p + 1) + " * " + go(*pr->snd, p);
      } else if (auto su = t.as_sum()) {
        p = 1;
        s = go(*su->lhs, p + 1) + " + " + go(*su->rhs, p);
      } else {
        auto ar = t.as_arrow();
        p = 0;
        s = go(*ar->dom, p + 1) + " -> " + go(*ar->cod, p);
      }
      if (p < prec) return "(" + s + ")";
      return s;
    }
  } pr{table};
  return pr.go(t, 0);
}

inline std::string world_to_string(const World& w, const SortTable& table) {
  std::string s = "{";
  bool first = true;
  for (auto& [l, sort] : w.cells) {
    if (!first) s += ", ";
    first = false;
    s += "#" + std::to_string(l.index) + ":" + table.name(sort);
  }
  return s + "}";
}

}  // namespace gs
