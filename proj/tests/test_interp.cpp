#include <catch2/catch_amalgamated.hpp>

#include "groundstore/enumerate.hpp"
#include "groundstore/interp.hpp"
#include "groundstore/parse.hpp"
#include "helpers.hpp"

using namespace gs;
using namespace gst;

namespace {

SortTable std_table() {
  SortTable t;
  Sort i = t.add("Int", TypeExpr::integer());
  t.add("RInt", TypeExpr::ref(i));
  t.validate();
  return t;
}

Hidden run(const SortTable& t, const std::string& src) {
  TermPtr p = parse_program(src, t);
  return run_closed(t, *p);
}

}  // namespace

TEST_CASE("eval_value basics") {
  SortTable t = std_table();
  Sort I = *t.find("Int");
  Env env{world({{0, I}}), {{"x", iv(5)}, {"l", rv(0, I)}}};

  TermPtr var = parse_program("ret x", t);
  CHECK(value_equal(eval_value(t, *var->kids[0], env), iv(5)));

  TermPtr pr = parse_program("ret (x, l)", t);
  CHECK(value_equal(eval_value(t, *pr->kids[0], env), Value::pair(iv(5), rv(0, I))));

  // fun x -> ret x behaves as the identity at every future world
  Ctx ctx;
  TermPtr fn = parse_program("ret (fun (x : int) -> ret x)", t);
  synth_comp(t, ctx, *fn);
  Value f = eval_value(t, *fn->kids[0], Env{World{}, {}});
  World w2 = world({{0, I}});
  MonadVal m = apply_fun(f, Injection{World{}, w2, {}}, iv(3));
  Hidden r = m.run(identity_injection(w2), heap(w2, {{0, iv(0)}}));
  CHECK(value_equal(*r.val, iv(3)));
}

TEST_CASE("run_closed on the basic examples") {
  SortTable t = std_table();

  Hidden unit = run(t, "ret ()");
  CHECK(unit.rho.source.empty());
  CHECK(unit.rho.target.empty());
  CHECK(value_equal(*unit.val, Value::unit()));
  CHECK(unit.heap.cells.empty());

  // an unused cell is garbage collected
  CHECK(hidden_equal(run(t, "letref x := 5 in ret ()"), unit));

  // allocation order is irrelevant
  CHECK(hidden_equal(run(t, "letref x := 5, y := 7 in ret ()"), unit));
  CHECK(hidden_equal(run(t, "letref x := 5 in letref y := 7 in ret ()"),
                     run(t, "letref y := 7 in letref x := 5 in ret ()")));
}

TEST_CASE("letref then read: the raw result keeps the cell, the canonical form drops it") {
  SortTable t = std_table();
  TermPtr p = parse_program("letref x := 5 in !x", t);
  Ctx ctx;
  synth_comp(t, ctx, *p);
  MonadVal m = eval_comp(t, *p, Env{World{}, {}});
  Hidden raw = m.run(identity_injection(World{}), empty_heaplet(World{}));
  CHECK(raw.rho.target.size() == 1);  // one hidden cell
  CHECK(value_equal(*raw.val, iv(5)));
  CHECK(heaplet_equal(raw.heap, heap(raw.rho.target, {{0, iv(5)}})));

  Hidden canon = run(t, "letref x := 5 in !x");
  CHECK(canon.rho.target.empty());  // the integer result reaches no cell
  CHECK(value_equal(*canon.val, iv(5)));
}

TEST_CASE("returned references keep their cells alive") {
  SortTable t = std_table();
  Sort I = *t.find("Int");
  Hidden r = run(t, "letref x := 5 in ret x");
  REQUIRE(r.rho.target.size() == 1);
  CHECK(value_equal(*r.val, rv(0, I)));
  CHECK(value_equal(r.heap.at(Loc{0}), iv(5)));
}

TEST_CASE("doubly linked list cells allocate mutually") {
  SortTable t = Parser::parse_sort_decls(
      "sort DLList = int * (ref DLList + 1) * (ref DLList + 1);");
  Sort D = *t.find("DLList");
  Hidden r = run(t,
      "letref l1 := (0, inr (), inl l2), l2 := (1, inl l1, inr ()) in ret l1");
  REQUIRE(r.rho.target.size() == 2);
  CHECK(value_equal(*r.val, rv(0, D)));
  // l1 = (0, inr (), inl l2); l2 = (1, inl l1, inr ())
  CHECK(value_equal(r.heap.at(Loc{0}),
                    Value::pair(iv(0), Value::pair(Value::inr(Value::unit()),
                                                   Value::inl(rv(1, D))))));
  CHECK(value_equal(r.heap.at(Loc{1}),
                    Value::pair(iv(1), Value::pair(Value::inl(rv(0, D)),
                                                   Value::inr(Value::unit())))));
}

TEST_CASE("get/put through the surface language") {
  SortTable t = std_table();
  CHECK(value_equal(*run(t, "letref x := 3 in let u = x := 5 in !x").val, iv(5)));
  CHECK(value_equal(*run(t, "letref x := 3 in let u = x := 5 in let v = x := 7 in !x").val,
                    iv(7)));
  CHECK(value_equal(*run(t, "letref x := 3, y := 4 in !y").val, iv(4)));
}

TEST_CASE("higher-order results are rejected by run_closed") {
  SortTable t = std_table();
  TermPtr p = parse_program("ret (fun (x : int) -> ret x)", t);
  CHECK_THROWS_AS(run_closed(t, *p), HigherOrderError);
}

TEST_CASE("naturality: evaluating after a world extension matches pcov (sampled)") {
  SortTable t = std_table();
  Bounds b;
  b.int_min = 0;
  b.int_max = 1;
  std::vector<std::string> programs = {
      "ret 1",
      "letref x := 1 in ret x",
      "letref x := 0 in !x",
      "letref x := 0, y := x in ret y",
  };
  Ctx ctx;
  for (auto& src : programs) {
    TermPtr p = parse_program(src, t);
    synth_comp(t, ctx, *p);
    MonadVal m = eval_comp(t, *p, Env{World{}, {}});
    for (auto& e : enum_inits(World{}, t, b, 1, false)) {
      Hidden moved = pcov_apply(e, m.run(identity_injection(World{}),
                                         empty_heaplet(World{})));
      Hidden direct = m.run(e.rho, hhat_apply(e, empty_heaplet(World{})));
      CHECK(hidden_equal(canonicalize(moved, t), canonicalize(direct, t)));
    }
  }
}

TEST_CASE("evaluation is deterministic") {
  SortTable t = std_table();
  Hidden a = run(t, "letref x := 5, y := 7 in ret (x, y)");
  Hidden b = run(t, "letref x := 5, y := 7 in ret (x, y)");
  CHECK(hidden_equal(a, b));
}
