#include <catch2/catch_amalgamated.hpp>

#include "groundstore/hiding.hpp"
#include "helpers.hpp"

using namespace gs;
using namespace gst;

namespace {

Init append_cells(const World& w, const World& fresh,
                  std::initializer_list<std::pair<std::uint32_t, Value>> fill) {
  OplusResult o = oplus(w, fresh);
  Heaplet f{o.world, {}};
  for (auto& [i, v] : fill) f.cells[o.inj2.apply(Loc{i})] = v;
  return Init{o.inj1, f};
}

}  // namespace

TEST_CASE("hide composes by composition of injections") {
  SortTable t = int_ref_table();
  Sort I = *t.find("Int");
  World w = world({{0, I}});
  Hidden h{identity_injection(w), std::nullopt, heap(w, {{0, iv(5)}})};

  CHECK(hidden_equal(hide(identity_injection(w), h), h));

  Injection up = Injection{World{}, w, {}};
  Hidden hidden_all = hide(up, h);
  CHECK(hidden_all.rho.source.empty());
  CHECK(hidden_all.rho.target == w);
  CHECK(heaplet_equal(hidden_all.heap, h.heap));

  // hide(rho, hide(rho', h)) = hide(rho' ∘ rho, h)
  World w2 = world({{0, I}, {1, I}});
  Hidden g{inclusion(w, w2), std::nullopt, heap(w2, {{0, iv(1)}, {1, iv(2)}})};
  Injection e{World{}, w, {}};
  CHECK(hidden_equal(hide(e, g), hide(inj_compose(identity_injection(w), e), g)));
}

TEST_CASE("pcov_apply: identity and the hand-applied promotion example") {
  SortTable t = int_ref_table();
  Sort I = *t.find("Int");
  World w = world({{0, I}});

  Hidden h{identity_injection(w), std::nullopt, heap(w, {{0, iv(5)}})};
  Hidden same = pcov_apply(identity_init(w), h);
  CHECK(hidden_equal(canonicalize(same, t), canonicalize(h, t)));

  // e allocates {#1:Int |-> 6} publicly; the result's canonical form is the
  // two-cell public heaplet [#0|->5, #1|->6].
  Init e = append_cells(w, world({{0, I}}), {{0, iv(6)}});
  Hidden r = pcov_apply(e, h);
  CHECK(r.rho.source == e.rho.target);
  Hidden canon = canonicalize(r, t);
  World w2 = world({{0, I}, {1, I}});
  CHECK(hidden_equal(canon, Hidden{identity_injection(w2), std::nullopt,
                                   heap(w2, {{0, iv(5)}, {1, iv(6)}})}));
}

TEST_CASE("pcov_apply is functorial up to canonical forms") {
  SortTable t = int_ref_table();
  Bounds b;
  b.int_min = 0;
  b.int_max = 1;
  for (auto& w : enum_worlds(t, 1)) {
    for (auto& eta : enum_heaplets(w, t, b)) {
      Hidden h{identity_injection(w), std::nullopt, eta};
      for (auto& e1 : enum_inits(w, t, b, 1, true))
        for (auto& e2 : enum_inits(e1.rho.target, t, b, 1, true)) {
          Hidden two = pcov_apply(e2, pcov_apply(e1, h));
          Hidden one = pcov_apply(init_compose(e2, e1), h);
          CHECK(hidden_equal(canonicalize(two, t), canonicalize(one, t)));
        }
    }
  }
}

TEST_CASE("canonicalize: unreachable hidden cells are garbage collected") {
  SortTable t = int_ref_table();
  Sort I = *t.find("Int"), R = *t.find("RInt");

  // public Int cell = 5; hidden RInt cell absent from dom; hidden Int = 6.
  World pub = world({{0, I}});
  World carrier = world({{0, I}, {1, R}, {2, I}});
  Hidden h{inclusion(pub, carrier), std::nullopt, heap(carrier, {{0, iv(5)}, {2, iv(6)}})};
  Hidden c = canonicalize(h, t);
  CHECK(hidden_equal(c, Hidden{identity_injection(pub), std::nullopt, heap(pub, {{0, iv(5)}})}));

  // Variant with the hidden RInt cell filled: an arrow from a hidden cell
  // into the public part does not make the hidden cell reachable.
  Hidden h2{inclusion(pub, carrier), std::nullopt,
            heap(carrier, {{0, iv(5)}, {1, rv(0, I)}, {2, iv(6)}})};
  CHECK(hidden_equal(canonicalize(h2, t), c));
}

TEST_CASE("canonicalize: reachable private content distinguishes classes") {
  SortTable t = int_ref_table();
  Sort I = *t.find("Int"), R = *t.find("RInt");
  World pub = world({{0, R}});
  World carrier = world({{0, R}, {1, I}});
  Hidden five{inclusion(pub, carrier), std::nullopt, heap(carrier, {{0, rv(1, I)}, {1, iv(5)}})};
  Hidden three{inclusion(pub, carrier), std::nullopt, heap(carrier, {{0, rv(1, I)}, {1, iv(3)}})};
  CHECK(!hidden_equal(canonicalize(five, t), canonicalize(three, t)));

  Bounds b;
  CHECK(!equiv_oracle(five, three, t, b));
  CHECK(equiv_oracle(five, five, t, b));
}

TEST_CASE("canonicalize is idempotent and preserves the public side") {
  SortTable t = int_ref_table();
  Bounds b;
  b.int_min = 0;
  b.int_max = 1;
  for (auto& w : enum_worlds(t, 2)) {
    if (w.size() > 1) continue;
    for (auto& h : enum_canonical_hiddens(w, t, b, 1)) {
      CHECK(hidden_equal(canonicalize(h, t), h));
    }
    for (auto& seq : enum_sort_seqs(t, 1)) {
      World fresh;
      for (std::size_t i = 0; i < seq.size(); ++i)
        fresh.cells[Loc{static_cast<std::uint32_t>(i)}] = seq[i];
      OplusResult o = oplus(w, fresh);
      for (auto& eta : enum_heaplets(o.world, t, b)) {
        Hidden h{o.inj1, std::nullopt, eta};
        Hidden c = canonicalize(h, t);
        CHECK(c.rho.source == w);
        CHECK(hidden_equal(canonicalize(c, t), c));
      }
    }
  }
}

TEST_CASE("oracle accepts forward steps") {
  SortTable t = int_ref_table();
  Sort I = *t.find("Int");
  Bounds b;
  World w = world({{0, I}});
  Hidden h{identity_injection(w), std::nullopt, heap(w, {{0, iv(5)}})};
  for (auto& e : enum_inits(w, t, b, 1, true)) {
    Hidden stepped = forward_step(h, e);
    CHECK(equiv_oracle(h, stepped, t, b));
    CHECK(hidden_equal(canonicalize(stepped, t), canonicalize(h, t)));
  }
}

TEST_CASE("diamond property: promoted initializations close every span") {
  SortTable t = int_ref_table();
  Bounds b;
  b.int_min = 0;
  b.int_max = 1;
  auto worlds = enum_worlds(t, 2);
  for (auto& w : worlds) {
    if (w.size() > 2) continue;
    for (auto& eta : enum_heaplets(w, t, b)) {
      Hidden h{identity_injection(w), std::nullopt, eta};
      for (auto& e1 : enum_inits(w, t, b, 1, true)) {
        if (e1.rho.target.size() == w.size()) continue;  // one-cell steps only
        for (auto& e2 : enum_inits(w, t, b, 1, true)) {
          if (e2.rho.target.size() == w.size()) continue;
          Hidden s1 = forward_step(h, e1);
          Hidden s2 = forward_step(h, e2);
          LocalOplusResult lo = local_oplus(e1.rho, e2.rho);
          Init p1 = promote(e1.rho, e2);
          Init p2{lo.b21, transport(e1.fill, lo.b12)};
          Hidden u1 = forward_step(s1, p1);
          Hidden u2 = forward_step(s2, p2);
          CHECK(hidden_equal(u1, u2));
        }
      }
    }
  }
}

TEST_CASE("oracle and canonical forms agree on a small universe") {
  SortTable t = int_ref_table();
  Bounds b;
  b.int_min = 0;
  b.int_max = 1;
  b.max_extra_cells = 2;
  for (auto& w : enum_worlds(t, 1)) {
    // all hiddens over carriers with at most one extra cell
    std::vector<Hidden> all;
    for (auto& seq : enum_sort_seqs(t, 1)) {
      World fresh;
      for (std::size_t i = 0; i < seq.size(); ++i)
        fresh.cells[Loc{static_cast<std::uint32_t>(i)}] = seq[i];
      OplusResult o = oplus(w, fresh);
      for (auto& eta : enum_heaplets(o.world, t, b))
        all.push_back(Hidden{o.inj1, std::nullopt, eta});
    }
    for (auto& h1 : all)
      for (auto& h2 : all) {
        bool canon_eq = hidden_equal(canonicalize(h1, t), canonicalize(h2, t));
        bool oracle_eq = equiv_oracle(h1, h2, t, b);
        CHECK(canon_eq == oracle_eq);
      }
  }
}

TEST_CASE("hide and pcov_apply are well-defined on classes (sampled)") {
  SortTable t = int_ref_table();
  Sort I = *t.find("Int"), R = *t.find("RInt");
  Bounds b;
  b.int_min = 0;
  b.int_max = 1;
  World w = world({{0, I}, {1, R}});
  for (auto& eta : enum_heaplets(w, t, b)) {
    Hidden h1{identity_injection(w), std::nullopt, eta};
    for (auto& e : enum_inits(w, t, b, 1, true)) {
      Hidden h2 = forward_step(h1, e);  // h1 ~ h2 by construction
      Injection shrink{world({{0, I}}), w, {{Loc{0}, Loc{0}}}};
      CHECK(hidden_equal(canonicalize(hide(shrink, h1), t),
                         canonicalize(hide(shrink, h2), t)));
      Init grow = append_cells(w, world({{0, I}}), {{0, iv(1)}});
      CHECK(hidden_equal(canonicalize(pcov_apply(grow, h1), t),
                         canonicalize(pcov_apply(grow, h2), t)));
    }
  }
}
