#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "scott/perm.hpp"

using namespace scott;

namespace {

PartialBijection pb(std::vector<std::pair<int, int>> ps) {
  return PartialBijection(std::move(ps));
}

GroupPresentation cyclic3() {
  return GroupPresentation(3, {parse_cycles("(0 1 2)", 3)});
}

}  // namespace

TEST_CASE("finset text forms") {
  CHECK_EQ(format_finset(FinSet::of({0, 2})), "0,2");
  CHECK_EQ(format_finset(FinSet{}), "-");
  CHECK_EQ(parse_finset("0,2"), FinSet::of({0, 2}));
  CHECK_EQ(parse_finset("-"), FinSet{});
  CHECK_EQ(FinSet::segment(3), FinSet::of({0, 1, 2}));
}

TEST_CASE("permutation text forms") {
  Perm t = parse_cycles("(0 1)", 2);
  CHECK_EQ(t(0), 1);
  CHECK_EQ(format_cycles(t), "(0 1)");
  CHECK_EQ(format_cycles(Perm::identity(3)), "()");
  CHECK_EQ(format_cycles(parse_cycles("(0 1)(2 3)", 4)), "(0 1)(2 3)");
  CHECK_EQ(parse_cycles("()", 2), Perm::identity(2));
  CHECK_THROWS(parse_cycles("(0 9)", 2));
  CHECK_THROWS(Perm({0, 0}));
}

TEST_CASE("partial bijection text forms and invariants") {
  CHECK_EQ(format_pb(pb({{0, 1}, {2, 3}})), "0>1,2>3");
  CHECK_EQ(format_pb(PartialBijection{}), "-");
  CHECK_EQ(parse_pb("0>1,2>3"), pb({{0, 1}, {2, 3}}));
  CHECK_EQ(parse_pb("-"), PartialBijection{});
  CHECK_THROWS(pb({{0, 1}, {0, 2}}));  // not a function
  CHECK_THROWS(pb({{0, 1}, {2, 1}}));  // not injective
  PartialBijection s = pb({{2, 3}, {0, 1}});
  CHECK_EQ(s.dom(), FinSet::of({0, 2}));
  CHECK_EQ(s.rng(), FinSet::of({1, 3}));
}

TEST_CASE("compose_right") {
  PartialBijection s = pb({{0, 1}});
  CHECK_EQ(compose_right(s, Perm::identity(2)), s);
  CHECK_EQ(compose_right(s, parse_cycles("(0 1)", 2)), pb({{1, 1}}));
  CHECK_EQ(compose_right(PartialBijection{}, parse_cycles("(0 1)", 2)),
           PartialBijection{});
}

TEST_CASE("compose_left") {
  PartialBijection s = pb({{0, 1}});
  CHECK_EQ(compose_left(Perm::identity(3), s), s);
  CHECK_EQ(compose_left(parse_cycles("(1 2)", 3), s), pb({{0, 2}}));
  CHECK_EQ(compose_left(parse_cycles("(0 1)", 2), PartialBijection{}),
           PartialBijection{});
}

TEST_CASE("invert") {
  CHECK_EQ(invert(pb({{0, 1}, {2, 3}})), pb({{1, 0}, {3, 2}}));
  CHECK_EQ(invert(PartialBijection{}), PartialBijection{});
  CHECK_EQ(invert(pb({{5, 5}})), pb({{5, 5}}));
  PartialBijection s = pb({{0, 2}, {1, 0}});
  CHECK_EQ(invert(invert(s)), s);
}

TEST_CASE("coset_nonempty") {
  CHECK(coset_nonempty(GroupPresentation::symmetric(2), pb({{0, 1}})));
  CHECK_FALSE(coset_nonempty(GroupPresentation::trivial(2), pb({{0, 1}})));
  CHECK_FALSE(coset_nonempty(cyclic3(), pb({{0, 1}, {1, 0}})));
}

TEST_CASE("coset_elements") {
  CHECK_EQ(coset_elements(GroupPresentation::symmetric(2), {}).size(), 2);
  auto fixed0 = coset_elements(GroupPresentation::symmetric(2), pb({{0, 0}}));
  REQUIRE_EQ(fixed0.size(), 1);
  CHECK(fixed0[0].is_identity());
  CHECK_EQ(coset_elements(GroupPresentation::symmetric(3), pb({{0, 1}})).size(),
           2);
}

TEST_CASE("extensions") {
  auto G2 = GroupPresentation::symmetric(2);
  auto total = extensions(G2, {}, Side::Range, FinSet::segment(2));
  REQUIRE_EQ(total.size(), 2);
  CHECK_EQ(total[0], pb({{0, 0}, {1, 1}}));
  CHECK_EQ(total[1], pb({{0, 1}, {1, 0}}));

  PartialBijection s = pb({{0, 1}});
  auto same = extensions(G2, s, Side::Domain, FinSet::of({0}));
  REQUIRE_EQ(same.size(), 1);
  CHECK_EQ(same[0], s);

  auto triv = extensions(GroupPresentation::trivial(2), {}, Side::Domain,
                         FinSet::of({0}));
  REQUIRE_EQ(triv.size(), 1);
  CHECK_EQ(triv[0], pb({{0, 0}}));

  CHECK_THROWS(extensions(G2, s, Side::Range, FinSet::of({0})));  // 1 not kept
}

TEST_CASE("pointwise_stabilizer") {
  auto G3 = GroupPresentation::symmetric(3);
  CHECK_EQ(pointwise_stabilizer(G3, {}).order(), 6);
  CHECK_EQ(pointwise_stabilizer(G3, FinSet::of({0})).order(), 2);
  CHECK_EQ(pointwise_stabilizer(G3, FinSet::segment(3)).order(), 1);
}

TEST_CASE("left-coset law") {
  for (const GroupPresentation& G :
       {GroupPresentation::symmetric(3), cyclic3()}) {
    for (const PartialBijection& s : sg_enumeration(G)) {
      auto coset = coset_elements(G, s);
      REQUIRE_FALSE(coset.empty());
      const Perm& g = coset.front();
      std::set<Perm> via_law;
      for (const Perm& h :
           coset_elements(G, PartialBijection::identity_on(s.rng())))
        via_law.insert(compose(h, g));
      CHECK_EQ(std::set<Perm>(coset.begin(), coset.end()), via_law);
    }
  }
}

TEST_CASE("extensions are exhaustive") {
  for (const GroupPresentation& G :
       {GroupPresentation::symmetric(3), cyclic3()}) {
    for (const PartialBijection& s : sg_enumeration(G))
      for (Side side : {Side::Domain, Side::Range})
        for (const FinSet& target : rho_enumeration(3)) {
          FinSet base = side == Side::Domain ? s.dom() : s.rng();
          if (!base.subset_of(target)) continue;
          std::set<Perm> whole, pieces;
          for (const Perm& g : coset_elements(G, s)) whole.insert(g);
          for (const PartialBijection& s2 : extensions(G, s, side, target))
            for (const Perm& g : coset_elements(G, s2)) pieces.insert(g);
          CHECK_EQ(whole, pieces);
        }
  }
}

TEST_CASE("transport of extension families") {
  // {f.s' : s' >= s, rng = a} = extensions of f.s with range f[a]
  auto G = GroupPresentation::symmetric(3);
  for (const Perm& f : G.elements())
    for (const PartialBijection& s : sg_enumeration(G))
      for (const FinSet& a : rho_enumeration(3)) {
        if (!s.rng().subset_of(a)) continue;
        FinSet fa;
        for (int k : a.members()) fa.insert(f(k));
        std::set<PartialBijection> moved;
        for (const PartialBijection& s2 : extensions(G, s, Side::Range, a))
          moved.insert(compose_left(f, s2));
        auto direct = extensions(G, compose_left(f, s), Side::Range, fa);
        CHECK_EQ(moved,
                 std::set<PartialBijection>(direct.begin(), direct.end()));
      }
}

TEST_CASE("sg_enumeration is the window-bounded universe, ordered") {
  for (const GroupPresentation& G :
       {GroupPresentation::symmetric(3), cyclic3(),
        GroupPresentation::trivial(2)}) {
    auto sg = sg_enumeration(G);
    std::set<PartialBijection> seen(sg.begin(), sg.end());
    CHECK_EQ(seen.size(), sg.size());  // bijective enumeration
    for (const auto& s : sg) CHECK(coset_nonempty(G, s));
    for (size_t i = 0; i + 1 < sg.size(); ++i)
      CHECK(sg[i].size() <= sg[i + 1].size());  // length-then-lex
    // exhaustive: every restriction of every element appears
    for (const Perm& g : G.elements())
      for (const FinSet& d : rho_enumeration(G.window()))
        CHECK(seen.count(PartialBijection::restriction(g, d)));
  }
}

TEST_CASE("rho_enumeration") {
  auto rho = rho_enumeration(2);
  REQUIRE_EQ(rho.size(), 4);
  CHECK_EQ(rho[0], FinSet{});
  CHECK_EQ(rho[1], FinSet::of({0}));
  CHECK_EQ(rho[2], FinSet::of({1}));
  CHECK_EQ(rho[3], FinSet::of({0, 1}));
}

TEST_CASE("group guards") {
  CHECK_THROWS(GroupPresentation(9, {}));
  CHECK_THROWS(GroupPresentation(3, {Perm::identity(2)}));
}
