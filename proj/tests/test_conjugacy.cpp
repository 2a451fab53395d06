#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "scott/conjugacy.hpp"

using namespace scott;

namespace {

CyclePermutation cp(const std::string& text) {
  return CyclePermutation::parse(text);
}

// finitely-supported CyclePermutation as a window permutation
Perm as_perm(const CyclePermutation& f, int window) {
  std::vector<int> img(window);
  for (int k = 0; k < window; ++k) {
    long long v = f.apply(k);
    REQUIRE(v >= 0);
    REQUIRE(v < window);
    img[k] = (int)v;
  }
  return Perm(std::move(img));
}

CyclePermutation as_cycles(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(p.degree(), false);
  for (int s = 0; s < p.degree(); ++s) {
    if (seen[s] || p(s) == s) continue;
    std::vector<int> cyc;
    for (int k = s; !seen[k]; k = p(k)) {
      seen[k] = true;
      cyc.push_back(k);
    }
    cycles.push_back(std::move(cyc));
  }
  return CyclePermutation(std::move(cycles), {});
}

Perm conj(const Perm& h, const Perm& f) {
  return compose(compose(h, f), h.inverse());
}

}  // namespace

TEST_CASE("cycle types") {
  CHECK_EQ(cycle_type(cp("()")), CycleType{});
  CHECK_EQ(cycle_type(cp("(0 1)")), CycleType{{2}, 0});
  CHECK_EQ(cycle_type(cp("(0 1 2)(3 4)")), CycleType{{2, 3}, 0});
  CHECK_EQ(cycle_type(cp("[0 1](5 6)")), CycleType{{2}, 1});
  CHECK(is_conjugate(cp("(0 1)"), cp("(0 2)")));
  CHECK_FALSE(is_conjugate(cp("(0 1)"), cp("(0 1 2)")));
  CHECK(is_conjugate(cp("(2 7)[4 5]"), cp("(2 7)[4 5]")));
  CHECK_FALSE(is_conjugate(cp("[0 1]"), cp("(0 1)")));
}

TEST_CASE("powers") {
  CyclePermutation f = cp("(0 1 2)");
  CHECK_EQ(f.power(0, 0), 0);
  CHECK_EQ(f.power(2, 0), 2);
  CHECK_EQ(f.power(3, 0), 0);
  CHECK_EQ(f.power(-1, 0), 2);
  CHECK_EQ(f.power(7, 5), 5);  // unmentioned points stay fixed

  CyclePermutation z = cp("[0 1 2 3 4 5]");
  CHECK_EQ(z.power(5, 0), 5);
  CHECK_EQ(z.power(3, 2), 5);
  CHECK_EQ(z.power(-2, 2), 0);
  // walking off the window lands in the fresh region and walks back exactly
  for (long long m : {6ll, 9ll, -1ll, -40ll}) {
    long long far = z.power(m, 0);
    if (m < 0 || m > 5) CHECK(far >= CyclePermutation::kFreshBase);
    CHECK_EQ(z.power(-m, far), 0);
  }
}

TEST_CASE("parse and format round trips") {
  for (const char* s : {"()", "(0 1)", "(0 1)(2 3)", "(0 1 2)", "[0 1]",
                        "(2 7)[4 5][8 9]"}) {
    CyclePermutation f = cp(s);
    CHECK_EQ(f.format(), s);
    CHECK_EQ(CyclePermutation::parse(f.format()).format(), f.format());
  }
  CHECK_EQ(cp("(1 0)").format(), "(0 1)");    // min-first rotation
  CHECK_EQ(cp("(2 3)(0 1)").format(), "(0 1)(2 3)");
  CHECK_EQ(cp("(5)").format(), "()");         // singleton = fixed point
  CHECK_THROWS(CyclePermutation::parse("(0 1"));
  CHECK_THROWS(CyclePermutation::parse("(0 0)"));
  CHECK_THROWS(CyclePermutation::parse("(0 1)(1 2)"));  // not disjoint
  CHECK_THROWS(CyclePermutation::parse("[4]x"));
}

TEST_CASE("coset disjointness on the worked example") {
  DisjointnessResult r = cosets_disjoint(cp("(0 1)"), cp("(0 2)"), FinSet::of({0}));
  CHECK_FALSE(r.disjoint);
  CHECK_EQ(r.conjugator.at(1), 2);
  CHECK_EQ(r.conjugator.at(2), 1);

  DisjointnessResult d =
      cosets_disjoint(cp("(0 1)"), cp("(0 2)"), FinSet::of({0, 1}));
  CHECK(d.disjoint);
  CHECK_EQ(d.k, 0);
  CHECK_EQ(d.m, 1);

  DisjointnessResult e = cosets_disjoint(cp("(0 1)"), cp("(0 1)"), FinSet::of({0, 1}));
  CHECK_FALSE(e.disjoint);
  for (auto& [p, q] : e.conjugator) CHECK_EQ(p, q);

  CHECK_THROWS(cosets_disjoint(cp("(0 1)"), cp("(0 1 2)"), FinSet::of({0})));
}

TEST_CASE("disjointness with infinite cycles") {
  // h must fix 0, but conjugation moves the infinite orbit through 0 away
  DisjointnessResult d = cosets_disjoint(cp("[0 1]"), cp("[2 3]"), FinSet::of({0}));
  CHECK(d.disjoint);
  // with no constraint the cosets coincide with the whole group
  DisjointnessResult e = cosets_disjoint(cp("[0 1]"), cp("[2 3]"), FinSet{});
  CHECK_FALSE(e.disjoint);
  DisjointnessResult s = cosets_disjoint(cp("[0 1]"), cp("[0 1]"), FinSet::of({0, 1}));
  CHECK_FALSE(s.disjoint);
}

TEST_CASE("criterion agrees with brute force on Sym(4) pairs") {
  const int kW = 4, kBig = 6;
  GroupPresentation s4 = GroupPresentation::symmetric(kW);
  GroupPresentation s6 = GroupPresentation::symmetric(kBig);
  for (const Perm& pf : s4.elements())
    for (const Perm& pg : s4.elements()) {
      CyclePermutation f = as_cycles(pf), g = as_cycles(pg);
      if (!is_conjugate(f, g)) continue;
      Perm pf6 = as_perm(f, kBig), pg6 = as_perm(g, kBig);
      for (const FinSet& c : rho_enumeration(3)) {
        bool found = false;
        for (const Perm& h : s6.elements()) {
          bool fixes = true;
          for (int k : c.members()) fixes = fixes && h(k) == k;
          if (fixes && conj(h, pf6) == pg6) {
            found = true;
            break;
          }
        }
        DisjointnessResult r = cosets_disjoint(f, g, c);
        CHECK_EQ(r.disjoint, !found);
        if (r.disjoint) {
          // the returned witness satisfies the displayed criterion
          CHECK(c.contains(r.k));
          long long fm = f.power(r.m, r.k), gm = g.power(r.m, r.k);
          bool lands_in_c = (fm < 64 && c.contains((int)fm)) ||
                            (gm < 64 && c.contains((int)gm));
          CHECK(lands_in_c);
          CHECK_NE(fm, gm);
        } else {
          // the returned conjugator lies in V_c and carries f to g
          std::vector<int> img(kBig);
          for (int k = 0; k < kBig; ++k) {
            auto it = r.conjugator.find(k);
            img[k] = it == r.conjugator.end() ? k : (int)it->second;
          }
          Perm h(std::move(img));
          for (int k : c.members()) CHECK_EQ(h(k), k);
          CHECK_EQ(conj(h, pf6), pg6);
        }
      }
    }
}

TEST_CASE("separating open set on the worked example") {
  SeparatingOpenSet a =
      separating_open_set(cp("(0 1)"), cp("(0 2)"), FinSet::of({0, 1}));
  CHECK_EQ(a.k, 0);
  CHECK_EQ(a.l, 1);
  CHECK_EQ(a.m, 1);
  CHECK(a.open_contains_f);
  // m=1 degenerates to {p : p(k) = l}
  CHECK(a.contains(cp("(0 1)")));
  CHECK(a.contains(cp("(0 1 2)")));
  CHECK_FALSE(a.contains(cp("(0 2)")));
  CHECK_FALSE(a.contains(cp("()")));

  // every V_c f member inside, every V_c g member outside
  GroupPresentation s4 = GroupPresentation::symmetric(4);
  FinSet c = FinSet::of({0, 1});
  for (const Perm& v : coset_elements(s4, PartialBijection::identity_on(c))) {
    CHECK(a.contains(as_cycles(conj(v, as_perm(cp("(0 1)"), 4)))));
    CHECK_FALSE(a.contains(as_cycles(conj(v, as_perm(cp("(0 2)"), 4)))));
  }

  // symmetric case: the witness power lands in c on the g side
  SeparatingOpenSet b =
      separating_open_set(cp("(0 2)"), cp("(0 1)"), FinSet::of({0, 1}));
  CHECK_FALSE(b.open_contains_f);
  for (const Perm& v : coset_elements(s4, PartialBijection::identity_on(c))) {
    CHECK(b.contains(as_cycles(conj(v, as_perm(cp("(0 1)"), 4)))));
    CHECK_FALSE(b.contains(as_cycles(conj(v, as_perm(cp("(0 2)"), 4)))));
  }

  CHECK_THROWS(separating_open_set(cp("(0 1)"), cp("(0 2)"), FinSet::of({0})));
}

TEST_CASE("longer chains") {
  // f^2(0)=2 inside c while g^2(0)=4; the chain family has one free middle
  CyclePermutation f = cp("(0 1 2)"), g = cp("(0 3 4)");
  FinSet c = FinSet::of({0, 2});
  DisjointnessResult r = cosets_disjoint(f, g, c);
  REQUIRE(r.disjoint);
  SeparatingOpenSet s = separating_open_set(f, g, c);
  GroupPresentation s5 = GroupPresentation::symmetric(5);
  for (const Perm& v : coset_elements(s5, PartialBijection::identity_on(c))) {
    CyclePermutation vf = as_cycles(conj(v, as_perm(f, 5)));
    CyclePermutation vg = as_cycles(conj(v, as_perm(g, 5)));
    CHECK_EQ(s.contains(vf), s.open_contains_f);
    CHECK_EQ(s.contains(vg), !s.open_contains_f);
  }
}

TEST_CASE("rank-one separation report") {
  SeparationReport r = rank_one_separation_check({{cp("(0 1)"), cp("(0 2)")}}, 3);
  CHECK(r.pairs_examined > 0);
  CHECK(r.disjoint_cases > 0);
  CHECK_EQ(r.separated, r.disjoint_cases);
  for (const std::string& line : r.lines)
    CHECK_EQ(line.find("FAILED"), std::string::npos);

  CHECK_EQ(rank_one_separation_check({}, 3).pairs_examined, 0);

  SeparationReport same = rank_one_separation_check({{cp("(0 1)"), cp("(0 1)")}}, 2);
  CHECK_EQ(same.disjoint_cases, 0);
  CHECK_EQ(same.separated, 0);
}
