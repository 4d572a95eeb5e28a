#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ttfl/levels.hpp"

using namespace ttfl;

namespace {

const StructureId kAll[] = {StructureId::Nat, StructureId::OmegaPlusOne,
                            StructureId::OmegaPlusOmega};

// Every level of the structure with rank at most (1, 10).
std::vector<Level> enumerate(StructureId s) {
  std::vector<Level> out;
  for (uint32_t b = 0; b <= 1; b++)
    for (uint32_t o = 0; o <= 10; o++)
      if (levelValid(s, Level{b, o})) out.push_back(Level{b, o});
  return out;
}

// Independent order oracle: lexicographic comparison on rank pairs.
bool lexLess(Level i, Level j) {
  auto a = rank(i), b = rank(j);
  return a.first != b.first ? a.first < b.first : a.second < b.second;
}

}  // namespace

TEST_CASE("membership per structure") {
  CHECK(levelValid(StructureId::Nat, finLevel(0)));
  CHECK(levelValid(StructureId::Nat, finLevel(1000)));
  CHECK(!levelValid(StructureId::Nat, omegaLevel()));
  CHECK(levelValid(StructureId::OmegaPlusOne, omegaLevel()));
  CHECK(!levelValid(StructureId::OmegaPlusOne, omegaLevel(1)));
  CHECK(levelValid(StructureId::OmegaPlusOmega, omegaLevel(7)));
  CHECK(!levelValid(StructureId::OmegaPlusOmega, Level{2, 0}));
}

TEST_CASE("order is a strict total order matching the rank embedding") {
  for (StructureId s : kAll) {
    auto ls = enumerate(s);
    for (Level i : ls) {
      CHECK(!lt(i, i));  // irreflexive
      for (Level j : ls) {
        CHECK(lt(i, j) == lexLess(i, j));  // order embedding
        // trichotomy
        int ways = (lt(i, j) ? 1 : 0) + (lt(j, i) ? 1 : 0) + (i == j ? 1 : 0);
        CHECK(ways == 1);
        for (Level k : ls)
          if (lt(i, j) && lt(j, k)) CHECK(lt(i, k));  // transitive
      }
    }
  }
}

TEST_CASE("sup is the least upper bound") {
  for (StructureId s : kAll) {
    auto ls = enumerate(s);
    for (Level i : ls)
      for (Level j : ls) {
        Level u = sup(i, j);
        CHECK(levelValid(s, u));
        CHECK(!lt(u, i));
        CHECK(!lt(u, j));
        for (Level k : ls)
          if (!lt(k, i) && !lt(k, j)) CHECK(!lt(k, u));
        CHECK(u == sup(j, i));
      }
  }
}

TEST_CASE("pinned order facts") {
  // finite vs finite
  CHECK(lt(finLevel(2), finLevel(3)));
  CHECK(!lt(finLevel(3), finLevel(3)));
  // every finite level sits below omega
  for (uint32_t n = 0; n <= 10; n++) CHECK(lt(finLevel(n), omegaLevel()));
  // omega block is ordered by offset
  CHECK(lt(omegaLevel(3), omegaLevel(5)));
  CHECK(sup(finLevel(9), omegaLevel(0)) == omegaLevel(0));
  CHECK(sup(omegaLevel(2), finLevel(100)) == omegaLevel(2));
  CHECK(sup(finLevel(4), finLevel(7)) == finLevel(7));
}

TEST_CASE("well-foundedness: descending chains cannot outlast the enumeration") {
  // Starting anywhere within rank (1, 10), strictly descending steps that
  // always jump to an enumerated smaller level run out before visiting more
  // levels than exist.
  for (StructureId s : kAll) {
    auto ls = enumerate(s);
    int bound = (int)ls.size();
    for (Level start : ls) {
      Level cur = start;
      int steps = 0;
      while (steps < bound + 1) {
        Level next = cur;
        bool found = false;
        for (Level c : ls)
          if (lt(c, cur) && (!found || lt(next, c))) {
            next = c;
            found = true;
          }
        if (!found) break;
        cur = next;
        steps++;
      }
      CHECK(steps < bound);
    }
  }
}

TEST_CASE("bootstrap provides the two base levels with evidence") {
  Bootstrap b = bootstrap();
  CHECK(b.l0 == finLevel(0));
  CHECK(b.l1 == finLevel(1));
  CHECK(lt(b.l0, b.l1));
  for (StructureId s : kAll) {
    CHECK(levelValid(s, b.l0));
    CHECK(levelValid(s, b.l1));
    CHECK(ltWitness(s, b.l0, b.l1).has_value());
  }
}

TEST_CASE("witnesses exist exactly for in-structure ordered pairs") {
  for (StructureId s : kAll) {
    auto ls = enumerate(s);
    for (Level i : ls)
      for (Level j : ls)
        CHECK(ltWitness(s, i, j).has_value() == lt(i, j));
    // out-of-structure operands never get a witness
    if (!hasOmega(s)) CHECK(!ltWitness(s, finLevel(0), omegaLevel()));
  }
  CHECK(!ltWitness(StructureId::OmegaPlusOne, omegaLevel(), omegaLevel(1)));
}

TEST_CASE("successor: total on nat, partial at the omega1 ceiling") {
  for (StructureId s : kAll) {
    auto ls = enumerate(s);
    for (Level l : ls) {
      auto n = succLevel(s, l);
      if (s == StructureId::OmegaPlusOne && l == omegaLevel()) {
        CHECK(!n);
        continue;
      }
      REQUIRE(n.has_value());
      CHECK(lt(l, *n));
      // nothing fits strictly between l and its successor
      for (Level m : ls) CHECK(!(lt(l, m) && lt(m, *n)));
    }
  }
  CHECK(succLevel(StructureId::Nat, finLevel(5)) == finLevel(6));
  CHECK(succLevel(StructureId::OmegaPlusOmega, omegaLevel()) == omegaLevel(1));
}

TEST_CASE("primitive lemma shapes hold on the enumeration") {
  for (StructureId s : kAll) {
    auto ls = enumerate(s);
    // ltSucSelf
    for (Level l : ls)
      if (auto n = succLevel(s, l)) CHECK(ltWitness(s, l, *n).has_value());
    // ltTrans
    for (Level i : ls)
      for (Level j : ls)
        for (Level k : ls)
          if (ltWitness(s, j, k) && ltWitness(s, i, j))
            CHECK(ltWitness(s, i, k).has_value());
    // ltFinOmega
    if (hasOmega(s))
      for (uint32_t n = 0; n <= 10; n++)
        CHECK(ltWitness(s, finLevel(n), omegaLevel()).has_value());
  }
}

TEST_CASE("printing and structure names") {
  CHECK(showLevel(StructureId::Nat, finLevel(3)) == "3");
  CHECK(showLevel(StructureId::OmegaPlusOne, omegaLevel()) == "\xcf\x89");
  CHECK(showLevel(StructureId::OmegaPlusOmega, omegaLevel(2)) == "\xcf\x89+2");
  CHECK(parseStructureId("nat") == StructureId::Nat);
  CHECK(parseStructureId("omega1") == StructureId::OmegaPlusOne);
  CHECK(parseStructureId("omega-omega") == StructureId::OmegaPlusOmega);
  CHECK(!parseStructureId("zfc"));
  for (StructureId s : kAll)
    CHECK(parseStructureId(showStructure(s)) == s);
}
