#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "pcfh/types.hpp"

using namespace pcfh;

namespace {

Multitype natMT(std::vector<TypeH> ms) {
  return Multitype::of(Nature::Nat, std::move(ms));
}
Multitype absMT(std::vector<TypeH> ms) {
  return Multitype::of(Nature::Abs, std::move(ms));
}

// All ways to split t into (left, right) with left+right = t, as index
// subsets of the canonical member list.
std::vector<std::pair<Multitype, Multitype>> allSplits(const Multitype& t) {
  Multitype c = canonicalize(t);
  std::size_t n = c.members.size();
  std::vector<std::pair<Multitype, Multitype>> out;
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<TypeH> l, r;
    for (std::size_t i = 0; i < n; ++i)
      (mask >> i & 1 ? l : r).push_back(c.members[i]);
    out.emplace_back(Multitype::of(c.nature, std::move(l)),
                     Multitype::of(c.nature, std::move(r)));
  }
  return out;
}

}  // namespace

TEST_CASE("compatibility is nature equality with bottom neutral") {
  Multitype zn = natMT({TypeH::zero()});
  Multitype sn = natMT({TypeH::succ(natMT({}))});
  Multitype ab = absMT({TypeH::arrow(std::nullopt, natMT({}))});
  CHECK(compatible(zn, sn));
  CHECK_FALSE(compatible(zn, ab));
  CHECK(compatible(std::nullopt, ab));
  CHECK(compatible(std::nullopt, std::nullopt));
}

TEST_CASE("sums are multiset unions within one nature") {
  Multitype a = natMT({TypeH::zero()});
  Multitype b = natMT({TypeH::zero(), TypeH::succ(natMT({}))});
  Multitype s = sumMultitype(a, b);
  CHECK(s == natMT({TypeH::zero(), TypeH::zero(), TypeH::succ(natMT({}))}));
  CHECK(sumMultitype(absMT({}), absMT({})) == absMT({}));
  CHECK_THROWS_AS(sumMultitype(absMT({}), natMT({})), TypeError);

  CHECK(sumOpt(std::nullopt, std::nullopt) == OptMultitype{});
  CHECK(*sumOpt(std::nullopt, a) == a);
  CHECK_THROWS_AS(sumOpt(natMT({TypeH::zero()}), absMT({})), TypeError);
}

TEST_CASE("sum is associative and commutative with the empty unit") {
  gen::TypeGen g(41);
  for (int i = 0; i < 200; ++i) {
    Nature n = i % 2 ? Nature::Nat : Nature::Abs;
    Multitype a = g.multitypeOf(n, 3);
    Multitype b = g.multitypeOf(n, 3);
    Multitype c = g.multitypeOf(n, 3);
    CHECK(sumMultitype(a, b) == sumMultitype(b, a));
    CHECK(sumMultitype(sumMultitype(a, b), c) ==
          sumMultitype(a, sumMultitype(b, c)));
    CHECK(sumMultitype(a, Multitype::empty(n)) == a);
  }
}

TEST_CASE("subsumption has exactly two cases") {
  CHECK(subsumes(std::nullopt, natMT({})));
  CHECK(subsumes(std::nullopt, absMT({})));
  CHECK_FALSE(subsumes(std::nullopt, natMT({TypeH::zero()})));
  Multitype zn = natMT({TypeH::zero()});
  CHECK(subsumes(zn, zn));
  CHECK_FALSE(subsumes(zn, natMT({TypeH::zero(), TypeH::zero()})));
}

TEST_CASE("canonicalize sorts members under the structural order") {
  Multitype raw;
  raw.nature = Nature::Nat;
  raw.members = {TypeH::succ(natMT({})), TypeH::zero()};
  Multitype c = canonicalize(raw);
  CHECK(c.members[0].isZero());
  CHECK(c.members[1].asSucc() != nullptr);
  CHECK(canonicalize(absMT({})) == absMT({}));
}

TEST_CASE("equality is permutation-invariant") {
  gen::TypeGen g(42);
  std::mt19937_64 shuf(43);
  for (int i = 0; i < 300; ++i) {
    Multitype t = g.multitype(5);
    Multitype p;
    p.nature = t.nature;
    p.members = t.members;
    std::shuffle(p.members.begin(), p.members.end(), shuf);
    CHECK(t == p);
    CHECK(cmpMultitype(canonicalize(t), canonicalize(p)) == 0);
    CHECK(printMultitype(t) == printMultitype(p));
  }
}

TEST_CASE("multitype splitting lemma") {
  // (1) bottom subsumes only empty multitypes
  gen::TypeGen g(44);
  for (int i = 0; i < 100; ++i) {
    Multitype t = g.multitype(4);
    if (subsumes(std::nullopt, t)) CHECK(t.isEmpty());
  }
  // (2) two-way: a1+a2 subsumes T iff T splits into subsumed halves
  for (int i = 0; i < 150; ++i) {
    Multitype t = g.multitype(6);
    auto splits = allSplits(t);
    // enumerate candidate (a1, a2) from the splits themselves plus bottoms
    std::vector<OptMultitype> cands{std::nullopt};
    for (auto& [l, r] : splits) {
      cands.emplace_back(l);
      cands.emplace_back(r);
    }
    for (const OptMultitype& a1 : cands) {
      for (const OptMultitype& a2 : cands) {
        if (!compatible(a1, a2)) continue;
        bool lhs = subsumes(sumOpt(a1, a2), t);
        bool rhs = false;
        for (auto& [l, r] : splits)
          if (subsumes(a1, l) && subsumes(a2, r)) rhs = true;
        CHECK(lhs == rhs);
      }
    }
  }
  // (3) the empty-index case forces an empty multitype
  CHECK(subsumes(std::nullopt, natMT({})));
  CHECK_FALSE(subsumes(std::nullopt, natMT({TypeH::zero()})));
}

TEST_CASE("n-ary splitting on a concrete multitype") {
  // [0t, 0t, succ([]nat)]nat split three ways
  Multitype t =
      natMT({TypeH::zero(), TypeH::zero(), TypeH::succ(natMT({}))});
  std::vector<OptMultitype> parts{
      OptMultitype(natMT({TypeH::zero()})),
      std::nullopt,
      OptMultitype(natMT({TypeH::zero(), TypeH::succ(natMT({}))}))};
  OptMultitype total;
  for (const auto& p : parts) total = sumOpt(total, p);
  CHECK(subsumes(total, t));
}

TEST_CASE("context sums") {
  Multitype zn = natMT({TypeH::zero()});
  FamilyContext f1, f2;
  f1.assign("x", MultitypeFamily::of({zn}));
  f2.assign("x", MultitypeFamily::of({absMT({})}));
  FamilyContext fs = sumFamilyCtx(f1, f2);
  CHECK(fs.lookup("x").size() == 2);

  TypingContext g1, g2;
  g1.assign("x", zn);
  g2.assign("y", absMT({}));
  TypingContext gs = sumTypingCtx(g1, g2);
  CHECK(*gs.lookup("x") == zn);
  CHECK(*gs.lookup("y") == absMT({}));
  CHECK_FALSE(gs.lookup("z").has_value());

  TypingContext g3;
  g3.assign("x", absMT({}));
  CHECK_THROWS_AS(sumTypingCtx(g1, g3), TypeError);
}

TEST_CASE("empty multitype entries are distinct from absent ones") {
  TypingContext g;
  g.assign("x", natMT({}));
  CHECK(g.contains("x"));
  CHECK(g.lookup("x").has_value());
  CHECK(g.lookup("x")->isEmpty());
  CHECK(g.domain() == std::set<std::string>{"x"});
}

TEST_CASE("textual syntax round-trips") {
  gen::TypeGen g(45);
  for (int i = 0; i < 300; ++i) {
    Multitype t = g.multitype(4);
    CHECK(parseMultitype(printMultitype(t)) == t);
  }
  CHECK(printMultitype(natMT({})) == "[]nat");
  CHECK(printOpt(std::nullopt) == "bot");
  Multitype nested = absMT({TypeH::arrow(
      OptMultitype(absMT({TypeH::arrow(OptMultitype(natMT({})), absMT({}))})),
      absMT({}))});
  CHECK(printMultitype(nested) == "[[[]nat -> []abs]abs -> []abs]abs");
  CHECK(parseMultitype("[[[]nat -> []abs]abs -> []abs]abs") == nested);
  CHECK(parseType("bot -> [0t]nat") ==
        TypeH::arrow(std::nullopt, natMT({TypeH::zero()})));
}

TEST_CASE("textual syntax rejects malformed input") {
  CHECK_THROWS_AS(parseMultitype("[0t"), TypeError);
  CHECK_THROWS_AS(parseMultitype("[0t]foo"), TypeError);
  CHECK_THROWS_AS(parseMultitype("[succ(0t)]nat"), TypeError);
  CHECK_THROWS_AS(parseType("[]nat"), TypeError);
  CHECK_THROWS_AS(parseMultitype("[0t]nat trailing"), TypeError);
}
