#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "pcfh/derivation.hpp"
#include "pcfh/parser.hpp"
#include "pcfh/transform.hpp"

using namespace pcfh;

namespace {

Multitype natMT(std::vector<TypeH> ms) {
  return Multitype::of(Nature::Nat, std::move(ms));
}
Multitype absMT(std::vector<TypeH> ms) {
  return Multitype::of(Nature::Abs, std::move(ms));
}

const Multitype kEmptyNat = natMT({});
const Multitype kEmptyAbs = absMT({});

// The displayed non-tight derivation of \x. x 0: the variable is used
// once at []nat -> []abs, so the whole term gets a singleton abs type
// and the counter {B}.
DerivPtr paperAbsDeriv() {
  Multitype arrTy = absMT({TypeH::arrow(OptMultitype(kEmptyNat), kEmptyAbs)});
  DerivPtr var = dVar1("x", arrTy);
  DerivPtr zero = dZero(0);
  DerivPtr app = dApp(var, zero);
  return dAbs("x", parseTerm("x 0"), {app});
}

// The worked fixed-point example: doubling applied to S 0.
//   N = [succ([0t]nat)]nat   M = [0t]nat
//   A = [N -> []nat]abs      B = [M -> []nat]abs
DerivPtr doublingDeriv() {
  Multitype M = natMT({TypeH::zero()});
  Multitype N = natMT({TypeH::succ(M)});
  Multitype B = absMT({TypeH::arrow(OptMultitype(M), kEmptyNat)});
  TermPtr body = parseTerm("ifz(n; 0; m. S (S (f m)))");

  // else branch: f m used once, successors carry the empty multitype
  DerivPtr fm = dApp(dVar2("f", B), dVar1("m", M));
  DerivPtr cond = dSucc(dSucc(fm, {}), {});

  // recursive occurrence count 1: guard n : N, predecessor m : M
  DerivPtr ifS = dIfSucc(dVar1("n", N), mkZero(), "m", cond);
  DerivPtr lamA = dAbs("n", body, {ifS});

  // base case: guard n : M, then branch 0 : []nat, no recursive premise
  DerivPtr ifZ = dIfZero(dVar1("n", M), dZero(0), "m",
                         parseTerm("S (S (f m))"));
  DerivPtr lamB = dAbs("n", body, {ifZ});
  DerivPtr rec2 = dFix("f", lamB, {});

  DerivPtr rec1 = dFix("f", lamA, {rec2});

  DerivPtr argDeriv = dSucc(dZero(1), {M});
  return dApp(rec1, argDeriv);
}

MultiCounter counter(std::initializer_list<std::pair<RuleName, int>> cs) {
  MultiCounter m;
  for (auto [r, n] : cs) m.add(r, n);
  return m;
}

}  // namespace

TEST_CASE("the non-tight derivation of \\x. x 0 checks") {
  DerivPtr d = paperAbsDeriv();
  Judgment j = checkDerivation(d);
  CHECK(j.family.isEmpty());
  CHECK(j.typing.isEmpty());
  CHECK(j.counter == MultiCounter::single(RuleName::B));
  CHECK(printMultitype(j.result) == "[[[]nat -> []abs]abs -> []abs]abs");
  CHECK_FALSE(isTight(d));
}

TEST_CASE("the tight derivation of \\x. x 0 checks") {
  DerivPtr d = dAbs("x", parseTerm("x 0"), {});
  Judgment j = checkDerivation(d);
  CHECK(j.counter.empty());
  CHECK(j.result == kEmptyAbs);
  CHECK(isTight(d));
}

TEST_CASE("a forged counter is rejected with its node path") {
  DerivPtr good = paperAbsDeriv();
  // rebuild with the t-app node's counter forced to empty
  auto badApp = std::make_shared<Derivation>(*good->premises[0]);
  badApp->conclusion.counter = MultiCounter{};
  auto bad = std::make_shared<Derivation>(*good);
  bad->premises = {badApp};
  try {
    checkDerivation(bad);
    FAIL("expected a CheckError");
  } catch (const CheckError& e) {
    CHECK(e.path == std::vector<std::size_t>{0});
    CHECK(e.reason.find("counter mismatch") != std::string::npos);
  }
}

TEST_CASE("the doubling derivation checks with the right counter") {
  DerivPtr d = doublingDeriv();
  Judgment j = checkDerivation(d);
  CHECK(alphaEq(j.subject,
                parseTerm("(fix f. \\n. ifz(n; 0; m. S (S (f m)))) (S 0)")));
  CHECK(j.counter == counter({{RuleName::B, 2},
                              {RuleName::F, 2},
                              {RuleName::IS, 1},
                              {RuleName::I0, 1}}));
  CHECK(j.result == kEmptyNat);
  CHECK(isTight(d));
  CHECK(counterOf(d) == j.counter);
}

TEST_CASE("counter equals the rule-node multiset of the tree") {
  std::function<MultiCounter(const DerivPtr&)> nodeCount =
      [&](const DerivPtr& d) {
        MultiCounter m;
        switch (d->rule) {
          case Rule::TApp: m.add(RuleName::B); break;
          case Rule::TIfZero: m.add(RuleName::I0); break;
          case Rule::TIfSucc: m.add(RuleName::IS); break;
          case Rule::TFix: m.add(RuleName::F); break;
          default: break;
        }
        for (const DerivPtr& p : d->premises) m += nodeCount(p);
        return m;
      };
  DerivPtr d = doublingDeriv();
  CHECK(nodeCount(d) == counterOf(d));
  DerivPtr e = paperAbsDeriv();
  CHECK(nodeCount(e) == counterOf(e));
}

TEST_CASE("t-var leaves carry empty counters") {
  DerivPtr v = dVar1("x", natMT({TypeH::zero()}));
  CHECK(counterOf(v).empty());
  Judgment j = checkDerivation(v);
  CHECK(*j.typing.lookup("x") == natMT({TypeH::zero()}));

  DerivPtr v2 = dVar2("f", kEmptyAbs);
  CHECK(checkDerivation(v2).family.lookup("f").size() == 1);
}

TEST_CASE("t-zero admits any multiplicity unless strict") {
  DerivPtr three = dZero(3);
  CHECK(checkDerivation(three).result ==
        natMT({TypeH::zero(), TypeH::zero(), TypeH::zero()}));
  CHECK(isTight(dZero(0)));
  CheckOptions strict;
  strict.strictZero = true;
  CHECK_THROWS_AS(checkDerivation(three, strict), CheckError);
  CHECK(checkDerivation(dZero(1), strict).result == natMT({TypeH::zero()}));
}

TEST_CASE("relevance and disjointness are enforced") {
  // plant an assumption for a variable that does not occur
  auto bogus = std::make_shared<Derivation>(*dZero(0));
  bogus->conclusion.typing.assign("q", kEmptyNat);
  try {
    checkDerivation(bogus);
    FAIL("expected a CheckError");
  } catch (const CheckError& e) {
    // caught either as a sum mismatch or as a relevance violation
    CHECK(!e.reason.empty());
  }

  // a variable in both contexts violates the judgment invariant
  auto var = std::make_shared<Derivation>(*dVar1("x", kEmptyNat));
  var->conclusion.family.assign("x", MultitypeFamily::of({kEmptyAbs}));
  CHECK_THROWS_AS(checkDerivation(var), CheckError);
}

TEST_CASE("t-app requires a singleton abs head") {
  DerivPtr two = dAbs("x", mkVar("x"), {dVar1("x", kEmptyNat),
                                        dVar1("x", kEmptyNat)});
  CHECK(two->conclusion.result.size() == 2);
  CHECK_THROWS_AS(dApp(two, dZero(0)), TypeError);
  DerivPtr natHead = dZero(1);
  CHECK_THROWS_AS(dApp(natHead, dZero(0)), TypeError);
}

TEST_CASE("t-app subsumption accepts bottom only against empty") {
  // (\x. 0) applied to a zero-typed argument: x discarded
  DerivPtr body = dZero(0);  // types 0 : []nat with x absent
  DerivPtr lam = dAbs("x", mkZero(), {body});
  CHECK(printMultitype(lam->conclusion.result) == "[bot -> []nat]abs");
  DerivPtr ok = dApp(lam, dZero(0));  // argument at []nat
  CHECK(checkDerivation(ok).counter == MultiCounter::single(RuleName::B));
  CHECK_THROWS_AS(dApp(lam, dZero(2)), TypeError);  // [0t,0t]nat not empty
}

TEST_CASE("t-succ splits must cover the premise result") {
  Multitype M = natMT({TypeH::zero()});
  DerivPtr z = dZero(2);
  // [0t,0t] split as {[0t],[0t]} gives [succ([0t]),succ([0t])]
  DerivPtr ok = dSucc(z, {M, M});
  CHECK(checkDerivation(ok).result == natMT({TypeH::succ(M), TypeH::succ(M)}));
  CHECK_THROWS_AS(dSucc(dZero(2), {M}), TypeError);
  CHECK_THROWS_AS(dSucc(dZero(1), {M, M}), TypeError);
  // non-deterministic split: both groupings check
  DerivPtr alt = dSucc(dZero(2), {natMT({TypeH::zero(), TypeH::zero()})});
  CHECK(checkDerivation(alt).result.size() == 1);
}

TEST_CASE("t-ifZero guard must be exactly [0t]nat") {
  DerivPtr g1 = dVar1("n", natMT({TypeH::zero()}));
  DerivPtr ok = dIfZero(g1, dZero(0), "m", mkVar("m"));
  CHECK(checkDerivation(ok).counter == MultiCounter::single(RuleName::I0));
  DerivPtr g2 = dVar1("n", natMT({TypeH::zero(), TypeH::zero()}));
  CHECK_THROWS_AS(dIfZero(g2, dZero(0), "m", mkVar("m")), TypeError);
  DerivPtr g3 = dVar1("n", kEmptyNat);
  CHECK_THROWS_AS(dIfZero(g3, dZero(0), "m", mkVar("m")), TypeError);
}

TEST_CASE("every numeral judgment has a nat result") {
  gen::TypeGen g(51);
  for (int i = 0; i < 200; ++i) {
    Multitype n = g.multitypeOf(Nature::Nat, 3);
    bool allZero = true;
    for (const TypeH& m : n.members) allZero = allZero && m.isZero();
    if (!allZero) continue;
    DerivPtr d = natValueDeriv(mkZero(), n);
    Judgment j = checkDerivation(d);
    CHECK(j.result.nature == Nature::Nat);
    CHECK(j.family.isEmpty());
    CHECK(j.typing.isEmpty());
    CHECK(j.counter.empty());
  }
}

TEST_CASE("values typed at an empty multitype carry empty judgments") {
  // abstraction: a []abs result forces zero t-abs premises
  DerivPtr lam = dAbs("x", parseTerm("x 0"), {});
  Judgment j = checkDerivation(lam);
  CHECK(j.family.isEmpty());
  CHECK(j.typing.isEmpty());
  CHECK(j.counter.empty());
  // numeral: []nat through the whole succ spine
  DerivPtr num = natValueDeriv(mkNat(4), kEmptyNat);
  Judgment jn = checkDerivation(num);
  CHECK(jn.counter.empty());
  CHECK(jn.result == kEmptyNat);
}

TEST_CASE("judgment printing is readable") {
  DerivPtr d = paperAbsDeriv();
  std::string s = printJudgment(d->conclusion);
  CHECK(s.find("\\x. x 0") != std::string::npos);
  CHECK(s.find("B:1") != std::string::npos);
}
