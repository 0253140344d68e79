#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "pcfh/derivation_json.hpp"
#include "pcfh/parser.hpp"
#include "pcfh/synth.hpp"
#include "pcfh/transform.hpp"

using namespace pcfh;

namespace {

DerivPtr doubling() {
  TermPtr t = parseTerm("(fix f. \\n. ifz(n; 0; m. S (S (f m)))) (S 0)");
  SynthResult r = synthesizeTight(t, 100);
  REQUIRE(r.ok());
  return r.derivation;
}

}  // namespace

TEST_CASE("serialize, deserialize, check, re-serialize is the identity") {
  DerivPtr d = doubling();
  std::string j1 = derivationToJson(d);
  DerivPtr back = derivationFromJson(j1);
  Judgment jb = checkDerivation(back);
  CHECK(judgmentEq(jb, d->conclusion));
  CHECK(derivationToJson(back) == j1);
}

TEST_CASE("round-trip across many synthesized derivations") {
  auto corpus = gen::terminatingCorpus(61, 400, 10, 200);
  int done = 0;
  for (const TermPtr& t : corpus) {
    if (done >= 60) break;
    SynthResult r = synthesizeTight(t, 500);
    REQUIRE(r.ok());
    std::string j1 = derivationToJson(r.derivation);
    DerivPtr back = derivationFromJson(j1);
    checkDerivation(back);
    CHECK(derivationToJson(back) == j1);
    ++done;
  }
  CHECK(done == 60);
}

TEST_CASE("schema fields are bit-exact") {
  DerivPtr d = dZero(1);
  std::string j = derivationToJson(d, -1);
  CHECK(j ==
        R"({"judgment":{"counter":{"B":0,"F":0,"I0":0,"IS":0},"family":{},)"
        R"("term":"0","type":{"members":["0t"],"nature":"nat"},"typing":{}},)"
        R"("premises":[],"rule":"TZero"})");
}

TEST_CASE("hand-written derivation JSON is accepted") {
  // x : [0t]nat |- x : [0t]nat by TVar1
  std::string src = R"({
    "rule": "TVar1",
    "judgment": {
      "family": {},
      "typing": {"x": {"nature": "nat", "members": ["0t"]}},
      "counter": {"B": 0, "I0": 0, "IS": 0, "F": 0},
      "term": "x",
      "type": {"nature": "nat", "members": ["0t"]}
    },
    "premises": []
  })";
  DerivPtr d = derivationFromJson(src);
  Judgment j = checkDerivation(d);
  CHECK(printMultitype(j.result) == "[0t]nat");
}

TEST_CASE("witnesses survive the round trip") {
  // S 0 typed at [succ([0t]nat)]nat stores the chosen split
  DerivPtr d = natValueDeriv(
      mkNat(1),
      Multitype::of(Nature::Nat,
                    {TypeH::succ(Multitype::of(Nature::Nat, {TypeH::zero()}))}));
  std::string j = derivationToJson(d);
  CHECK(j.find("\"split\"") != std::string::npos);
  DerivPtr back = derivationFromJson(j);
  const auto* w = std::get_if<SuccWitness>(&back->witness);
  REQUIRE(w != nullptr);
  REQUIRE(w->split.size() == 1);
  CHECK(printMultitype(w->split[0]) == "[0t]nat");
  checkDerivation(back);
}

TEST_CASE("mutated JSON fails the checker, malformed JSON the reader") {
  DerivPtr d = doubling();
  std::string good = derivationToJson(d);
  // corrupt the root counter
  std::string bad = good;
  auto pos = bad.find("\"B\": 2");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 6, "\"B\": 7");
  DerivPtr parsed = derivationFromJson(bad);
  CHECK_THROWS_AS(checkDerivation(parsed), CheckError);

  CHECK_THROWS_AS(derivationFromJson("{"), JsonError);
  CHECK_THROWS_AS(derivationFromJson(R"({"rule":"TNope","judgment":{},"premises":[]})"),
                  JsonError);
  CHECK_THROWS_AS(derivationFromJson(R"({"judgment":{},"premises":[]})"),
                  JsonError);
  std::string badType = R"({
    "rule": "TZero",
    "judgment": {"family": {}, "typing": {}, "counter": {},
                 "term": "0", "type": {"nature": "nat", "members": ["wat"]}},
    "premises": []
  })";
  CHECK_THROWS_AS(derivationFromJson(badType), JsonError);
}
