// Seeded random generators shared by the test suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "pcfh/eval.hpp"
#include "pcfh/term.hpp"
#include "pcfh/types.hpp"

namespace pcfh::gen {

class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  // A closed term with at most maxSize constructors.
  TermPtr closedTerm(int maxSize) {
    std::vector<std::string> scope;
    int budget = maxSize;
    return go(budget, scope, 0);
  }

  // A term whose free variables are drawn from `free`.
  TermPtr openTerm(int maxSize, std::vector<std::string> free) {
    int budget = maxSize;
    return go(budget, free, 0);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string binderName(int depth) {
    static const char* pool[] = {"x", "y", "z", "f", "n", "m", "w", "u"};
    std::string base = pool[pick(8)];
    if (depth > 7) base += std::to_string(depth);
    return base;
  }

  TermPtr go(int& budget, std::vector<std::string>& scope, int depth) {
    --budget;
    bool canVar = !scope.empty();
    if (budget <= 1) {
      if (canVar && pick(2) == 0) return mkVar(scope[pick((int)scope.size())]);
      return mkZero();
    }
    // Leaves stay likely so sizes vary; ifz is the only 3-child node.
    int r = pick(16);
    if (canVar && r < 3) return mkVar(scope[pick((int)scope.size())]);
    if (r < 5) return mkZero();
    if (r < 8) {
      std::string b = binderName(depth);
      scope.push_back(b);
      TermPtr body = go(budget, scope, depth + 1);
      scope.pop_back();
      return mkAbs(b, body);
    }
    if (r < 11) {
      TermPtr f = go(budget, scope, depth + 1);
      TermPtr a = go(budget, scope, depth + 1);
      return mkApp(f, a);
    }
    if (r < 13) return mkSucc(go(budget, scope, depth + 1));
    if (r < 15) {
      TermPtr g = go(budget, scope, depth + 1);
      TermPtr th = go(budget, scope, depth + 1);
      std::string b = binderName(depth);
      scope.push_back(b);
      TermPtr el = go(budget, scope, depth + 1);
      scope.pop_back();
      return mkIfZ(g, th, b, el);
    }
    std::string b = binderName(depth);
    scope.push_back(b);
    TermPtr body = go(budget, scope, depth + 1);
    scope.pop_back();
    return mkFix(b, body);
  }

  std::mt19937_64 rng_;
};

class TypeGen {
 public:
  explicit TypeGen(std::uint64_t seed) : rng_(seed) {}

  Multitype multitype(int maxMembers, int depth = 0) {
    Nature n = pick(2) == 0 ? Nature::Nat : Nature::Abs;
    return multitypeOf(n, maxMembers, depth);
  }

  Multitype multitypeOf(Nature n, int maxMembers, int depth = 0) {
    int count = pick(maxMembers + 1);
    std::vector<TypeH> members;
    for (int i = 0; i < count; ++i) members.push_back(type(n, depth));
    return Multitype::of(n, std::move(members));
  }

  TypeH type(Nature n, int depth) {
    if (n == Nature::Nat) {
      if (depth >= 2 || pick(2) == 0) return TypeH::zero();
      return TypeH::succ(multitypeOf(Nature::Nat, 2, depth + 1));
    }
    OptMultitype arg;
    if (depth < 2 && pick(3) != 0) arg = multitype(2, depth + 1);
    Multitype res = depth >= 2 ? Multitype::empty(Nature::Nat)
                               : multitype(2, depth + 1);
    return TypeH::arrow(std::move(arg), std::move(res));
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937_64 rng_;
};

// Closed terms whose left-first evaluation reaches a proper normal form
// within the given fuel.
inline std::vector<TermPtr> terminatingCorpus(std::uint64_t seed, int count,
                                              int maxSize,
                                              std::uint64_t fuel) {
  TermGen gen(seed);
  std::vector<TermPtr> out;
  for (int i = 0; i < count; ++i) {
    TermPtr t = gen.closedTerm(maxSize);
    Trace tr = evaluate(t, fuel);
    if (tr.status == TraceStatus::NormalForm &&
        *tr.nature != FallibleNature::Stuck)
      out.push_back(t);
  }
  return out;
}

}  // namespace pcfh::gen
