#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pcfh/term.hpp"
#include "pcfh/types.hpp"

namespace pcfh {

enum class Rule {
  TVar1,
  TVar2,
  TAbs,
  TApp,
  TZero,
  TSucc,
  TIfZero,
  TIfSucc,
  TFix
};

const char* ruleStr(Rule r);
std::optional<Rule> ruleFromStr(const std::string& s);

// Family and typing contexts never share variables.
struct Judgment {
  FamilyContext family;
  TypingContext typing;
  MultiCounter counter;
  TermPtr subject;
  Multitype result;
};

// Judgment equality up to alpha on the subject and canonical form on
// the type material.
bool judgmentEq(const Judgment& a, const Judgment& b);
std::string printJudgment(const Judgment& j);

// Rule-specific data making checking a deterministic verification
// instead of a search.
struct AbsWitness {
  std::vector<OptMultitype> binderAssumptions;  // one per premise
};
struct AppWitness {
  OptMultitype arg;  // the arrow's argument, subsumed by `target`
  Multitype target;  // the right premise's result
};
struct SuccWitness {
  std::vector<Multitype> split;  // nat multitypes summing to the premise result
};
struct IfSuccWitness {
  OptMultitype pred;  // the else binder's assumption, subsumed by `target`
  Multitype target;   // the guard's succ argument
};
struct FixWitness {
  std::vector<Multitype> family;  // aligned with the recursive premises
};
using Witness = std::variant<std::monostate, AbsWitness, AppWitness,
                             SuccWitness, IfSuccWitness, FixWitness>;

class Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

class Derivation {
 public:
  Rule rule;
  Judgment conclusion;
  std::vector<DerivPtr> premises;
  Witness witness;
};

class CheckError : public std::runtime_error {
 public:
  CheckError(std::vector<std::size_t> path, const std::string& reason)
      : std::runtime_error(pathStr(path) + ": " + reason),
        path(std::move(path)),
        reason(reason) {}

  static std::string pathStr(const std::vector<std::size_t>& p);

  std::vector<std::size_t> path;  // premise indices from the root
  std::string reason;
};

struct CheckOptions {
  // Restricts t-zero to at most one member, for readings of the rule
  // where the zero multitype is not arbitrary.
  bool strictZero = false;
};

// Validates every node against its typing rule, the stored witness,
// context compatibility, the family/typing disjointness invariant and
// relevance. Returns the (revalidated) concluding judgment.
Judgment checkDerivation(const DerivPtr& d, const CheckOptions& opts = {});

// Empty contexts and an empty result multitype.
bool isTight(const DerivPtr& d);

inline const MultiCounter& counterOf(const DerivPtr& d) {
  return d->conclusion.counter;
}

// Builders. Each computes (and validates) the conclusion from its
// premises, so that independently checking the result always succeeds.
DerivPtr dVar1(const std::string& x, Multitype t);
DerivPtr dVar2(const std::string& x, Multitype t);
DerivPtr dAbs(const std::string& binder, TermPtr body,
              std::vector<DerivPtr> premises);
DerivPtr dApp(DerivPtr fun, DerivPtr arg);
DerivPtr dZero(std::size_t multiplicity);
DerivPtr dSucc(DerivPtr premise, std::vector<Multitype> split);
DerivPtr dIfZero(DerivPtr guard, DerivPtr thenD, const std::string& binder,
                 TermPtr elseBranch);
DerivPtr dIfSucc(DerivPtr guard, TermPtr thenBranch, const std::string& binder,
                 DerivPtr elseD);
DerivPtr dFix(const std::string& binder, DerivPtr head,
              std::vector<DerivPtr> recs);

}  // namespace pcfh
