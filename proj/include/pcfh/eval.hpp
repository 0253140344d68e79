#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcfh/nature.hpp"
#include "pcfh/term.hpp"

namespace pcfh {

class OpenTermError : public std::runtime_error {
 public:
  explicit OpenTermError(const std::string& msg) : std::runtime_error(msg) {}
};

// Path from the root to a redex: child indices per congruence rule
// (App: 0 = function, 1 = argument; Succ: 0 = inner; IfZ: 0 = guard).
using Position = std::vector<int>;

struct EvalStep {
  RuleName rule;
  Position pos;
  TermPtr term;  // the term after the step
};

// Which application side the deterministic strategy tries first. The
// diamond property makes trace length and rule multiset independent of
// this choice.
enum class Strategy { LeftFirst, RightFirst };

// All one-step reducts of t: root rules r-beta/r-if0/r-ifS/r-fix plus
// congruences (left/right of application, under S, in the ifz guard).
// Emitted in the fixed priority order, so the first entry is the
// deterministic step. Empty iff t is irreducible.
std::vector<EvalStep> stepAll(const TermPtr& t);

// The highest-priority step: root redex, else ifz guard, else S inner,
// else application left, else right (swapped for RightFirst).
std::optional<EvalStep> stepDet(const TermPtr& t,
                                Strategy strat = Strategy::LeftFirst);

// Fires the redex at `pos` in t, if the rule applies there.
std::optional<EvalStep> applyStepAt(const TermPtr& t, const Position& pos);

enum class TraceStatus { NormalForm, FuelExhausted };

struct Trace {
  TermPtr initial;
  std::vector<EvalStep> steps;
  TraceStatus status = TraceStatus::NormalForm;
  std::optional<FallibleNature> nature;  // set iff status == NormalForm

  const TermPtr& final() const {
    return steps.empty() ? initial : steps.back().term;
  }
  std::size_t length() const { return steps.size(); }
  MultiCounter counter() const {
    MultiCounter m;
    for (const auto& s : steps) m.add(s.rule);
    return m;
  }
};

// Iterates stepDet up to `fuel` times. Throws OpenTermError on terms
// with free variables.
Trace evaluate(const TermPtr& t, std::uint64_t fuel,
               Strategy strat = Strategy::LeftFirst);

// Some(ε) iff t is a normal form of nature ε per the inductive grammar;
// for closed t this coincides with irreducibility.
std::optional<FallibleNature> classifyNF(const TermPtr& t);

struct DiamondPair {
  EvalStep left, right;
  std::optional<TermPtr> join;  // empty means counterexample
};

struct DiamondReport {
  TermPtr subject;
  std::vector<DiamondPair> pairs;

  bool ok() const {
    for (const auto& p : pairs)
      if (!p.join) return false;
    return true;
  }
};

// For every pair of distinct (up to alpha) one-step reducts t1, t2 of t,
// looks for a join t' with t1 ->rho2 t' and t2 ->rho1 t'.
DiamondReport diamondCheck(const TermPtr& t);

}  // namespace pcfh
