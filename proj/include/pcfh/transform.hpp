#pragma once

#include <utility>
#include <vector>

#include "pcfh/derivation.hpp"
#include "pcfh/eval.hpp"

namespace pcfh {

class TransformError : public std::runtime_error {
 public:
  enum class Kind {
    SubjectMismatch,
    SubsumptionMismatch,
    AssumptionMismatch,
    FamilyMismatch,
    StepMismatch,
    ShapeMismatch,
    NotProperNF,
    NotExpandable,
  };

  TransformError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind(kind) {}
  Kind kind;
};

// Targets for splitting a value derivation: the indexed sum of the
// requested optional multitypes must subsume the derivation's result.
struct SplitRequest {
  std::vector<OptMultitype> targets;
};

// A reduction step read backwards: `source` rewrites by `rule` at `pos`
// to the subject of the derivation being expanded.
struct ExpansionStep {
  TermPtr source;
  RuleName rule;
  Position pos;
};

// The checked tight derivation of a proper normal form:
// ∅;∅ ⊢ t : []ν with an empty counter.
DerivPtr nfTightDeriv(const TermPtr& t);

// A derivation of the numeral k at an arbitrary nat multitype; the
// judgment of any such derivation is forced, so it can be built directly.
DerivPtr natValueDeriv(const TermPtr& k, const Multitype& n);

// Merges derivations of the same value into one typing it at the sum of
// their results; the empty list produces the tight []ν derivation.
DerivPtr mergeValueDerivs(
    const TermPtr& v,
    const std::vector<std::pair<DerivPtr, OptMultitype>>& parts);

// Splits a value derivation along the request. Part i satisfies
// targets[i] ◁ result(part i); results, contexts and counters sum back
// to the input's.
std::vector<DerivPtr> splitValueDeriv(const DerivPtr& d,
                                      const SplitRequest& req);

// Value substitution: given body ⊢ t with x:S? in its typing context and
// value ⊢ v : S with S? ◁ S, produces a checked derivation of t{x:=v}
// with summed contexts and counters and the same result.
DerivPtr substValueDeriv(const DerivPtr& body, const std::string& x,
                         const DerivPtr& value);

// Family substitution: x carries a multitype family in body's family
// context; each part types q at one family member. Produces t{x:=q}.
// q is passed explicitly so the empty-family case can still rewrite.
DerivPtr substFamilyDeriv(const DerivPtr& body, const std::string& x,
                          const TermPtr& q, std::vector<DerivPtr> parts);

// Transports a derivation of t along t ->rho t', removing exactly {rho}
// from the counter and preserving contexts and result.
DerivPtr subjectReduce(const DerivPtr& d, const EvalStep& step);

struct ValueDecomposition {
  DerivPtr body;       // types t with x:assumption
  DerivPtr value;      // types v at some multitype S
  OptMultitype assumption;  // subsumed by S
};

// Inverse of value substitution: decomposes a derivation of t{x:=v}
// into a derivation of t plus one of v, splitting contexts/counters.
ValueDecomposition antiSubstValue(const DerivPtr& d, const TermPtr& t,
                                  const std::string& x, const TermPtr& v);

struct FamilyDecomposition {
  DerivPtr body;                // types t with x:<results of parts>
  std::vector<DerivPtr> parts;  // each types q
};

// Inverse of family substitution, for arbitrary q.
FamilyDecomposition antiSubstFamily(const DerivPtr& d, const TermPtr& t,
                                    const std::string& x, const TermPtr& q);

// Transports a derivation of t' backwards along t ->rho t', adding
// exactly {rho} to the counter.
DerivPtr subjectExpand(const DerivPtr& d, const ExpansionStep& step);

}  // namespace pcfh
