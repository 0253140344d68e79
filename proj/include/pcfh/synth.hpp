#pragma once

#include "pcfh/transform.hpp"

namespace pcfh {

enum class SynthStatus { Ok, Stuck, FuelExhausted, Open };

// On Ok: a checked tight derivation of the input whose counter is
// exactly the trace's rule multiset. Stuck/FuelExhausted keep the trace
// so callers can show where evaluation lost meaning or ran out.
struct SynthResult {
  SynthStatus status = SynthStatus::Open;
  Trace trace;
  DerivPtr derivation;  // nonnull iff status == Ok

  bool ok() const { return status == SynthStatus::Ok; }
};

// Evaluates t, tight-types its normal form, and replays subject
// expansion backwards along the trace.
SynthResult synthesizeTight(const TermPtr& t, std::uint64_t fuel,
                            Strategy strat = Strategy::LeftFirst);

struct BoundReport {
  std::uint64_t bound = 0;  // |counterOf(d)|
  std::uint64_t steps = 0;  // trace length
  bool reachedProperNF = false;
  bool ok = false;  // proper NF within the bound and steps <= bound
};

// Checks the upper-bound reading of a derivation's counter against an
// actual evaluation of its (closed) subject.
BoundReport verifyUpperBound(const DerivPtr& d, std::uint64_t fuel);

// The tight counter of t without exposing the derivation.
struct PredictResult {
  SynthStatus status = SynthStatus::Open;
  MultiCounter counter;
  Trace trace;

  bool ok() const { return status == SynthStatus::Ok; }
};
PredictResult predictSteps(const TermPtr& t, std::uint64_t fuel);

}  // namespace pcfh
