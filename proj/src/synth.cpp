#include "pcfh/synth.hpp"

namespace pcfh {

SynthResult synthesizeTight(const TermPtr& t, std::uint64_t fuel,
                            Strategy strat) {
  SynthResult res;
  if (!isClosed(t)) {
    res.status = SynthStatus::Open;
    return res;
  }
  res.trace = evaluate(t, fuel, strat);
  if (res.trace.status == TraceStatus::FuelExhausted) {
    res.status = SynthStatus::FuelExhausted;
    return res;
  }
  if (*res.trace.nature == FallibleNature::Stuck) {
    res.status = SynthStatus::Stuck;
    return res;
  }
  DerivPtr d = nfTightDeriv(res.trace.final());
  for (std::size_t i = res.trace.steps.size(); i-- > 0;) {
    const TermPtr& source =
        i == 0 ? res.trace.initial : res.trace.steps[i - 1].term;
    d = subjectExpand(
        d, ExpansionStep{source, res.trace.steps[i].rule,
                         res.trace.steps[i].pos});
  }
  res.derivation = std::move(d);
  res.status = SynthStatus::Ok;
  return res;
}

BoundReport verifyUpperBound(const DerivPtr& d, std::uint64_t fuel) {
  BoundReport rep;
  rep.bound = counterOf(d).cardinality();
  Trace tr = evaluate(d->conclusion.subject, fuel);
  rep.steps = tr.length();
  rep.reachedProperNF = tr.status == TraceStatus::NormalForm && tr.nature &&
                        properOf(*tr.nature).has_value();
  rep.ok = rep.reachedProperNF && rep.steps <= rep.bound;
  return rep;
}

PredictResult predictSteps(const TermPtr& t, std::uint64_t fuel) {
  SynthResult s = synthesizeTight(t, fuel);
  PredictResult res;
  res.status = s.status;
  res.trace = std::move(s.trace);
  if (s.ok()) res.counter = counterOf(s.derivation);
  return res;
}

}  // namespace pcfh
