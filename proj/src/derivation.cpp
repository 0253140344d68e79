#include "pcfh/derivation.hpp"

#include <algorithm>

#include "pcfh/parser.hpp"

namespace pcfh {

const char* ruleStr(Rule r) {
  switch (r) {
    case Rule::TVar1: return "TVar1";
    case Rule::TVar2: return "TVar2";
    case Rule::TAbs: return "TAbs";
    case Rule::TApp: return "TApp";
    case Rule::TZero: return "TZero";
    case Rule::TSucc: return "TSucc";
    case Rule::TIfZero: return "TIfZero";
    case Rule::TIfSucc: return "TIfSucc";
    case Rule::TFix: return "TFix";
  }
  return "?";
}

std::optional<Rule> ruleFromStr(const std::string& s) {
  for (Rule r : {Rule::TVar1, Rule::TVar2, Rule::TAbs, Rule::TApp, Rule::TZero,
                 Rule::TSucc, Rule::TIfZero, Rule::TIfSucc, Rule::TFix})
    if (s == ruleStr(r)) return r;
  return std::nullopt;
}

bool judgmentEq(const Judgment& a, const Judgment& b) {
  return a.counter == b.counter && a.family == b.family &&
         a.typing == b.typing && a.result == b.result &&
         alphaEq(a.subject, b.subject);
}

std::string printJudgment(const Judgment& j) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, f] : j.family.entries()) {
    if (!first) out += ", ";
    first = false;
    out += x + ": " + printFamily(f);
  }
  out += "} ; {";
  first = true;
  for (const auto& [x, t] : j.typing.entries()) {
    if (!first) out += ", ";
    first = false;
    out += x + ": " + printMultitype(t);
  }
  out += "} |-" + j.counter.str() + " " + printTerm(j.subject) + " : " +
         printMultitype(j.result);
  return out;
}

std::string CheckError::pathStr(const std::vector<std::size_t>& p) {
  std::string out = "at [";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  out += "]";
  return out;
}

bool isTight(const DerivPtr& d) {
  const Judgment& j = d->conclusion;
  return j.family.isEmpty() && j.typing.isEmpty() && j.result.isEmpty();
}

namespace {

DerivPtr mk(Rule rule, Judgment conclusion, std::vector<DerivPtr> premises,
            Witness witness) {
  auto d = std::make_shared<Derivation>();
  d->rule = rule;
  d->conclusion = std::move(conclusion);
  d->premises = std::move(premises);
  d->witness = std::move(witness);
  return d;
}

void requireDisjoint(const Judgment& j) {
  for (const auto& [x, f] : j.family.entries())
    if (j.typing.contains(x))
      throw TypeError("variable " + x + " in both family and typing context");
}

}  // namespace

DerivPtr dVar1(const std::string& x, Multitype t) {
  Judgment j;
  j.typing.assign(x, canonicalize(t));
  j.subject = mkVar(x);
  j.result = canonicalize(t);
  return mk(Rule::TVar1, std::move(j), {}, std::monostate{});
}

DerivPtr dVar2(const std::string& x, Multitype t) {
  Judgment j;
  j.family.assign(x, MultitypeFamily::of({t}));
  j.subject = mkVar(x);
  j.result = canonicalize(t);
  return mk(Rule::TVar2, std::move(j), {}, std::monostate{});
}

DerivPtr dAbs(const std::string& binder, TermPtr body,
              std::vector<DerivPtr> premises) {
  Judgment j;
  AbsWitness w;
  std::vector<TypeH> arrows;
  for (const DerivPtr& p : premises) {
    const Judgment& pj = p->conclusion;
    if (!alphaEq(pj.subject, body))
      throw TypeError("t-abs premise subject is not the abstraction body");
    if (pj.family.find(binder))
      throw TypeError("t-abs binder " + binder + " in premise family context");
    OptMultitype assumption = pj.typing.lookup(binder);
    arrows.push_back(TypeH::arrow(assumption, pj.result));
    w.binderAssumptions.push_back(std::move(assumption));
    j.family = sumFamilyCtx(j.family, pj.family);
    j.typing = sumTypingCtx(j.typing, pj.typing.without(binder));
    j.counter += pj.counter;
  }
  j.subject = mkAbs(binder, std::move(body));
  j.result = Multitype::of(Nature::Abs, std::move(arrows));
  requireDisjoint(j);
  return mk(Rule::TAbs, std::move(j), std::move(premises), std::move(w));
}

DerivPtr dApp(DerivPtr fun, DerivPtr arg) {
  const Judgment& fj = fun->conclusion;
  const Judgment& aj = arg->conclusion;
  if (fj.result.nature != Nature::Abs || fj.result.size() != 1)
    throw TypeError(
        "t-app function premise must have a singleton abs multitype, got " +
        printMultitype(fj.result));
  const ArrowTy* arrow = fj.result.members[0].asArrow();
  AppWitness w{*arrow->arg, aj.result};
  if (!subsumes(w.arg, w.target))
    throw TypeError("t-app subsumption fails: " + printOpt(w.arg) +
                    " does not subsume " + printMultitype(w.target));
  Judgment j;
  j.family = sumFamilyCtx(fj.family, aj.family);
  j.typing = sumTypingCtx(fj.typing, aj.typing);
  j.counter = MultiCounter::single(RuleName::B) + fj.counter + aj.counter;
  j.subject = mkApp(fj.subject, aj.subject);
  j.result = *arrow->result;
  requireDisjoint(j);
  return mk(Rule::TApp, std::move(j),
            {std::move(fun), std::move(arg)}, std::move(w));
}

DerivPtr dZero(std::size_t multiplicity) {
  Judgment j;
  j.subject = mkZero();
  j.result = Multitype::of(
      Nature::Nat, std::vector<TypeH>(multiplicity, TypeH::zero()));
  return mk(Rule::TZero, std::move(j), {}, std::monostate{});
}

DerivPtr dSucc(DerivPtr premise, std::vector<Multitype> split) {
  const Judgment& pj = premise->conclusion;
  if (pj.result.nature != Nature::Nat)
    throw TypeError("t-succ premise must have a nat multitype");
  Multitype sum = Multitype::empty(Nature::Nat);
  std::vector<TypeH> members;
  for (const Multitype& part : split) {
    sum = sumMultitype(sum, part);
    members.push_back(TypeH::succ(part));
  }
  if (sum != pj.result)
    throw TypeError("t-succ split does not sum to the premise result");
  Judgment j;
  j.family = pj.family;
  j.typing = pj.typing;
  j.counter = pj.counter;
  j.subject = mkSucc(pj.subject);
  j.result = Multitype::of(Nature::Nat, std::move(members));
  return mk(Rule::TSucc, std::move(j), {std::move(premise)},
            SuccWitness{std::move(split)});
}

namespace {
const Multitype kSingleZero =
    Multitype::of(Nature::Nat, {TypeH::zero()});
}

DerivPtr dIfZero(DerivPtr guard, DerivPtr thenD, const std::string& binder,
                 TermPtr elseBranch) {
  const Judgment& gj = guard->conclusion;
  const Judgment& tj = thenD->conclusion;
  if (gj.result != kSingleZero)
    throw TypeError("t-ifZero guard must be typed exactly [0t]nat");
  Judgment j;
  j.family = sumFamilyCtx(gj.family, tj.family);
  j.typing = sumTypingCtx(gj.typing, tj.typing);
  j.counter = MultiCounter::single(RuleName::I0) + gj.counter + tj.counter;
  j.subject = mkIfZ(gj.subject, tj.subject, binder, std::move(elseBranch));
  j.result = tj.result;
  requireDisjoint(j);
  return mk(Rule::TIfZero, std::move(j), {std::move(guard), std::move(thenD)},
            std::monostate{});
}

DerivPtr dIfSucc(DerivPtr guard, TermPtr thenBranch, const std::string& binder,
                 DerivPtr elseD) {
  const Judgment& gj = guard->conclusion;
  const Judgment& ej = elseD->conclusion;
  if (gj.result.nature != Nature::Nat || gj.result.size() != 1 ||
      !gj.result.members[0].asSucc())
    throw TypeError(
        "t-ifSucc guard must be typed exactly [succ(N)]nat, got " +
        printMultitype(gj.result));
  Multitype target = *gj.result.members[0].asSucc()->pred;
  if (ej.family.find(binder))
    throw TypeError("t-ifSucc binder " + binder + " in premise family context");
  IfSuccWitness w{ej.typing.lookup(binder), std::move(target)};
  if (!subsumes(w.pred, w.target))
    throw TypeError("t-ifSucc subsumption fails: " + printOpt(w.pred) +
                    " does not subsume " + printMultitype(w.target));
  Judgment j;
  j.family = sumFamilyCtx(gj.family, ej.family);
  j.typing = sumTypingCtx(gj.typing, ej.typing.without(binder));
  j.counter = MultiCounter::single(RuleName::IS) + gj.counter + ej.counter;
  j.subject = mkIfZ(gj.subject, std::move(thenBranch), binder, ej.subject);
  j.result = ej.result;
  requireDisjoint(j);
  return mk(Rule::TIfSucc, std::move(j), {std::move(guard), std::move(elseD)},
            std::move(w));
}

DerivPtr dFix(const std::string& binder, DerivPtr head,
              std::vector<DerivPtr> recs) {
  const Judgment& hj = head->conclusion;
  if (hj.typing.contains(binder))
    throw TypeError("t-fix binder " + binder + " in head typing context");
  FixWitness w;
  std::vector<Multitype> recResults;
  for (const DerivPtr& r : recs) {
    w.family.push_back(r->conclusion.result);
    recResults.push_back(r->conclusion.result);
  }
  if (hj.family.lookup(binder) != MultitypeFamily::of(std::move(recResults)))
    throw TypeError(
        "t-fix recursive premise results do not form the binder's family");
  Judgment j;
  j.family = hj.family.without(binder);
  j.typing = hj.typing;
  j.counter = MultiCounter::single(RuleName::F) + hj.counter;
  j.subject = mkFix(binder, hj.subject);
  j.result = hj.result;
  for (const DerivPtr& r : recs) {
    const Judgment& rj = r->conclusion;
    if (!alphaEq(rj.subject, j.subject))
      throw TypeError("t-fix recursive premise subject mismatch");
    j.family = sumFamilyCtx(j.family, rj.family);
    j.typing = sumTypingCtx(j.typing, rj.typing);
    j.counter += rj.counter;
  }
  requireDisjoint(j);
  std::vector<DerivPtr> premises;
  premises.push_back(std::move(head));
  for (DerivPtr& r : recs) premises.push_back(std::move(r));
  return mk(Rule::TFix, std::move(j), std::move(premises), std::move(w));
}

// --- checker ---

namespace {

using Path = std::vector<std::size_t>;

void fail(const Path& path, const std::string& reason) {
  throw CheckError(path, reason);
}

void checkNode(const DerivPtr& d, Path& path, const CheckOptions& opts) {
  if (!d) fail(path, "null derivation node");
  const Judgment& j = d->conclusion;
  if (!j.subject) fail(path, "missing subject");

  for (std::size_t i = 0; i < d->premises.size(); ++i) {
    path.push_back(i);
    checkNode(d->premises[i], path, opts);
    path.pop_back();
  }

  auto expectPremises = [&](std::size_t n) {
    if (d->premises.size() != n)
      fail(path, std::string(ruleStr(d->rule)) + " expects " +
                     std::to_string(n) + " premises, has " +
                     std::to_string(d->premises.size()));
  };
  auto expectKind = [&](TermKind k, const char* what) {
    if (j.subject->kind != k)
      fail(path, std::string(ruleStr(d->rule)) + " subject must be " + what);
  };
  auto sumOrFail = [&](const TypingContext& a,
                       const TypingContext& b) -> TypingContext {
    try {
      return sumTypingCtx(a, b);
    } catch (const TypeError& e) {
      fail(path, std::string("context sum: ") + e.what());
      throw;  // unreachable
    }
  };

  FamilyContext family;
  TypingContext typing;
  MultiCounter counter;
  Multitype result = Multitype::empty(Nature::Nat);

  switch (d->rule) {
    case Rule::TVar1: {
      expectPremises(0);
      expectKind(TermKind::Var, "a variable");
      typing.assign(j.subject->name, j.result);
      result = j.result;
      break;
    }
    case Rule::TVar2: {
      expectPremises(0);
      expectKind(TermKind::Var, "a variable");
      family.assign(j.subject->name, MultitypeFamily::of({j.result}));
      result = j.result;
      break;
    }
    case Rule::TAbs: {
      expectKind(TermKind::Abs, "an abstraction");
      const AbsWitness* w = std::get_if<AbsWitness>(&d->witness);
      if (!w || w->binderAssumptions.size() != d->premises.size())
        fail(path, "t-abs witness must assign one assumption per premise");
      const std::string& binder = j.subject->name;
      std::vector<TypeH> arrows;
      for (std::size_t i = 0; i < d->premises.size(); ++i) {
        const Judgment& pj = d->premises[i]->conclusion;
        if (!alphaEq(pj.subject, j.subject->body()))
          fail(path, "t-abs premise " + std::to_string(i) +
                         " does not type the abstraction body");
        if (pj.family.find(binder))
          fail(path, "t-abs binder in premise family context");
        if (!optEq(pj.typing.lookup(binder), w->binderAssumptions[i]))
          fail(path, "t-abs witness assumption " + std::to_string(i) +
                         " disagrees with the premise context");
        arrows.push_back(TypeH::arrow(w->binderAssumptions[i], pj.result));
        family = sumFamilyCtx(family, pj.family);
        typing = sumOrFail(typing, pj.typing.without(binder));
        counter += pj.counter;
      }
      result = Multitype::of(Nature::Abs, std::move(arrows));
      break;
    }
    case Rule::TApp: {
      expectPremises(2);
      expectKind(TermKind::App, "an application");
      const AppWitness* w = std::get_if<AppWitness>(&d->witness);
      if (!w) fail(path, "t-app requires a subsumption witness");
      const Judgment& fj = d->premises[0]->conclusion;
      const Judgment& aj = d->premises[1]->conclusion;
      if (!alphaEq(fj.subject, j.subject->fun()) ||
          !alphaEq(aj.subject, j.subject->arg()))
        fail(path, "t-app premise subjects do not match the application");
      if (fj.result.nature != Nature::Abs || fj.result.size() != 1)
        fail(path, "t-app function result must be a singleton abs multitype");
      const ArrowTy* arrow = fj.result.members[0].asArrow();
      if (!optEq(w->arg, *arrow->arg))
        fail(path, "t-app witness argument disagrees with the arrow");
      if (w->target != aj.result)
        fail(path, "t-app witness target disagrees with the argument premise");
      if (!subsumes(w->arg, w->target))
        fail(path, "t-app subsumption " + printOpt(w->arg) + " ◁ " +
                       printMultitype(w->target) + " fails");
      family = sumFamilyCtx(fj.family, aj.family);
      typing = sumOrFail(fj.typing, aj.typing);
      counter = MultiCounter::single(RuleName::B) + fj.counter + aj.counter;
      result = *arrow->result;
      break;
    }
    case Rule::TZero: {
      expectPremises(0);
      expectKind(TermKind::Zero, "the zero constant");
      if (j.result.nature != Nature::Nat)
        fail(path, "t-zero result must be a nat multitype");
      for (const TypeH& m : j.result.members)
        if (!m.isZero()) fail(path, "t-zero result members must all be 0t");
      if (opts.strictZero && j.result.size() > 1)
        fail(path, "t-zero multiplicity above 1 rejected by strict mode");
      result = j.result;
      break;
    }
    case Rule::TSucc: {
      expectPremises(1);
      expectKind(TermKind::Succ, "a successor");
      const SuccWitness* w = std::get_if<SuccWitness>(&d->witness);
      if (!w) fail(path, "t-succ requires a split witness");
      const Judgment& pj = d->premises[0]->conclusion;
      if (!alphaEq(pj.subject, j.subject->inner()))
        fail(path, "t-succ premise does not type the inner term");
      if (pj.result.nature != Nature::Nat)
        fail(path, "t-succ premise result must be a nat multitype");
      Multitype sum = Multitype::empty(Nature::Nat);
      std::vector<TypeH> members;
      for (const Multitype& part : w->split) {
        if (part.nature != Nature::Nat)
          fail(path, "t-succ split parts must be nat multitypes");
        sum = sumMultitype(sum, part);
        members.push_back(TypeH::succ(part));
      }
      if (sum != pj.result)
        fail(path, "t-succ split does not sum to the premise result");
      family = pj.family;
      typing = pj.typing;
      counter = pj.counter;
      result = Multitype::of(Nature::Nat, std::move(members));
      break;
    }
    case Rule::TIfZero: {
      expectPremises(2);
      expectKind(TermKind::IfZ, "a conditional");
      const Judgment& gj = d->premises[0]->conclusion;
      const Judgment& tj = d->premises[1]->conclusion;
      if (!alphaEq(gj.subject, j.subject->guard()))
        fail(path, "t-ifZero guard premise does not type the guard");
      if (!alphaEq(tj.subject, j.subject->thenBranch()))
        fail(path, "t-ifZero premise does not type the then branch");
      if (gj.result != kSingleZero)
        fail(path, "t-ifZero guard must be typed exactly [0t]nat");
      family = sumFamilyCtx(gj.family, tj.family);
      typing = sumOrFail(gj.typing, tj.typing);
      counter = MultiCounter::single(RuleName::I0) + gj.counter + tj.counter;
      result = tj.result;
      break;
    }
    case Rule::TIfSucc: {
      expectPremises(2);
      expectKind(TermKind::IfZ, "a conditional");
      const IfSuccWitness* w = std::get_if<IfSuccWitness>(&d->witness);
      if (!w) fail(path, "t-ifSucc requires a subsumption witness");
      const Judgment& gj = d->premises[0]->conclusion;
      const Judgment& ej = d->premises[1]->conclusion;
      const std::string& binder = j.subject->name;
      if (!alphaEq(gj.subject, j.subject->guard()))
        fail(path, "t-ifSucc guard premise does not type the guard");
      if (!alphaEq(ej.subject, j.subject->elseBranch()))
        fail(path, "t-ifSucc premise does not type the else branch");
      if (gj.result.nature != Nature::Nat || gj.result.size() != 1 ||
          !gj.result.members[0].asSucc())
        fail(path, "t-ifSucc guard must be typed exactly [succ(N)]nat");
      if (w->target != *gj.result.members[0].asSucc()->pred)
        fail(path, "t-ifSucc witness target disagrees with the guard type");
      if (ej.family.find(binder))
        fail(path, "t-ifSucc binder in premise family context");
      if (!optEq(w->pred, ej.typing.lookup(binder)))
        fail(path, "t-ifSucc witness assumption disagrees with the premise");
      if (!subsumes(w->pred, w->target))
        fail(path, "t-ifSucc subsumption " + printOpt(w->pred) + " ◁ " +
                       printMultitype(w->target) + " fails");
      family = sumFamilyCtx(gj.family, ej.family);
      typing = sumOrFail(gj.typing, ej.typing.without(binder));
      counter = MultiCounter::single(RuleName::IS) + gj.counter + ej.counter;
      result = ej.result;
      break;
    }
    case Rule::TFix: {
      expectKind(TermKind::Fix, "a fixed point");
      if (d->premises.empty()) fail(path, "t-fix needs a head premise");
      const FixWitness* w = std::get_if<FixWitness>(&d->witness);
      if (!w || w->family.size() != d->premises.size() - 1)
        fail(path, "t-fix witness must list one multitype per recursive premise");
      const std::string& binder = j.subject->name;
      const Judgment& hj = d->premises[0]->conclusion;
      if (!alphaEq(hj.subject, j.subject->body()))
        fail(path, "t-fix head premise does not type the body");
      if (hj.typing.contains(binder))
        fail(path, "t-fix binder in head typing context");
      if (hj.family.lookup(binder) != MultitypeFamily::of(w->family))
        fail(path, "t-fix witness family disagrees with the head context");
      family = hj.family.without(binder);
      typing = hj.typing;
      counter = MultiCounter::single(RuleName::F) + hj.counter;
      result = hj.result;
      for (std::size_t i = 1; i < d->premises.size(); ++i) {
        const Judgment& rj = d->premises[i]->conclusion;
        if (!alphaEq(rj.subject, j.subject))
          fail(path, "t-fix recursive premise " + std::to_string(i - 1) +
                         " does not type the fixed point itself");
        if (rj.result != w->family[i - 1])
          fail(path, "t-fix recursive premise " + std::to_string(i - 1) +
                         " result disagrees with the witness family");
        family = sumFamilyCtx(family, rj.family);
        typing = sumOrFail(typing, rj.typing);
        counter += rj.counter;
      }
      break;
    }
  }

  if (family != j.family) fail(path, "family context sum mismatch");
  if (typing != j.typing) fail(path, "typing context sum mismatch");
  if (counter != j.counter)
    fail(path, "counter mismatch: expected " + counter.str() + ", stored " +
                   j.counter.str());
  if (result != j.result)
    fail(path, "result mismatch: expected " + printMultitype(result) +
                   ", stored " + printMultitype(j.result));

  // Judgment invariants: disjoint contexts, relevance.
  for (const auto& [x, f] : j.family.entries())
    if (j.typing.contains(x))
      fail(path, "variable " + x + " in both family and typing context");
  const std::set<std::string>& fv = freeVars(j.subject);
  for (const auto& [x, f] : j.family.entries())
    if (!fv.count(x)) fail(path, "relevance: " + x + " not free in subject");
  for (const auto& [x, t] : j.typing.entries())
    if (!fv.count(x)) fail(path, "relevance: " + x + " not free in subject");
}

}  // namespace

Judgment checkDerivation(const DerivPtr& d, const CheckOptions& opts) {
  Path path;
  checkNode(d, path, opts);
  return d->conclusion;
}

}  // namespace pcfh
