#include "pcfh/transform.hpp"

#include <algorithm>

#include "pcfh/parser.hpp"

namespace pcfh {

namespace {

using TE = TransformError;

[[noreturn]] void bail(TE::Kind kind, const std::string& msg) {
  throw TransformError(kind, msg);
}

DerivPtr rawNode(Rule rule, Judgment conclusion, std::vector<DerivPtr> premises,
                 Witness witness) {
  auto d = std::make_shared<Derivation>();
  d->rule = rule;
  d->conclusion = std::move(conclusion);
  d->premises = std::move(premises);
  d->witness = std::move(witness);
  return d;
}

// Renames the free variable `old` to `neu` throughout a derivation:
// subjects, context keys and premises, consistently. `neu` must not be
// free in the subject; bound occurrences of `neu` around free `old`s
// are freshened first, mirroring term-level substitution.
DerivPtr renameFreeVar(const DerivPtr& d, const std::string& old,
                       const std::string& neu);

Judgment renameCtxKeys(const Judgment& j, const std::string& old,
                       const std::string& neu) {
  Judgment out = j;
  if (const MultitypeFamily* f = j.family.find(old)) {
    MultitypeFamily moved = *f;
    out.family = j.family.without(old);
    if (out.family.find(neu))
      throw std::logic_error("renameFreeVar: family key collision");
    out.family.assign(neu, std::move(moved));
  }
  OptMultitype t = j.typing.lookup(old);
  if (t) {
    out.typing = j.typing.without(old);
    if (out.typing.contains(neu))
      throw std::logic_error("renameFreeVar: typing key collision");
    out.typing.assign(neu, t);
  }
  return out;
}

TermPtr renameTerm(const TermPtr& t, const std::string& old,
                   const std::string& neu) {
  return subst(t, old, mkVar(neu));
}

DerivPtr renameFreeVar(const DerivPtr& d, const std::string& old,
                       const std::string& neu) {
  const Judgment& j = d->conclusion;
  if (!freeVars(j.subject).count(old)) return d;
  if (freeVars(j.subject).count(neu))
    throw std::logic_error("renameFreeVar: target already free in subject");

  Judgment out = renameCtxKeys(j, old, neu);
  std::vector<DerivPtr> premises = d->premises;

  switch (d->rule) {
    case Rule::TVar1:
    case Rule::TVar2:
      out.subject = mkVar(neu);
      break;
    case Rule::TZero:
      throw std::logic_error("renameFreeVar: zero has no free variables");
    case Rule::TApp: {
      premises[0] = renameFreeVar(premises[0], old, neu);
      premises[1] = renameFreeVar(premises[1], old, neu);
      out.subject =
          mkApp(premises[0]->conclusion.subject, premises[1]->conclusion.subject);
      break;
    }
    case Rule::TSucc: {
      premises[0] = renameFreeVar(premises[0], old, neu);
      out.subject = mkSucc(premises[0]->conclusion.subject);
      break;
    }
    case Rule::TAbs: {
      std::string binder = j.subject->name;  // != old, since old is free
      TermPtr body = j.subject->body();
      if (binder == neu) {
        std::set<std::string> avoid = allNames(j.subject);
        avoid.insert(old);
        avoid.insert(neu);
        std::string fresh = freshName(binder, avoid);
        for (DerivPtr& p : premises) p = renameFreeVar(p, binder, fresh);
        body = renameTerm(body, binder, fresh);
        binder = fresh;
      }
      for (DerivPtr& p : premises) p = renameFreeVar(p, old, neu);
      TermPtr newBody = premises.empty() ? renameTerm(body, old, neu)
                                         : premises[0]->conclusion.subject;
      out.subject = mkAbs(binder, newBody);
      break;
    }
    case Rule::TIfZero: {
      premises[0] = renameFreeVar(premises[0], old, neu);
      premises[1] = renameFreeVar(premises[1], old, neu);
      std::string binder = j.subject->name;
      TermPtr els = j.subject->elseBranch();
      if (binder != old && els->free.count(old)) {
        if (binder == neu) {
          std::set<std::string> avoid = allNames(j.subject);
          avoid.insert(old);
          avoid.insert(neu);
          std::string fresh = freshName(binder, avoid);
          els = renameTerm(els, binder, fresh);
          binder = fresh;
        }
        els = renameTerm(els, old, neu);
      }
      out.subject = mkIfZ(premises[0]->conclusion.subject,
                          premises[1]->conclusion.subject, binder, els);
      break;
    }
    case Rule::TIfSucc: {
      premises[0] = renameFreeVar(premises[0], old, neu);
      std::string binder = j.subject->name;
      TermPtr thenB = j.subject->thenBranch();
      if (thenB->free.count(old)) thenB = renameTerm(thenB, old, neu);
      if (binder != old) {
        if (binder == neu &&
            premises[1]->conclusion.subject->free.count(old)) {
          std::set<std::string> avoid = allNames(j.subject);
          avoid.insert(old);
          avoid.insert(neu);
          std::string fresh = freshName(binder, avoid);
          premises[1] = renameFreeVar(premises[1], binder, fresh);
          binder = fresh;
        }
        premises[1] = renameFreeVar(premises[1], old, neu);
      }
      out.subject = mkIfZ(premises[0]->conclusion.subject, thenB, binder,
                          premises[1]->conclusion.subject);
      break;
    }
    case Rule::TFix: {
      std::string binder = j.subject->name;  // != old
      if (binder == neu) {
        std::set<std::string> avoid = allNames(j.subject);
        avoid.insert(old);
        avoid.insert(neu);
        std::string fresh = freshName(binder, avoid);
        premises[0] = renameFreeVar(premises[0], binder, fresh);
        binder = fresh;
      }
      for (DerivPtr& p : premises) p = renameFreeVar(p, old, neu);
      out.subject = mkFix(binder, premises[0]->conclusion.subject);
      break;
    }
  }
  return rawNode(d->rule, std::move(out), std::move(premises), d->witness);
}

}  // namespace

DerivPtr natValueDeriv(const TermPtr& k, const Multitype& n) {
  if (n.nature != Nature::Nat)
    bail(TE::Kind::SubsumptionMismatch,
         "numerals can only be typed with nat multitypes");
  if (k->kind == TermKind::Zero) {
    for (const TypeH& m : n.members)
      if (!m.isZero())
        bail(TE::Kind::SubsumptionMismatch,
             "zero cannot be typed at " + printMultitype(n));
    return dZero(n.size());
  }
  if (k->kind == TermKind::Succ) {
    std::vector<Multitype> preds;
    Multitype sum = Multitype::empty(Nature::Nat);
    for (const TypeH& m : canonicalize(n).members) {
      const SuccTy* s = m.asSucc();
      if (!s)
        bail(TE::Kind::SubsumptionMismatch,
             "successor cannot be typed at " + printMultitype(n));
      preds.push_back(*s->pred);
      sum = sumMultitype(sum, *s->pred);
    }
    return dSucc(natValueDeriv(k->inner(), sum), std::move(preds));
  }
  bail(TE::Kind::SubjectMismatch, "not a numeral: " + printTerm(k));
}

DerivPtr nfTightDeriv(const TermPtr& t) {
  auto nf = classifyNF(t);
  if (!nf || !properOf(*nf))
    bail(TE::Kind::NotProperNF,
         "not a proper normal form: " + printTerm(t));
  if (*nf == FallibleNature::Abs) return dAbs(t->name, t->body(), {});
  return natValueDeriv(t, Multitype::empty(Nature::Nat));
}

DerivPtr mergeValueDerivs(
    const TermPtr& v,
    const std::vector<std::pair<DerivPtr, OptMultitype>>& parts) {
  auto vv = valueView(v);
  if (!vv) bail(TE::Kind::SubjectMismatch, "merge subject must be a value");
  for (const auto& [d, target] : parts) {
    if (!alphaEq(d->conclusion.subject, v))
      bail(TE::Kind::SubjectMismatch,
           "merge part types a different value: " +
               printTerm(d->conclusion.subject));
    if (!subsumes(target, d->conclusion.result))
      bail(TE::Kind::SubsumptionMismatch,
           "merge target " + printOpt(target) + " does not subsume " +
               printMultitype(d->conclusion.result));
  }
  if (parts.empty()) return nfTightDeriv(v);

  if (std::holds_alternative<VNat>(*vv)) {
    Multitype sum = parts[0].first->conclusion.result;
    for (std::size_t i = 1; i < parts.size(); ++i)
      sum = sumMultitype(sum, parts[i].first->conclusion.result);
    return natValueDeriv(v, sum);
  }

  const std::string& binder = v->name;
  std::vector<DerivPtr> premises;
  for (const auto& [d, target] : parts) {
    if (d->rule != Rule::TAbs)
      bail(TE::Kind::SubjectMismatch, "abstraction part must end in t-abs");
    const std::string& their = d->conclusion.subject->name;
    for (const DerivPtr& p : d->premises)
      premises.push_back(their == binder ? p
                                         : renameFreeVar(p, their, binder));
  }
  return dAbs(binder, v->body(), std::move(premises));
}

std::vector<DerivPtr> splitValueDeriv(const DerivPtr& d,
                                      const SplitRequest& req) {
  const Judgment& j = d->conclusion;
  auto vv = valueView(j.subject);
  if (!vv) bail(TE::Kind::SubjectMismatch, "split subject must be a value");
  OptMultitype total;
  for (const OptMultitype& t : req.targets) {
    if (!compatible(total, t))
      bail(TE::Kind::SubsumptionMismatch, "split targets are incompatible");
    total = sumOpt(total, t);
  }
  if (!subsumes(total, j.result))
    bail(TE::Kind::SubsumptionMismatch,
         "split request does not subsume the derivation result");

  std::vector<DerivPtr> out;
  if (std::holds_alternative<VNat>(*vv)) {
    for (const OptMultitype& t : req.targets)
      out.push_back(
          natValueDeriv(j.subject, t ? *t : Multitype::empty(Nature::Nat)));
    return out;
  }

  // Abstraction: partition the t-abs premises so part i's arrow multiset
  // equals its target; members are matched to the lowest unused premise.
  const AbsWitness* w = std::get_if<AbsWitness>(&d->witness);
  if (d->rule != Rule::TAbs || !w)
    bail(TE::Kind::SubjectMismatch, "abstraction split needs a t-abs tree");
  std::vector<TypeH> arrows;
  for (std::size_t i = 0; i < d->premises.size(); ++i)
    arrows.push_back(TypeH::arrow(w->binderAssumptions[i],
                                  d->premises[i]->conclusion.result));
  std::vector<bool> used(arrows.size(), false);
  for (const OptMultitype& t : req.targets) {
    std::vector<DerivPtr> selected;
    if (t) {
      for (const TypeH& m : canonicalize(*t).members) {
        bool found = false;
        for (std::size_t i = 0; i < arrows.size(); ++i) {
          if (!used[i] && arrows[i] == m) {
            used[i] = true;
            selected.push_back(d->premises[i]);
            found = true;
            break;
          }
        }
        if (!found)
          bail(TE::Kind::SubsumptionMismatch,
               "no premise matches requested member " + printType(m));
      }
    }
    out.push_back(dAbs(j.subject->name, j.subject->body(), std::move(selected)));
  }
  for (bool u : used)
    if (!u)
      bail(TE::Kind::SubsumptionMismatch,
           "split request does not cover the full result");
  return out;
}

namespace {

enum class SubstMode { Value, Family };

bool premiseShadowed(const DerivPtr& d, std::size_t i, const std::string& x) {
  // Only t-ifSucc can shadow x in one premise while x stays free in the
  // subject (via the guard); t-abs and t-fix binders remove x from the
  // whole subject, which the fv test already filters.
  return d->rule == Rule::TIfSucc && i == 1 && d->conclusion.subject->name == x;
}

void collectLeafTypes(const DerivPtr& d, const std::string& x, SubstMode mode,
                      std::vector<Multitype>& out) {
  const Judgment& j = d->conclusion;
  if (!freeVars(j.subject).count(x)) return;
  if (j.subject->kind == TermKind::Var && j.subject->name == x) {
    Rule expect = mode == SubstMode::Value ? Rule::TVar1 : Rule::TVar2;
    if (d->rule != expect)
      bail(TE::Kind::AssumptionMismatch,
           std::string(ruleStr(d->rule)) + " leaf for " + x +
               " in the wrong context kind");
    out.push_back(j.result);
    return;
  }
  for (std::size_t i = 0; i < d->premises.size(); ++i)
    if (!premiseShadowed(d, i, x))
      collectLeafTypes(d->premises[i], x, mode, out);
}

// Rewrites d's subjects along t{x:=repl}, consuming `pieces` (one per
// x-leaf, in the same DFS order as collectLeafTypes) in place of the
// variable leaves. All conclusions are recomputed by the builders.
DerivPtr rebuildSubst(const DerivPtr& d, const std::string& x,
                      const TermPtr& repl, SubstMode mode,
                      const std::vector<DerivPtr>& pieces, std::size_t& next) {
  const Judgment& j = d->conclusion;
  const TermPtr& subject = j.subject;
  if (!freeVars(subject).count(x)) return d;
  if (subject->kind == TermKind::Var && subject->name == x)
    return pieces[next++];

  switch (d->rule) {
    case Rule::TAbs: {
      std::string binder = subject->name;  // != x
      TermPtr body = subject->body();
      std::vector<DerivPtr> premises = d->premises;
      if (freeVars(repl).count(binder)) {
        std::set<std::string> avoid = freeVars(repl);
        avoid.insert(body->free.begin(), body->free.end());
        avoid.insert(x);
        std::string fresh = freshName(binder, avoid);
        for (DerivPtr& p : premises) p = renameFreeVar(p, binder, fresh);
        body = renameTerm(body, binder, fresh);
        binder = fresh;
      }
      for (DerivPtr& p : premises)
        p = rebuildSubst(p, x, repl, mode, pieces, next);
      return dAbs(binder, subst(body, x, repl), std::move(premises));
    }
    case Rule::TApp: {
      DerivPtr f = rebuildSubst(d->premises[0], x, repl, mode, pieces, next);
      DerivPtr a = rebuildSubst(d->premises[1], x, repl, mode, pieces, next);
      return dApp(std::move(f), std::move(a));
    }
    case Rule::TSucc: {
      DerivPtr p = rebuildSubst(d->premises[0], x, repl, mode, pieces, next);
      return dSucc(std::move(p), std::get<SuccWitness>(d->witness).split);
    }
    case Rule::TIfZero: {
      DerivPtr g = rebuildSubst(d->premises[0], x, repl, mode, pieces, next);
      DerivPtr th = rebuildSubst(d->premises[1], x, repl, mode, pieces, next);
      std::string binder = subject->name;
      TermPtr els = subject->elseBranch();
      if (binder != x && els->free.count(x)) {
        if (freeVars(repl).count(binder)) {
          std::set<std::string> avoid = freeVars(repl);
          avoid.insert(els->free.begin(), els->free.end());
          avoid.insert(x);
          std::string fresh = freshName(binder, avoid);
          els = renameTerm(els, binder, fresh);
          binder = fresh;
        }
        els = subst(els, x, repl);
      }
      return dIfZero(std::move(g), std::move(th), binder, els);
    }
    case Rule::TIfSucc: {
      DerivPtr g = rebuildSubst(d->premises[0], x, repl, mode, pieces, next);
      std::string binder = subject->name;
      TermPtr thenB = subject->thenBranch();
      if (thenB->free.count(x)) thenB = subst(thenB, x, repl);
      DerivPtr els = d->premises[1];
      if (binder != x) {
        if (freeVars(repl).count(binder) &&
            els->conclusion.subject->free.count(x)) {
          std::set<std::string> avoid = freeVars(repl);
          const auto& efv = els->conclusion.subject->free;
          avoid.insert(efv.begin(), efv.end());
          avoid.insert(x);
          std::string fresh = freshName(binder, avoid);
          els = renameFreeVar(els, binder, fresh);
          binder = fresh;
        }
        els = rebuildSubst(els, x, repl, mode, pieces, next);
      }
      return dIfSucc(std::move(g), thenB, binder, std::move(els));
    }
    case Rule::TFix: {
      std::string binder = subject->name;  // != x
      std::vector<DerivPtr> premises = d->premises;
      if (freeVars(repl).count(binder)) {
        std::set<std::string> avoid = freeVars(repl);
        const auto& bfv = premises[0]->conclusion.subject->free;
        avoid.insert(bfv.begin(), bfv.end());
        avoid.insert(x);
        std::string fresh = freshName(binder, avoid);
        premises[0] = renameFreeVar(premises[0], binder, fresh);
        binder = fresh;
      }
      DerivPtr head = rebuildSubst(premises[0], x, repl, mode, pieces, next);
      std::vector<DerivPtr> recs;
      for (std::size_t i = 1; i < premises.size(); ++i)
        recs.push_back(rebuildSubst(premises[i], x, repl, mode, pieces, next));
      return dFix(binder, std::move(head), std::move(recs));
    }
    default:
      throw std::logic_error("rebuildSubst: leaf rule with x free");
  }
}

}  // namespace

DerivPtr substValueDeriv(const DerivPtr& body, const std::string& x,
                         const DerivPtr& value) {
  const Judgment& bj = body->conclusion;
  const Judgment& vj = value->conclusion;
  if (!isValue(vj.subject))
    bail(TE::Kind::AssumptionMismatch,
         "value substitution requires a value derivation, got " +
             printTerm(vj.subject));
  OptMultitype assumption = bj.typing.lookup(x);
  if (!subsumes(assumption, vj.result))
    bail(TE::Kind::AssumptionMismatch,
         "assumption " + printOpt(assumption) + " does not subsume " +
             printMultitype(vj.result));
  std::vector<DerivPtr> pieces;
  if (assumption) {
    std::vector<Multitype> leafTypes;
    collectLeafTypes(body, x, SubstMode::Value, leafTypes);
    SplitRequest req;
    for (Multitype& t : leafTypes) req.targets.emplace_back(std::move(t));
    pieces = splitValueDeriv(value, req);
  } else if (!vj.family.isEmpty() || !vj.typing.isEmpty() ||
             !vj.counter.empty()) {
    bail(TE::Kind::AssumptionMismatch,
         "discarded value must carry an empty judgment");
  }
  std::size_t next = 0;
  DerivPtr out = rebuildSubst(body, x, vj.subject, SubstMode::Value, pieces,
                              next);
  if (next != pieces.size())
    throw std::logic_error("substValueDeriv: unused value pieces");
  return out;
}

DerivPtr substFamilyDeriv(const DerivPtr& body, const std::string& x,
                          const TermPtr& q, std::vector<DerivPtr> parts) {
  const Judgment& bj = body->conclusion;
  std::vector<Multitype> results;
  for (const DerivPtr& p : parts) {
    if (!alphaEq(p->conclusion.subject, q))
      bail(TE::Kind::SubjectMismatch,
           "family part types a different term: " +
               printTerm(p->conclusion.subject));
    results.push_back(p->conclusion.result);
  }
  if (bj.family.lookup(x) != MultitypeFamily::of(results))
    bail(TE::Kind::FamilyMismatch,
         "family assumption for " + x + " does not match the parts");

  std::vector<Multitype> leafTypes;
  collectLeafTypes(body, x, SubstMode::Family, leafTypes);
  // One part per leaf; ties between equal multitypes resolved left to
  // right, which keeps round-trips deterministic.
  std::vector<DerivPtr> assigned;
  std::vector<bool> used(parts.size(), false);
  for (const Multitype& lt : leafTypes) {
    bool found = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!used[i] && parts[i]->conclusion.result == lt) {
        used[i] = true;
        assigned.push_back(parts[i]);
        found = true;
        break;
      }
    }
    if (!found)
      bail(TE::Kind::FamilyMismatch,
           "no part types q at " + printMultitype(lt));
  }
  std::size_t next = 0;
  DerivPtr out =
      rebuildSubst(body, x, q, SubstMode::Family, assigned, next);
  if (next != assigned.size())
    throw std::logic_error("substFamilyDeriv: unused parts");
  return out;
}

namespace {

DerivPtr reduceAt(const DerivPtr& d, RuleName rule, const Position& pos,
                  std::size_t depth) {
  const TermPtr& subject = d->conclusion.subject;
  if (depth == pos.size()) {
    switch (rule) {
      case RuleName::B: {
        if (d->rule != Rule::TApp)
          bail(TE::Kind::StepMismatch, "beta step at a non-application node");
        const DerivPtr& absD = d->premises[0];
        if (absD->rule != Rule::TAbs || absD->premises.size() != 1)
          bail(TE::Kind::StepMismatch,
               "beta redex head must be a singleton t-abs");
        return substValueDeriv(absD->premises[0],
                               absD->conclusion.subject->name, d->premises[1]);
      }
      case RuleName::I0: {
        if (d->rule != Rule::TIfZero)
          bail(TE::Kind::StepMismatch, "I0 step at a non-ifZero node");
        return d->premises[1];
      }
      case RuleName::IS: {
        if (d->rule != Rule::TIfSucc)
          bail(TE::Kind::StepMismatch, "IS step at a non-ifSucc node");
        const DerivPtr& guardD = d->premises[0];
        if (guardD->rule != Rule::TSucc || guardD->premises.empty())
          bail(TE::Kind::StepMismatch, "IS guard must end in t-succ");
        // Singleton [succ(N)] forces a one-part split typing the
        // predecessor at N.
        return substValueDeriv(d->premises[1], subject->name,
                               guardD->premises[0]);
      }
      case RuleName::F: {
        if (d->rule != Rule::TFix)
          bail(TE::Kind::StepMismatch, "F step at a non-fix node");
        std::vector<DerivPtr> recs(d->premises.begin() + 1, d->premises.end());
        return substFamilyDeriv(d->premises[0], subject->name, subject,
                                std::move(recs));
      }
    }
    throw std::logic_error("reduceAt: bad rule");
  }
  int child = pos[depth];
  switch (d->rule) {
    case Rule::TApp: {
      if (child == 0)
        return dApp(reduceAt(d->premises[0], rule, pos, depth + 1),
                    d->premises[1]);
      if (child == 1)
        return dApp(d->premises[0],
                    reduceAt(d->premises[1], rule, pos, depth + 1));
      break;
    }
    case Rule::TSucc: {
      if (child == 0)
        return dSucc(reduceAt(d->premises[0], rule, pos, depth + 1),
                     std::get<SuccWitness>(d->witness).split);
      break;
    }
    case Rule::TIfZero: {
      if (child == 0)
        return dIfZero(reduceAt(d->premises[0], rule, pos, depth + 1),
                       d->premises[1], subject->name, subject->elseBranch());
      break;
    }
    case Rule::TIfSucc: {
      if (child == 0)
        return dIfSucc(reduceAt(d->premises[0], rule, pos, depth + 1),
                       subject->thenBranch(), subject->name, d->premises[1]);
      break;
    }
    default:
      break;
  }
  bail(TE::Kind::StepMismatch,
       "reduction position does not match the derivation shape");
}

}  // namespace

DerivPtr subjectReduce(const DerivPtr& d, const EvalStep& step) {
  auto applied = applyStepAt(d->conclusion.subject, step.pos);
  if (!applied || applied->rule != step.rule ||
      (step.term && !alphaEq(applied->term, step.term)))
    bail(TE::Kind::StepMismatch,
         "step does not apply to the derivation subject");
  return reduceAt(d, step.rule, step.pos, 0);
}

namespace {

// Lockstep walk of the pre-substitution pattern t against a derivation
// of t{x:=repl}: derivations of the replaced copies are excised into
// `pieces` and variable leaves planted in their stead; everything else
// is rebuilt with the pattern's names.
DerivPtr antiWalk(const TermPtr& tPat, const DerivPtr& d, const std::string& x,
                  SubstMode mode, std::vector<DerivPtr>& pieces) {
  if (!freeVars(tPat).count(x)) return d;
  if (tPat->kind == TermKind::Var) {  // tPat is exactly x
    pieces.push_back(d);
    return mode == SubstMode::Value ? dVar1(x, d->conclusion.result)
                                    : dVar2(x, d->conclusion.result);
  }
  const TermPtr& subject = d->conclusion.subject;
  if (subject->kind != tPat->kind)
    bail(TE::Kind::ShapeMismatch,
         "derivation shape disagrees with the substitution pattern");

  switch (d->rule) {
    case Rule::TAbs: {
      const std::string& y = tPat->name;  // != x, else x not free in tPat
      const std::string& yd = subject->name;
      TermPtr bodyPat =
          y == yd ? tPat->body() : renameTerm(tPat->body(), y, yd);
      std::vector<DerivPtr> premises;
      for (const DerivPtr& p : d->premises) {
        DerivPtr walked = antiWalk(bodyPat, p, x, mode, pieces);
        premises.push_back(y == yd ? walked : renameFreeVar(walked, yd, y));
      }
      return dAbs(y, tPat->body(), std::move(premises));
    }
    case Rule::TApp: {
      DerivPtr f = antiWalk(tPat->fun(), d->premises[0], x, mode, pieces);
      DerivPtr a = antiWalk(tPat->arg(), d->premises[1], x, mode, pieces);
      return dApp(std::move(f), std::move(a));
    }
    case Rule::TSucc: {
      DerivPtr p = antiWalk(tPat->inner(), d->premises[0], x, mode, pieces);
      return dSucc(std::move(p), std::get<SuccWitness>(d->witness).split);
    }
    case Rule::TIfZero: {
      DerivPtr g = antiWalk(tPat->guard(), d->premises[0], x, mode, pieces);
      DerivPtr th =
          antiWalk(tPat->thenBranch(), d->premises[1], x, mode, pieces);
      return dIfZero(std::move(g), std::move(th), tPat->name,
                     tPat->elseBranch());
    }
    case Rule::TIfSucc: {
      DerivPtr g = antiWalk(tPat->guard(), d->premises[0], x, mode, pieces);
      const std::string& y = tPat->name;
      const std::string& yd = subject->name;
      DerivPtr els;
      if (y != x && tPat->elseBranch()->free.count(x)) {
        TermPtr elsePat = y == yd ? tPat->elseBranch()
                                  : renameTerm(tPat->elseBranch(), y, yd);
        els = antiWalk(elsePat, d->premises[1], x, mode, pieces);
        if (y != yd) els = renameFreeVar(els, yd, y);
      } else {
        els = y == yd ? d->premises[1]
                      : renameFreeVar(d->premises[1], yd, y);
      }
      return dIfSucc(std::move(g), tPat->thenBranch(), y, std::move(els));
    }
    case Rule::TFix: {
      const std::string& y = tPat->name;  // != x
      const std::string& yd = subject->name;
      TermPtr bodyPat =
          y == yd ? tPat->body() : renameTerm(tPat->body(), y, yd);
      DerivPtr head = antiWalk(bodyPat, d->premises[0], x, mode, pieces);
      if (y != yd) head = renameFreeVar(head, yd, y);
      std::vector<DerivPtr> recs;
      for (std::size_t i = 1; i < d->premises.size(); ++i)
        recs.push_back(antiWalk(tPat, d->premises[i], x, mode, pieces));
      return dFix(y, std::move(head), std::move(recs));
    }
    default:
      bail(TE::Kind::ShapeMismatch,
           "leaf rule cannot type a compound pattern");
  }
}

}  // namespace

ValueDecomposition antiSubstValue(const DerivPtr& d, const TermPtr& t,
                                  const std::string& x, const TermPtr& v) {
  if (!isValue(v))
    bail(TE::Kind::ShapeMismatch, "anti-substitution of a non-value");
  if (!alphaEq(d->conclusion.subject, subst(t, x, v)))
    bail(TE::Kind::ShapeMismatch,
         "derivation subject is not t{x:=v} for the given decomposition");
  std::vector<DerivPtr> pieces;
  DerivPtr body = antiWalk(t, d, x, SubstMode::Value, pieces);
  ValueDecomposition out;
  out.body = std::move(body);
  if (pieces.empty()) {
    out.value = nfTightDeriv(v);
    out.assumption = std::nullopt;
  } else {
    std::vector<std::pair<DerivPtr, OptMultitype>> parts;
    for (DerivPtr& p : pieces)
      parts.emplace_back(p, OptMultitype(p->conclusion.result));
    out.value = mergeValueDerivs(v, parts);
    out.assumption = out.value->conclusion.result;
  }
  return out;
}

FamilyDecomposition antiSubstFamily(const DerivPtr& d, const TermPtr& t,
                                    const std::string& x, const TermPtr& q) {
  if (!alphaEq(d->conclusion.subject, subst(t, x, q)))
    bail(TE::Kind::ShapeMismatch,
         "derivation subject is not t{x:=q} for the given decomposition");
  FamilyDecomposition out;
  out.body = antiWalk(t, d, x, SubstMode::Family, out.parts);
  return out;
}

namespace {

DerivPtr expandAt(const DerivPtr& d, const TermPtr& src, RuleName rule,
                  const Position& pos, std::size_t depth) {
  if (depth == pos.size()) {
    switch (rule) {
      case RuleName::B: {
        // src = (\x. s) v
        const TermPtr& lam = src->fun();
        ValueDecomposition dec =
            antiSubstValue(d, lam->body(), lam->name, src->arg());
        DerivPtr absD = dAbs(lam->name, lam->body(), {dec.body});
        return dApp(std::move(absD), dec.value);
      }
      case RuleName::I0:
        return dIfZero(dZero(1), d, src->name, src->elseBranch());
      case RuleName::IS: {
        // src = ifz(S k; s; y. u); d types u{y:=k}
        TermPtr pred = src->guard()->inner();
        ValueDecomposition dec =
            antiSubstValue(d, src->elseBranch(), src->name, pred);
        DerivPtr guardD =
            dSucc(dec.value, {dec.value->conclusion.result});
        return dIfSucc(std::move(guardD), src->thenBranch(), src->name,
                       dec.body);
      }
      case RuleName::F: {
        FamilyDecomposition dec =
            antiSubstFamily(d, src->body(), src->name, src);
        return dFix(src->name, dec.body, std::move(dec.parts));
      }
    }
    throw std::logic_error("expandAt: bad rule");
  }
  int child = pos[depth];
  switch (src->kind) {
    case TermKind::App: {
      if (d->rule != Rule::TApp) break;
      if (child == 0)
        return dApp(
            expandAt(d->premises[0], src->fun(), rule, pos, depth + 1),
            d->premises[1]);
      if (child == 1)
        return dApp(d->premises[0], expandAt(d->premises[1], src->arg(), rule,
                                             pos, depth + 1));
      break;
    }
    case TermKind::Succ: {
      if (d->rule != Rule::TSucc || child != 0) break;
      return dSucc(expandAt(d->premises[0], src->inner(), rule, pos, depth + 1),
                   std::get<SuccWitness>(d->witness).split);
    }
    case TermKind::IfZ: {
      if (child != 0) break;
      if (d->rule == Rule::TIfZero)
        return dIfZero(
            expandAt(d->premises[0], src->guard(), rule, pos, depth + 1),
            d->premises[1], src->name, src->elseBranch());
      if (d->rule == Rule::TIfSucc) {
        const std::string& yd = d->conclusion.subject->name;
        DerivPtr els = yd == src->name
                           ? d->premises[1]
                           : renameFreeVar(d->premises[1], yd, src->name);
        return dIfSucc(
            expandAt(d->premises[0], src->guard(), rule, pos, depth + 1),
            src->thenBranch(), src->name, std::move(els));
      }
      break;
    }
    default:
      break;
  }
  bail(TE::Kind::StepMismatch,
       "expansion position does not match the derivation shape");
}

}  // namespace

DerivPtr subjectExpand(const DerivPtr& d, const ExpansionStep& step) {
  auto applied = applyStepAt(step.source, step.pos);
  if (!applied || applied->rule != step.rule ||
      !alphaEq(applied->term, d->conclusion.subject))
    bail(TE::Kind::StepMismatch,
         "expansion step does not lead to the derivation subject");
  return expandAt(d, step.source, step.rule, step.pos, 0);
}

}  // namespace pcfh
