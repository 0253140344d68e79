#include "pcfh/eval.hpp"

#include <stdexcept>

#include "pcfh/parser.hpp"

namespace pcfh {

const char* ruleNameStr(RuleName r) {
  switch (r) {
    case RuleName::B: return "B";
    case RuleName::I0: return "I0";
    case RuleName::IS: return "IS";
    case RuleName::F: return "F";
  }
  return "?";
}

std::optional<RuleName> ruleNameFromStr(const std::string& s) {
  if (s == "B") return RuleName::B;
  if (s == "I0") return RuleName::I0;
  if (s == "IS") return RuleName::IS;
  if (s == "F") return RuleName::F;
  return std::nullopt;
}

std::string MultiCounter::str() const {
  std::string out = "{";
  out += "B:" + std::to_string(get(RuleName::B));
  out += ", I0:" + std::to_string(get(RuleName::I0));
  out += ", IS:" + std::to_string(get(RuleName::IS));
  out += ", F:" + std::to_string(get(RuleName::F));
  out += "}";
  return out;
}

const char* natureStr(Nature n) { return n == Nature::Abs ? "abs" : "nat"; }

const char* fallibleNatureStr(FallibleNature n) {
  switch (n) {
    case FallibleNature::Abs: return "abs";
    case FallibleNature::Nat: return "nat";
    case FallibleNature::Stuck: return "stuck";
  }
  return "?";
}

namespace {

// Root redex of t, if any. Root rules and congruence positions are
// mutually exclusive: redex subterms are values or irreducible guards.
std::optional<EvalStep> rootStep(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::App: {
      if (t->fun()->kind == TermKind::Abs && isValue(t->arg()))
        return EvalStep{RuleName::B, {},
                        subst(t->fun()->body(), t->fun()->name, t->arg())};
      return std::nullopt;
    }
    case TermKind::IfZ: {
      auto v = valueView(t->guard());
      if (!v || !std::holds_alternative<VNat>(*v)) return std::nullopt;
      std::uint64_t n = std::get<VNat>(*v).count;
      if (n == 0) return EvalStep{RuleName::I0, {}, t->thenBranch()};
      return EvalStep{RuleName::IS, {},
                      subst(t->elseBranch(), t->name, mkNat(n - 1))};
    }
    case TermKind::Fix:
      return EvalStep{RuleName::F, {}, subst(t->body(), t->name, t)};
    default:
      return std::nullopt;
  }
}

TermPtr plug(const TermPtr& t, int child, const TermPtr& sub) {
  switch (t->kind) {
    case TermKind::App:
      return child == 0 ? mkApp(sub, t->arg()) : mkApp(t->fun(), sub);
    case TermKind::Succ:
      return mkSucc(sub);
    case TermKind::IfZ:
      return mkIfZ(sub, t->thenBranch(), t->name, t->elseBranch());
    default:
      throw std::logic_error("plug: not a congruence position");
  }
}

void stepsInto(const TermPtr& t, int child, const TermPtr& sub,
               std::vector<EvalStep>& out) {
  for (EvalStep& s : stepAll(sub)) {
    Position pos;
    pos.reserve(s.pos.size() + 1);
    pos.push_back(child);
    pos.insert(pos.end(), s.pos.begin(), s.pos.end());
    out.push_back({s.rule, std::move(pos), plug(t, child, s.term)});
  }
}

}  // namespace

std::vector<EvalStep> stepAll(const TermPtr& t) {
  std::vector<EvalStep> out;
  if (auto root = rootStep(t)) {
    out.push_back(std::move(*root));
    return out;
  }
  switch (t->kind) {
    case TermKind::IfZ:
      stepsInto(t, 0, t->guard(), out);
      break;
    case TermKind::Succ:
      stepsInto(t, 0, t->inner(), out);
      break;
    case TermKind::App:
      stepsInto(t, 0, t->fun(), out);
      stepsInto(t, 1, t->arg(), out);
      break;
    default:
      break;
  }
  return out;
}

std::optional<EvalStep> stepDet(const TermPtr& t, Strategy strat) {
  if (auto root = rootStep(t)) return root;
  auto descend = [&](int child, const TermPtr& sub) -> std::optional<EvalStep> {
    auto s = stepDet(sub, strat);
    if (!s) return std::nullopt;
    Position pos;
    pos.reserve(s->pos.size() + 1);
    pos.push_back(child);
    pos.insert(pos.end(), s->pos.begin(), s->pos.end());
    return EvalStep{s->rule, std::move(pos), plug(t, child, s->term)};
  };
  switch (t->kind) {
    case TermKind::IfZ:
      return descend(0, t->guard());
    case TermKind::Succ:
      return descend(0, t->inner());
    case TermKind::App: {
      int first = strat == Strategy::LeftFirst ? 0 : 1;
      int second = 1 - first;
      if (auto s = descend(first, first == 0 ? t->fun() : t->arg())) return s;
      return descend(second, second == 0 ? t->fun() : t->arg());
    }
    default:
      return std::nullopt;
  }
}

std::optional<EvalStep> applyStepAt(const TermPtr& t, const Position& pos) {
  if (pos.empty()) return rootStep(t);
  int child = pos.front();
  TermPtr sub;
  switch (t->kind) {
    case TermKind::App:
      if (child != 0 && child != 1) return std::nullopt;
      sub = child == 0 ? t->fun() : t->arg();
      break;
    case TermKind::Succ:
    case TermKind::IfZ:
      if (child != 0) return std::nullopt;
      sub = t->kind == TermKind::Succ ? t->inner() : t->guard();
      break;
    default:
      return std::nullopt;
  }
  Position rest(pos.begin() + 1, pos.end());
  auto s = applyStepAt(sub, rest);
  if (!s) return std::nullopt;
  return EvalStep{s->rule, pos, plug(t, child, s->term)};
}

Trace evaluate(const TermPtr& t, std::uint64_t fuel, Strategy strat) {
  if (!isClosed(t))
    throw OpenTermError("cannot evaluate open term: " + printTerm(t));
  Trace tr;
  tr.initial = t;
  TermPtr cur = t;
  for (std::uint64_t i = 0; i < fuel; ++i) {
    auto s = stepDet(cur, strat);
    if (!s) break;
    cur = s->term;
    tr.steps.push_back(std::move(*s));
  }
  if (auto nf = classifyNF(cur)) {
    tr.status = TraceStatus::NormalForm;
    tr.nature = *nf;
  } else {
    tr.status = TraceStatus::FuelExhausted;
  }
  return tr;
}

std::optional<FallibleNature> classifyNF(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Fix:
      return std::nullopt;
    case TermKind::Abs:
      return FallibleNature::Abs;
    case TermKind::Zero:
      return FallibleNature::Nat;
    case TermKind::Succ: {
      auto e = classifyNF(t->inner());
      if (!e) return std::nullopt;
      return *e == FallibleNature::Nat ? FallibleNature::Nat
                                       : FallibleNature::Stuck;
    }
    case TermKind::App: {
      auto e = classifyNF(t->fun());
      auto e2 = classifyNF(t->arg());
      if (!e || !e2) return std::nullopt;
      // An application of normal forms is stuck unless the head is an
      // abstraction facing a value, in which case it is a beta redex.
      if (*e != FallibleNature::Abs || *e2 == FallibleNature::Stuck)
        return FallibleNature::Stuck;
      return std::nullopt;
    }
    case TermKind::IfZ: {
      auto e = classifyNF(t->guard());
      if (!e || *e == FallibleNature::Nat) return std::nullopt;
      return FallibleNature::Stuck;
    }
  }
  return std::nullopt;
}

DiamondReport diamondCheck(const TermPtr& t) {
  if (!isClosed(t))
    throw OpenTermError("diamondCheck requires a closed term");
  DiamondReport rep;
  rep.subject = t;
  auto reducts = stepAll(t);
  for (std::size_t i = 0; i < reducts.size(); ++i) {
    for (std::size_t j = i + 1; j < reducts.size(); ++j) {
      const EvalStep& a = reducts[i];
      const EvalStep& b = reducts[j];
      if (alphaEq(a.term, b.term)) continue;
      DiamondPair pair{a, b, std::nullopt};
      for (const EvalStep& sa : stepAll(a.term)) {
        if (sa.rule != b.rule) continue;
        for (const EvalStep& sb : stepAll(b.term)) {
          if (sb.rule != a.rule) continue;
          if (alphaEq(sa.term, sb.term)) {
            pair.join = sa.term;
            break;
          }
        }
        if (pair.join) break;
      }
      rep.pairs.push_back(std::move(pair));
    }
  }
  return rep;
}

}  // namespace pcfh
