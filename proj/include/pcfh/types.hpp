#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pcfh/nature.hpp"

namespace pcfh {

class TypeError : public std::runtime_error {
 public:
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TypeH;
struct Multitype;

// A multitype or ⊥; ⊥ marks a discarded value-bound variable.
using OptMultitype = std::optional<Multitype>;

// Nature-tagged multiset of types. The tag matters even when empty:
// []nat and []abs are distinct. Members are kept in canonical order by
// the factory; raw construction plus canonicalize() is also allowed.
struct Multitype {
  Nature nature = Nature::Nat;
  std::vector<TypeH> members;

  static Multitype of(Nature nature, std::vector<TypeH> members);
  static Multitype empty(Nature nature) { return of(nature, {}); }

  bool isEmpty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

struct ArrowTy {
  std::shared_ptr<const OptMultitype> arg;
  std::shared_ptr<const Multitype> result;
};
struct ZeroTy {};
struct SuccTy {
  std::shared_ptr<const Multitype> pred;  // nature nat
};

// abs-types are arrows; nat-types are 0t or succ(N).
struct TypeH {
  std::variant<ZeroTy, SuccTy, ArrowTy> node;

  static TypeH zero() { return TypeH{ZeroTy{}}; }
  static TypeH succ(Multitype pred);
  static TypeH arrow(OptMultitype arg, Multitype result);

  Nature nature() const {
    return std::holds_alternative<ArrowTy>(node) ? Nature::Abs : Nature::Nat;
  }
  bool isZero() const { return std::holds_alternative<ZeroTy>(node); }
  const SuccTy* asSucc() const { return std::get_if<SuccTy>(&node); }
  const ArrowTy* asArrow() const { return std::get_if<ArrowTy>(&node); }
};

// Fixed total structural order: ZeroTy < SuccTy < Arrow, recursing
// lexicographically. Gives every multitype a unique canonical form.
int cmpType(const TypeH& a, const TypeH& b);
int cmpMultitype(const Multitype& a, const Multitype& b);
int cmpOpt(const OptMultitype& a, const OptMultitype& b);

Multitype canonicalize(const Multitype& t);

inline bool operator==(const Multitype& a, const Multitype& b) {
  return cmpMultitype(a, b) == 0;
}
inline bool operator!=(const Multitype& a, const Multitype& b) {
  return !(a == b);
}
inline bool operator==(const TypeH& a, const TypeH& b) {
  return cmpType(a, b) == 0;
}
inline bool operator!=(const TypeH& a, const TypeH& b) { return !(a == b); }
bool optEq(const OptMultitype& a, const OptMultitype& b);

// Same nature, or either side ⊥.
bool compatible(const OptMultitype& a, const OptMultitype& b);

// Multiset union of members; natures must agree.
Multitype sumMultitype(const Multitype& a, const Multitype& b);

// ⊥ is neutral: ⊥+⊥ = ⊥, ⊥+T = T.
OptMultitype sumOpt(const OptMultitype& a, const OptMultitype& b);

// Subsumption a ◁ T: ⊥ ◁ []ν and T ◁ T. The system's only weakening.
bool subsumes(const OptMultitype& a, const Multitype& t);

// Multiset of multitypes assigned to a fix-bound variable; one member
// per copy produced by unfolding. Kept canonically sorted.
struct MultitypeFamily {
  std::vector<Multitype> members;

  static MultitypeFamily of(std::vector<Multitype> members);
  bool isEmpty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

int cmpFamily(const MultitypeFamily& a, const MultitypeFamily& b);
inline bool operator==(const MultitypeFamily& a, const MultitypeFamily& b) {
  return cmpFamily(a, b) == 0;
}
inline bool operator!=(const MultitypeFamily& a, const MultitypeFamily& b) {
  return !(a == b);
}

// CBN-style assumptions: variables bound by fixed points. Finite
// support; only nonempty families are stored.
class FamilyContext {
 public:
  FamilyContext() = default;

  const MultitypeFamily* find(const std::string& x) const;
  MultitypeFamily lookup(const std::string& x) const;  // empty if absent
  void assign(const std::string& x, MultitypeFamily f);
  FamilyContext without(const std::string& x) const;
  bool isEmpty() const { return entries_.empty(); }
  std::set<std::string> domain() const;
  const std::map<std::string, MultitypeFamily>& entries() const {
    return entries_;
  }

  friend bool operator==(const FamilyContext& a, const FamilyContext& b);
  friend bool operator!=(const FamilyContext& a, const FamilyContext& b) {
    return !(a == b);
  }

 private:
  std::map<std::string, MultitypeFamily> entries_;
};

// CBV-style assumptions: variables bound by abstractions and
// conditionals. ⊥ outside the stored domain; note that an explicit
// empty multitype entry is distinct from ⊥.
class TypingContext {
 public:
  TypingContext() = default;

  OptMultitype lookup(const std::string& x) const;  // ⊥ if absent
  void assign(const std::string& x, const OptMultitype& t);
  TypingContext without(const std::string& x) const;
  bool isEmpty() const { return entries_.empty(); }
  bool contains(const std::string& x) const { return entries_.count(x) > 0; }
  std::set<std::string> domain() const;
  const std::map<std::string, Multitype>& entries() const { return entries_; }

  friend bool operator==(const TypingContext& a, const TypingContext& b);
  friend bool operator!=(const TypingContext& a, const TypingContext& b) {
    return !(a == b);
  }

 private:
  std::map<std::string, Multitype> entries_;
};

// Pointwise sums; the typing-context sum requires pointwise
// compatibility and throws TypeError naming the clashing variable.
FamilyContext sumFamilyCtx(const FamilyContext& a, const FamilyContext& b);
TypingContext sumTypingCtx(const TypingContext& a, const TypingContext& b);

// Textual syntax used by the CLI and inside derivation JSON:
//   multitype := `[` type (`,` type)* `]` (`nat`|`abs`)
//   type      := `0t` | `succ(` multitype `)` | opt ` -> ` multitype
//   opt       := `bot` | multitype
//   family    := `<` multitype (`, ` multitype)* `>`
std::string printType(const TypeH& t);
std::string printMultitype(const Multitype& t);
std::string printOpt(const OptMultitype& t);
std::string printFamily(const MultitypeFamily& f);

TypeH parseType(const std::string& text);
Multitype parseMultitype(const std::string& text);
OptMultitype parseOpt(const std::string& text);

}  // namespace pcfh
