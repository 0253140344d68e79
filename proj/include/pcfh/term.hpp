#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

namespace pcfh {

enum class TermKind { Var, Abs, App, Zero, Succ, IfZ, Fix };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term node, shared freely. Binding occurrences: Abs/Fix bind
// `name` in their body; IfZ binds `name` in the else branch only (the
// predecessor of the guard).
class Term {
 public:
  TermKind kind;
  std::string name;        // Var name, or binder of Abs/Fix/IfZ
  TermPtr sub0, sub1, sub2;
  std::set<std::string> free;  // cached free variables

  const TermPtr& body() const { return sub0; }   // Abs, Fix
  const TermPtr& fun() const { return sub0; }    // App
  const TermPtr& arg() const { return sub1; }    // App
  const TermPtr& inner() const { return sub0; }  // Succ
  const TermPtr& guard() const { return sub0; }  // IfZ
  const TermPtr& thenBranch() const { return sub1; }
  const TermPtr& elseBranch() const { return sub2; }
};

TermPtr mkVar(std::string name);
TermPtr mkAbs(std::string binder, TermPtr body);
TermPtr mkApp(TermPtr fun, TermPtr arg);
TermPtr mkZero();
TermPtr mkSucc(TermPtr inner);
TermPtr mkIfZ(TermPtr guard, TermPtr thenBranch, std::string binder,
              TermPtr elseBranch);
TermPtr mkFix(std::string binder, TermPtr body);

// The numeral S^n(0).
TermPtr mkNat(std::uint64_t n);

inline const std::set<std::string>& freeVars(const TermPtr& t) {
  return t->free;
}
inline bool isClosed(const TermPtr& t) { return t->free.empty(); }

// Capture-avoiding substitution t{x:=s}. Clashing binders are freshened
// with a numeric suffix on their base name.
TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s);

// Equality up to renaming of bound variables; free variables by name.
bool alphaEq(const TermPtr& a, const TermPtr& b);

struct VAbs {
  std::string binder;
  TermPtr body;
};
struct VNat {
  std::uint64_t count;  // the value S^count(0)
};
using ValueView = std::variant<VAbs, VNat>;

// Some iff t is a value: an abstraction or a literal numeral.
std::optional<ValueView> valueView(const TermPtr& t);
inline bool isValue(const TermPtr& t) { return valueView(t).has_value(); }

// A name based on `hint` (digits stripped, numeric suffix appended as
// needed) that avoids every name in `avoid`.
std::string freshName(const std::string& hint,
                      const std::set<std::string>& avoid);

// Every identifier occurring in t, bound or free.
std::set<std::string> allNames(const TermPtr& t);

std::uint64_t termSize(const TermPtr& t);

}  // namespace pcfh
