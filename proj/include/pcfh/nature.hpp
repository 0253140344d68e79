#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace pcfh {

// Rule names indexing the reduction relation: beta, ifz-on-zero,
// ifz-on-successor, fix unfolding.
enum class RuleName : int { B = 0, I0 = 1, IS = 2, F = 3 };

inline constexpr std::array<RuleName, 4> allRuleNames{
    RuleName::B, RuleName::I0, RuleName::IS, RuleName::F};

const char* ruleNameStr(RuleName r);
std::optional<RuleName> ruleNameFromStr(const std::string& s);

// Multiset over rule names. Decorates typing judgments and summarizes traces.
struct MultiCounter {
  std::array<std::uint64_t, 4> counts{};

  static MultiCounter single(RuleName r) {
    MultiCounter m;
    m.counts[static_cast<int>(r)] = 1;
    return m;
  }

  std::uint64_t get(RuleName r) const { return counts[static_cast<int>(r)]; }
  void add(RuleName r, std::uint64_t n = 1) { counts[static_cast<int>(r)] += n; }

  std::uint64_t cardinality() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
  bool empty() const { return cardinality() == 0; }

  MultiCounter& operator+=(const MultiCounter& o) {
    for (int i = 0; i < 4; ++i) counts[i] += o.counts[i];
    return *this;
  }
  friend MultiCounter operator+(MultiCounter a, const MultiCounter& b) {
    a += b;
    return a;
  }
  // Removes one occurrence of r; false if absent.
  bool removeOne(RuleName r) {
    auto& c = counts[static_cast<int>(r)];
    if (c == 0) return false;
    --c;
    return true;
  }
  friend bool operator==(const MultiCounter& a, const MultiCounter& b) {
    return a.counts == b.counts;
  }
  friend bool operator!=(const MultiCounter& a, const MultiCounter& b) {
    return !(a == b);
  }

  // Renders as {B:a, I0:b, IS:c, F:d}.
  std::string str() const;
};

// Proper natures classify meaningful normal forms; stuck is the extra
// fallible nature for meaningless ones.
enum class Nature { Abs, Nat };
enum class FallibleNature { Abs, Nat, Stuck };

const char* natureStr(Nature n);
const char* fallibleNatureStr(FallibleNature n);

inline FallibleNature asFallible(Nature n) {
  return n == Nature::Abs ? FallibleNature::Abs : FallibleNature::Nat;
}
inline std::optional<Nature> properOf(FallibleNature e) {
  switch (e) {
    case FallibleNature::Abs: return Nature::Abs;
    case FallibleNature::Nat: return Nature::Nat;
    default: return std::nullopt;
  }
}

}  // namespace pcfh
