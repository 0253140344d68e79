#include "pcfh/types.hpp"

#include <algorithm>
#include <cctype>

namespace pcfh {

TypeH TypeH::succ(Multitype pred) {
  if (pred.nature != Nature::Nat)
    throw TypeError("succ type requires a nat multitype argument");
  return TypeH{SuccTy{std::make_shared<const Multitype>(std::move(pred))}};
}

TypeH TypeH::arrow(OptMultitype arg, Multitype result) {
  return TypeH{ArrowTy{std::make_shared<const OptMultitype>(std::move(arg)),
                       std::make_shared<const Multitype>(std::move(result))}};
}

namespace {

int rankOf(const TypeH& t) {
  if (t.isZero()) return 0;
  if (t.asSucc()) return 1;
  return 2;
}

// Comparators assuming both sides are already in canonical form; they
// never re-sort, so comparing stays linear in the type size.
int rawCmpType(const TypeH& a, const TypeH& b);

int rawCmpMultitype(const Multitype& a, const Multitype& b) {
  if (a.nature != b.nature) return a.nature == Nature::Nat ? -1 : 1;
  std::size_t n = std::min(a.members.size(), b.members.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = rawCmpType(a.members[i], b.members[i]);
    if (c != 0) return c;
  }
  if (a.members.size() != b.members.size())
    return a.members.size() < b.members.size() ? -1 : 1;
  return 0;
}

int rawCmpOpt(const OptMultitype& a, const OptMultitype& b) {
  if (!a && !b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  return rawCmpMultitype(*a, *b);
}

int rawCmpType(const TypeH& a, const TypeH& b) {
  int ra = rankOf(a), rb = rankOf(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (ra) {
    case 0:
      return 0;
    case 1:
      return rawCmpMultitype(*a.asSucc()->pred, *b.asSucc()->pred);
    default: {
      int c = rawCmpOpt(*a.asArrow()->arg, *b.asArrow()->arg);
      if (c != 0) return c;
      return rawCmpMultitype(*a.asArrow()->result, *b.asArrow()->result);
    }
  }
}

TypeH canonicalizeType(const TypeH& t) {
  if (t.isZero()) return t;
  if (const SuccTy* s = t.asSucc()) return TypeH::succ(canonicalize(*s->pred));
  const ArrowTy* ar = t.asArrow();
  OptMultitype arg =
      *ar->arg ? OptMultitype(canonicalize(**ar->arg)) : std::nullopt;
  return TypeH::arrow(std::move(arg), canonicalize(*ar->result));
}

}  // namespace

Multitype Multitype::of(Nature nature, std::vector<TypeH> members) {
  for (TypeH& m : members) {
    if (m.nature() != nature)
      throw TypeError("multitype member nature disagrees with its tag");
    m = canonicalizeType(m);
  }
  std::sort(members.begin(), members.end(), [](const TypeH& a, const TypeH& b) {
    return rawCmpType(a, b) < 0;
  });
  Multitype t;
  t.nature = nature;
  t.members = std::move(members);
  return t;
}

int cmpType(const TypeH& a, const TypeH& b) {
  return rawCmpType(canonicalizeType(a), canonicalizeType(b));
}

int cmpMultitype(const Multitype& a, const Multitype& b) {
  if (a.nature != b.nature) return a.nature == Nature::Nat ? -1 : 1;
  return rawCmpMultitype(canonicalize(a), canonicalize(b));
}

int cmpOpt(const OptMultitype& a, const OptMultitype& b) {
  if (!a && !b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  return cmpMultitype(*a, *b);
}

Multitype canonicalize(const Multitype& t) {
  return Multitype::of(t.nature, t.members);
}

bool optEq(const OptMultitype& a, const OptMultitype& b) {
  return cmpOpt(a, b) == 0;
}

bool compatible(const OptMultitype& a, const OptMultitype& b) {
  if (!a || !b) return true;
  return a->nature == b->nature;
}

Multitype sumMultitype(const Multitype& a, const Multitype& b) {
  if (a.nature != b.nature)
    throw TypeError("incompatible natures in multitype sum");
  std::vector<TypeH> ms = a.members;
  ms.insert(ms.end(), b.members.begin(), b.members.end());
  return Multitype::of(a.nature, std::move(ms));
}

OptMultitype sumOpt(const OptMultitype& a, const OptMultitype& b) {
  if (!a) return b;
  if (!b) return a;
  return sumMultitype(*a, *b);
}

bool subsumes(const OptMultitype& a, const Multitype& t) {
  if (!a) return t.isEmpty();
  return *a == t;
}

MultitypeFamily MultitypeFamily::of(std::vector<Multitype> members) {
  for (Multitype& m : members) m = canonicalize(m);
  std::sort(members.begin(), members.end(),
            [](const Multitype& a, const Multitype& b) {
              return rawCmpMultitype(a, b) < 0;
            });
  MultitypeFamily f;
  f.members = std::move(members);
  return f;
}

int cmpFamily(const MultitypeFamily& a, const MultitypeFamily& b) {
  MultitypeFamily ca = MultitypeFamily::of(a.members);
  MultitypeFamily cb = MultitypeFamily::of(b.members);
  std::size_t n = std::min(ca.members.size(), cb.members.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = rawCmpMultitype(ca.members[i], cb.members[i]);
    if (c != 0) return c;
  }
  if (ca.members.size() != cb.members.size())
    return ca.members.size() < cb.members.size() ? -1 : 1;
  return 0;
}

const MultitypeFamily* FamilyContext::find(const std::string& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? nullptr : &it->second;
}

MultitypeFamily FamilyContext::lookup(const std::string& x) const {
  const MultitypeFamily* f = find(x);
  return f ? *f : MultitypeFamily{};
}

void FamilyContext::assign(const std::string& x, MultitypeFamily f) {
  if (f.isEmpty())
    entries_.erase(x);
  else
    entries_[x] = MultitypeFamily::of(std::move(f.members));
}

FamilyContext FamilyContext::without(const std::string& x) const {
  FamilyContext out = *this;
  out.entries_.erase(x);
  return out;
}

std::set<std::string> FamilyContext::domain() const {
  std::set<std::string> out;
  for (const auto& [k, v] : entries_) out.insert(k);
  return out;
}

bool operator==(const FamilyContext& a, const FamilyContext& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  for (; ia != a.entries_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

OptMultitype TypingContext::lookup(const std::string& x) const {
  auto it = entries_.find(x);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TypingContext::assign(const std::string& x, const OptMultitype& t) {
  if (!t)
    entries_.erase(x);
  else
    entries_[x] = canonicalize(*t);
}

TypingContext TypingContext::without(const std::string& x) const {
  TypingContext out = *this;
  out.entries_.erase(x);
  return out;
}

std::set<std::string> TypingContext::domain() const {
  std::set<std::string> out;
  for (const auto& [k, v] : entries_) out.insert(k);
  return out;
}

bool operator==(const TypingContext& a, const TypingContext& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  for (; ia != a.entries_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

FamilyContext sumFamilyCtx(const FamilyContext& a, const FamilyContext& b) {
  FamilyContext out = a;
  for (const auto& [x, f] : b.entries()) {
    MultitypeFamily cur = out.lookup(x);
    cur.members.insert(cur.members.end(), f.members.begin(), f.members.end());
    out.assign(x, std::move(cur));
  }
  return out;
}

TypingContext sumTypingCtx(const TypingContext& a, const TypingContext& b) {
  TypingContext out = a;
  for (const auto& [x, t] : b.entries()) {
    OptMultitype cur = out.lookup(x);
    if (cur && cur->nature != t.nature)
      throw TypeError("incompatible natures for variable " + x +
                      " in context sum");
    out.assign(x, sumOpt(cur, t));
  }
  return out;
}

// --- textual syntax ---

std::string printMultitype(const Multitype& t) {
  Multitype c = canonicalize(t);
  std::string out = "[";
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i) out += ", ";
    out += printType(c.members[i]);
  }
  out += "]";
  out += natureStr(c.nature);
  return out;
}

std::string printOpt(const OptMultitype& t) {
  return t ? printMultitype(*t) : "bot";
}

std::string printType(const TypeH& t) {
  if (t.isZero()) return "0t";
  if (const SuccTy* s = t.asSucc()) return "succ(" + printMultitype(*s->pred) + ")";
  const ArrowTy* a = t.asArrow();
  return printOpt(*a->arg) + " -> " + printMultitype(*a->result);
}

std::string printFamily(const MultitypeFamily& f) {
  MultitypeFamily c = MultitypeFamily::of(f.members);
  std::string out = "<";
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i) out += ", ";
    out += printMultitype(c.members[i]);
  }
  out += ">";
  return out;
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(const std::string& s) : s_(s) {}

  // One type: `0t`, `succ(M)`, or `opt -> M`.
  TypeH fullType() {
    skipWs();
    if (lookingAt("bot")) {
      pos_ += 3;
      expectArrow();
      return TypeH::arrow(std::nullopt, multitype());
    }
    if (lookingAt("0t")) {
      pos_ += 2;
      return TypeH::zero();
    }
    if (lookingAt("succ(")) {
      pos_ += 5;
      Multitype p = multitype();
      expect(')');
      return TypeH::succ(std::move(p));
    }
    if (lookingAt("[")) {
      Multitype arg = multitype();
      expectArrow();
      return TypeH::arrow(OptMultitype(std::move(arg)), multitype());
    }
    throw TypeError("cannot parse type at '" + rest() + "'");
  }

  Multitype multitype() {
    skipWs();
    expect('[');
    std::vector<TypeH> members;
    skipWs();
    if (!lookingAt("]")) {
      members.push_back(fullType());
      skipWs();
      while (lookingAt(",")) {
        ++pos_;
        members.push_back(fullType());
        skipWs();
      }
    }
    expect(']');
    Nature n;
    if (lookingAt("nat")) {
      pos_ += 3;
      n = Nature::Nat;
    } else if (lookingAt("abs")) {
      pos_ += 3;
      n = Nature::Abs;
    } else {
      throw TypeError("expected nature tag 'nat' or 'abs' after ']'");
    }
    return Multitype::of(n, std::move(members));
  }

  OptMultitype opt() {
    skipWs();
    if (lookingAt("bot")) {
      pos_ += 3;
      return std::nullopt;
    }
    return multitype();
  }

  void finish() {
    skipWs();
    if (pos_ != s_.size())
      throw TypeError("trailing input in type syntax: '" + rest() + "'");
  }

 private:
  void skipWs() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool lookingAt(const std::string& w) const {
    return s_.compare(pos_, w.size(), w) == 0;
  }
  void expect(char c) {
    skipWs();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw TypeError(std::string("expected '") + c + "' at '" + rest() + "'");
    ++pos_;
  }
  void expectArrow() {
    skipWs();
    if (!lookingAt("->"))
      throw TypeError("expected '->' at '" + rest() + "'");
    pos_ += 2;
  }
  std::string rest() const { return s_.substr(pos_); }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

TypeH parseType(const std::string& text) {
  TypeParser p(text);
  TypeH t = p.fullType();
  p.finish();
  return t;
}

Multitype parseMultitype(const std::string& text) {
  TypeParser p(text);
  Multitype t = p.multitype();
  p.finish();
  return t;
}

OptMultitype parseOpt(const std::string& text) {
  TypeParser p(text);
  OptMultitype t = p.opt();
  p.finish();
  return t;
}

}  // namespace pcfh
