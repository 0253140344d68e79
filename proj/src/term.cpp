#include "pcfh/term.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace pcfh {

namespace {

TermPtr node(TermKind k, std::string name, TermPtr a, TermPtr b, TermPtr c) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->name = std::move(name);
  t->sub0 = std::move(a);
  t->sub1 = std::move(b);
  t->sub2 = std::move(c);
  switch (k) {
    case TermKind::Var:
      t->free.insert(t->name);
      break;
    case TermKind::Abs:
    case TermKind::Fix:
      t->free = t->sub0->free;
      t->free.erase(t->name);
      break;
    case TermKind::App:
      t->free = t->sub0->free;
      t->free.insert(t->sub1->free.begin(), t->sub1->free.end());
      break;
    case TermKind::Zero:
      break;
    case TermKind::Succ:
      t->free = t->sub0->free;
      break;
    case TermKind::IfZ: {
      t->free = t->sub2->free;
      t->free.erase(t->name);
      t->free.insert(t->sub0->free.begin(), t->sub0->free.end());
      t->free.insert(t->sub1->free.begin(), t->sub1->free.end());
      break;
    }
  }
  return t;
}

}  // namespace

TermPtr mkVar(std::string name) {
  return node(TermKind::Var, std::move(name), nullptr, nullptr, nullptr);
}
TermPtr mkAbs(std::string binder, TermPtr body) {
  return node(TermKind::Abs, std::move(binder), std::move(body), nullptr,
              nullptr);
}
TermPtr mkApp(TermPtr fun, TermPtr arg) {
  return node(TermKind::App, "", std::move(fun), std::move(arg), nullptr);
}
TermPtr mkZero() {
  return node(TermKind::Zero, "", nullptr, nullptr, nullptr);
}
TermPtr mkSucc(TermPtr inner) {
  return node(TermKind::Succ, "", std::move(inner), nullptr, nullptr);
}
TermPtr mkIfZ(TermPtr guard, TermPtr thenBranch, std::string binder,
              TermPtr elseBranch) {
  return node(TermKind::IfZ, std::move(binder), std::move(guard),
              std::move(thenBranch), std::move(elseBranch));
}
TermPtr mkFix(std::string binder, TermPtr body) {
  return node(TermKind::Fix, std::move(binder), std::move(body), nullptr,
              nullptr);
}

TermPtr mkNat(std::uint64_t n) {
  TermPtr t = mkZero();
  for (std::uint64_t i = 0; i < n; ++i) t = mkSucc(t);
  return t;
}

std::string freshName(const std::string& hint,
                      const std::set<std::string>& avoid) {
  if (!avoid.count(hint)) return hint;
  std::string base = hint;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back())))
    base.pop_back();
  if (base.empty()) base = "v";
  for (std::uint64_t i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s) {
  if (!t->free.count(x)) return t;
  switch (t->kind) {
    case TermKind::Var:
      return s;  // t->name == x, since x is free in t
    case TermKind::App:
      return mkApp(subst(t->fun(), x, s), subst(t->arg(), x, s));
    case TermKind::Succ:
      return mkSucc(subst(t->inner(), x, s));
    case TermKind::Abs:
    case TermKind::Fix: {
      // t->name != x, otherwise x would not be free in t.
      std::string b = t->name;
      TermPtr body = t->body();
      if (s->free.count(b)) {
        std::set<std::string> avoid = s->free;
        avoid.insert(body->free.begin(), body->free.end());
        avoid.insert(x);
        std::string nb = freshName(b, avoid);
        body = subst(body, b, mkVar(nb));
        b = nb;
      }
      body = subst(body, x, s);
      return t->kind == TermKind::Abs ? mkAbs(b, body) : mkFix(b, body);
    }
    case TermKind::IfZ: {
      TermPtr g = subst(t->guard(), x, s);
      TermPtr th = subst(t->thenBranch(), x, s);
      std::string b = t->name;
      TermPtr el = t->elseBranch();
      if (b != x && el->free.count(x)) {
        if (s->free.count(b)) {
          std::set<std::string> avoid = s->free;
          avoid.insert(el->free.begin(), el->free.end());
          avoid.insert(x);
          std::string nb = freshName(b, avoid);
          el = subst(el, b, mkVar(nb));
          b = nb;
        }
        el = subst(el, x, s);
      }
      return mkIfZ(g, th, b, el);
    }
    case TermKind::Zero:
      break;
  }
  throw std::logic_error("subst: unreachable");
}

namespace {

struct AlphaEnv {
  // Maps bound names to the level at which they were bound.
  std::map<std::string, int> a, b;
  int depth = 0;

  bool varEq(const std::string& x, const std::string& y) const {
    auto ia = a.find(x);
    auto ib = b.find(y);
    if (ia == a.end() && ib == b.end()) return x == y;  // both free
    if (ia != a.end() && ib != b.end()) return ia->second == ib->second;
    return false;
  }
};

bool alphaRec(const TermPtr& t, const TermPtr& u, AlphaEnv& env) {
  if (t->kind != u->kind) return false;
  switch (t->kind) {
    case TermKind::Var:
      return env.varEq(t->name, u->name);
    case TermKind::Zero:
      return true;
    case TermKind::Succ:
      return alphaRec(t->inner(), u->inner(), env);
    case TermKind::App:
      return alphaRec(t->fun(), u->fun(), env) &&
             alphaRec(t->arg(), u->arg(), env);
    case TermKind::Abs:
    case TermKind::Fix: {
      AlphaEnv e2 = env;
      e2.a[t->name] = e2.b[u->name] = e2.depth++;
      return alphaRec(t->body(), u->body(), e2);
    }
    case TermKind::IfZ: {
      if (!alphaRec(t->guard(), u->guard(), env)) return false;
      if (!alphaRec(t->thenBranch(), u->thenBranch(), env)) return false;
      AlphaEnv e2 = env;
      e2.a[t->name] = e2.b[u->name] = e2.depth++;
      return alphaRec(t->elseBranch(), u->elseBranch(), e2);
    }
  }
  return false;
}

}  // namespace

bool alphaEq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  AlphaEnv env;
  return alphaRec(a, b, env);
}

std::optional<ValueView> valueView(const TermPtr& t) {
  if (t->kind == TermKind::Abs) return ValueView{VAbs{t->name, t->body()}};
  std::uint64_t n = 0;
  const Term* cur = t.get();
  while (cur->kind == TermKind::Succ) {
    ++n;
    cur = cur->sub0.get();
  }
  if (cur->kind == TermKind::Zero) return ValueView{VNat{n}};
  return std::nullopt;
}

namespace {
void collectNames(const TermPtr& t, std::set<std::string>& out) {
  if (!t->name.empty()) out.insert(t->name);
  if (t->sub0) collectNames(t->sub0, out);
  if (t->sub1) collectNames(t->sub1, out);
  if (t->sub2) collectNames(t->sub2, out);
}
}  // namespace

std::set<std::string> allNames(const TermPtr& t) {
  std::set<std::string> out;
  collectNames(t, out);
  return out;
}

std::uint64_t termSize(const TermPtr& t) {
  std::uint64_t n = 1;
  if (t->sub0) n += termSize(t->sub0);
  if (t->sub1) n += termSize(t->sub1);
  if (t->sub2) n += termSize(t->sub2);
  return n;
}

}  // namespace pcfh
