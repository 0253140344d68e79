#include "pcfh/parser.hpp"

#include <cctype>
#include <vector>

namespace pcfh {

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, Semi, Ident, Number, S, Ifz, Fix, Eof };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipWs();
      std::size_t start = pos_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::Eof, "", {start, start}});
        break;
      }
      char c = src_[pos_];
      if (c == '\\') {
        out.push_back(simple(Tok::Lambda));
      } else if (c == '.') {
        out.push_back(simple(Tok::Dot));
      } else if (c == '(') {
        out.push_back(simple(Tok::LParen));
      } else if (c == ')') {
        out.push_back(simple(Tok::RParen));
      } else if (c == ';') {
        out.push_back(simple(Tok::Semi));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
        out.push_back({Tok::Number, src_.substr(start, pos_ - start),
                       {start, pos_}});
      } else if (isIdentStart(c)) {
        while (pos_ < src_.size() && isIdentChar(src_[pos_])) ++pos_;
        std::string word = src_.substr(start, pos_ - start);
        Tok k = Tok::Ident;
        if (word == "S") k = Tok::S;
        else if (word == "ifz") k = Tok::Ifz;
        else if (word == "fix") k = Tok::Fix;
        out.push_back({k, word, {start, pos_}});
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "'",
                         {start, start + 1});
      }
    }
    return out;
  }

 private:
  static bool isIdentStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool isIdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  void skipWs() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }
  Token simple(Tok k) {
    Token t{k, std::string(1, src_[pos_]), {pos_, pos_ + 1}};
    ++pos_;
    return t;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TermPtr run() {
    TermPtr t = term();
    expect(Tok::Eof, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError("expected " + what, peek().span);
    return next();
  }

  std::string ident() {
    const Token& t = peek();
    if (t.kind == Tok::S || t.kind == Tok::Ifz || t.kind == Tok::Fix ||
        t.kind == Tok::Number)
      throw ParseError("reserved word '" + t.text +
                           "' cannot be used as an identifier",
                       t.span);
    return expect(Tok::Ident, "identifier").text;
  }

  TermPtr term() {
    if (peek().kind == Tok::Lambda) {
      next();
      std::string b = ident();
      expect(Tok::Dot, "'.'");
      return mkAbs(b, term());
    }
    return appSeq();
  }

  static bool startsAtom(Tok k) {
    return k == Tok::Ident || k == Tok::Number || k == Tok::S ||
           k == Tok::Ifz || k == Tok::Fix || k == Tok::LParen;
  }

  TermPtr appSeq() {
    if (!startsAtom(peek().kind))
      throw ParseError("expected a term", peek().span);
    TermPtr t = atom();
    while (startsAtom(peek().kind)) t = mkApp(t, atom());
    return t;
  }

  TermPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        return mkVar(next().text);
      case Tok::Number: {
        Token n = next();
        return mkNat(std::stoull(n.text));
      }
      case Tok::S:
        next();
        return mkSucc(atom());
      case Tok::Ifz: {
        next();
        expect(Tok::LParen, "'(' after ifz");
        TermPtr g = term();
        expect(Tok::Semi, "';'");
        TermPtr th = term();
        expect(Tok::Semi, "';'");
        std::string b = ident();
        expect(Tok::Dot, "'.'");
        TermPtr el = term();
        expect(Tok::RParen, "')'");
        return mkIfZ(g, th, b, el);
      }
      case Tok::Fix: {
        next();
        std::string b = ident();
        expect(Tok::Dot, "'.'");
        return mkFix(b, term());
      }
      case Tok::LParen: {
        next();
        TermPtr inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError("expected a term", t.span);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum class Pos { Top, Fun, Atom };

void render(const TermPtr& t, Pos pos, std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
      out += t->name;
      return;
    case TermKind::Zero:
      out += '0';
      return;
    case TermKind::IfZ:
      out += "ifz(";
      render(t->guard(), Pos::Top, out);
      out += "; ";
      render(t->thenBranch(), Pos::Top, out);
      out += "; ";
      out += t->name;
      out += ". ";
      render(t->elseBranch(), Pos::Top, out);
      out += ')';
      return;
    case TermKind::Abs:
    case TermKind::Fix: {
      bool paren = pos != Pos::Top;
      if (paren) out += '(';
      out += t->kind == TermKind::Abs ? "\\" : "fix ";
      out += t->name;
      out += ". ";
      render(t->body(), Pos::Top, out);
      if (paren) out += ')';
      return;
    }
    case TermKind::Succ: {
      bool paren = pos != Pos::Top;
      if (paren) out += '(';
      out += "S ";
      render(t->inner(), Pos::Atom, out);
      if (paren) out += ')';
      return;
    }
    case TermKind::App: {
      bool paren = pos == Pos::Atom;
      if (paren) out += '(';
      render(t->fun(), Pos::Fun, out);
      out += ' ';
      render(t->arg(), Pos::Atom, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

TermPtr parseTerm(const std::string& text) {
  return Parser(Lexer(text).run()).run();
}

std::string printTerm(const TermPtr& t) {
  std::string out;
  render(t, Pos::Top, out);
  return out;
}

}  // namespace pcfh
