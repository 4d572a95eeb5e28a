#include "ttfl/surface.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace ttfl {

namespace {

const std::map<std::string, BuiltinId, std::less<>>& builtinTable() {
  static const std::map<std::string, BuiltinId, std::less<>> tbl = {
      {"U", BuiltinId::U},           {"Lift", BuiltinId::Lift},
      {"coerce", BuiltinId::Coerce}, {"Bool", BuiltinId::Bool},
      {"true", BuiltinId::True},     {"false", BuiltinId::False},
      {"if", BuiltinId::If},         {"Nat", BuiltinId::Nat},
      {"zero", BuiltinId::Zero},     {"suc", BuiltinId::Suc},
      {"natElim", BuiltinId::NatElim}, {"Empty", BuiltinId::Empty},
      {"exfalso", BuiltinId::Exfalso}, {"Unit", BuiltinId::Unit},
      {"tt", BuiltinId::Tt},         {"Lvl", BuiltinId::Lvl},
      {"Lt", BuiltinId::Lt},         {"lzero", BuiltinId::LZero},
      {"lsuc", BuiltinId::LSuc},     {"lomega", BuiltinId::LOmega},
      {"ltDec", BuiltinId::LtDec},   {"ltFinOmega", BuiltinId::LtFinOmega},
      {"ltSucSelf", BuiltinId::LtSucSelf}, {"ltTrans", BuiltinId::LtTrans},
      {"lsup", BuiltinId::LSup},     {"lvlElim", BuiltinId::LvlElim},
  };
  return tbl;
}

struct Token {
  enum class Kind {
    Ident, Number, Lambda, Dot, LParen, RParen, Colon, Semi, Arrow, Eq,
    KwLet, KwIn, End,
  };
  Kind kind;
  Span span;
  std::string text;
  uint64_t num = 0;
};

const char* tokenName(Token::Kind k) {
  switch (k) {
    case Token::Kind::Ident: return "identifier";
    case Token::Kind::Number: return "number";
    case Token::Kind::Lambda: return "'\\'";
    case Token::Kind::Dot: return "'.'";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Colon: return "':'";
    case Token::Kind::Semi: return "';'";
    case Token::Kind::Arrow: return "'->'";
    case Token::Kind::Eq: return "'='";
    case Token::Kind::KwLet: return "'let'";
    case Token::Kind::KwIn: return "'in'";
    case Token::Kind::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  uint32_t i = 0;
  const uint32_t n = (uint32_t)text.size();
  auto push = [&](Token::Kind k, uint32_t lo, uint32_t hi) {
    out.push_back(Token{k, Span{lo, hi}, text.substr(lo, hi - lo), 0});
  };
  while (i < n) {
    char c = text[i];
    if (std::isspace((unsigned char)c)) { i++; continue; }
    if (c == '-' && i + 1 < n && text[i + 1] == '-') {
      while (i < n && text[i] != '\n') i++;
      continue;
    }
    uint32_t lo = i;
    if (std::isalpha((unsigned char)c) || c == '_') {
      while (i < n && (std::isalnum((unsigned char)text[i]) || text[i] == '_' ||
                       text[i] == '\''))
        i++;
      std::string word = text.substr(lo, i - lo);
      if (word == "let") push(Token::Kind::KwLet, lo, i);
      else if (word == "in") push(Token::Kind::KwIn, lo, i);
      else push(Token::Kind::Ident, lo, i);
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      uint64_t v = 0;
      bool overflow = false;
      while (i < n && std::isdigit((unsigned char)text[i])) {
        v = v * 10 + (uint64_t)(text[i] - '0');
        if (v > 1000000) overflow = true;
        i++;
      }
      if (overflow) throw ParseError{Span{lo, i}, "numeral too large"};
      push(Token::Kind::Number, lo, i);
      out.back().num = v;
      continue;
    }
    switch (c) {
      case '\\': push(Token::Kind::Lambda, lo, ++i); continue;
      case '.': push(Token::Kind::Dot, lo, ++i); continue;
      case '(': push(Token::Kind::LParen, lo, ++i); continue;
      case ')': push(Token::Kind::RParen, lo, ++i); continue;
      case ':': push(Token::Kind::Colon, lo, ++i); continue;
      case ';': push(Token::Kind::Semi, lo, ++i); continue;
      case '=': push(Token::Kind::Eq, lo, ++i); continue;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          push(Token::Kind::Arrow, lo, i + 2);
          i += 2;
          continue;
        }
        throw ParseError{Span{lo, i + 1}, "unexpected character '-'"};
      default:
        throw ParseError{Span{lo, i + 1},
                         std::string("unexpected character '") + c + "'"};
    }
  }
  out.push_back(Token{Token::Kind::End, Span{(uint32_t)text.size(), (uint32_t)text.size()}, "", 0});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  int depth = 0;

  const Token& peek(size_t ahead = 0) const {
    size_t p = pos + ahead;
    return p < toks.size() ? toks[p] : toks.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos + 1 < toks.size()) pos++;
    return t;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError{t.span, "expected " + expected + ", found " + tokenName(t.kind)};
  }
  const Token& expect(Token::Kind k, const char* what) {
    if (peek().kind != k) fail(what);
    return next();
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth > 4096) throw ParseError{p.peek().span, "nesting too deep"};
    }
    ~DepthGuard() { p.depth--; }
  };

  STermPtr atom() {
    DepthGuard g(*this);
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Ident: {
        next();
        auto s = std::make_shared<STerm>();
        s->span = t.span;
        auto it = builtinTable().find(t.text);
        if (it != builtinTable().end()) {
          s->kind = SKind::Builtin;
          s->builtin = it->second;
        } else {
          s->kind = SKind::Var;
          s->name = t.text;
        }
        return s;
      }
      case Token::Kind::Number: {
        next();
        auto s = std::make_shared<STerm>();
        s->kind = SKind::Lit;
        s->span = t.span;
        s->lit = t.num;
        return s;
      }
      case Token::Kind::LParen: {
        next();
        STermPtr inner = term();
        expect(Token::Kind::RParen, "')'");
        return inner;
      }
      default:
        fail("a term");
    }
  }

  bool atAtomStart() const {
    switch (peek().kind) {
      case Token::Kind::Ident:
      case Token::Kind::Number:
      case Token::Kind::LParen:
        return true;
      default:
        return false;
    }
  }

  STermPtr apps() {
    STermPtr head = atom();
    while (atAtomStart()) {
      STermPtr arg = atom();
      auto s = std::make_shared<STerm>();
      s->kind = SKind::App;
      s->span = Span{head->span.lo, arg->span.hi};
      s->a = head;
      s->b = arg;
      head = s;
    }
    return head;
  }

  // Pi binder or application, with the non-dependent arrow sugar.
  STermPtr arrow() {
    DepthGuard g(*this);
    if (peek().kind == Token::Kind::LParen && peek(1).kind == Token::Kind::Ident &&
        peek(2).kind == Token::Kind::Colon) {
      const Token& open = next();  // (
      const Token& name = next();  // ident
      next();                      // :
      STermPtr dom = term();
      expect(Token::Kind::RParen, "')'");
      expect(Token::Kind::Arrow, "'->'");
      STermPtr cod = term();
      auto s = std::make_shared<STerm>();
      s->kind = SKind::Pi;
      s->span = Span{open.span.lo, cod->span.hi};
      s->name = name.text;
      s->a = dom;
      s->b = cod;
      return s;
    }
    STermPtr lhs = apps();
    if (peek().kind == Token::Kind::Arrow) {
      next();
      STermPtr cod = term();
      auto s = std::make_shared<STerm>();
      s->kind = SKind::Pi;
      s->span = Span{lhs->span.lo, cod->span.hi};
      s->name = "_";
      s->a = lhs;
      s->b = cod;
      return s;
    }
    return lhs;
  }

  STermPtr term() {
    DepthGuard g(*this);
    const Token& t = peek();
    if (t.kind == Token::Kind::Lambda) {
      next();
      std::vector<Token> binders;
      while (peek().kind == Token::Kind::Ident) binders.push_back(next());
      if (binders.empty()) fail("a binder");
      expect(Token::Kind::Dot, "'.'");
      STermPtr body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        auto s = std::make_shared<STerm>();
        s->kind = SKind::Lam;
        s->span = Span{t.span.lo, body->span.hi};
        s->name = it->text;
        s->a = body;
        body = s;
      }
      return body;
    }
    if (t.kind == Token::Kind::KwLet) {
      next();
      const Token& name = expect(Token::Kind::Ident, "a binder");
      expect(Token::Kind::Eq, "'='");
      STermPtr def = term();
      expect(Token::Kind::KwIn, "'in'");
      STermPtr body = term();
      auto s = std::make_shared<STerm>();
      s->kind = SKind::Let;
      s->span = Span{t.span.lo, body->span.hi};
      s->name = name.text;
      s->a = def;
      s->b = body;
      return s;
    }
    return arrow();
  }

  Module module() {
    Module m;
    while (peek().kind != Token::Kind::End) {
      const Token& name = expect(Token::Kind::Ident, "a declaration name");
      Decl d;
      d.name = name.text;
      d.span = name.span;
      if (peek().kind == Token::Kind::Colon) {
        next();
        d.ann = term();
      }
      expect(Token::Kind::Eq, "'='");
      d.body = term();
      expect(Token::Kind::Semi, "';'");
      for (const auto& prev : m.decls)
        if (prev.name == d.name)
          throw ParseError{name.span, "duplicate declaration '" + d.name + "'"};
      m.decls.push_back(std::move(d));
    }
    return m;
  }
};

}  // namespace

Module parse(const std::string& text) {
  std::vector<Token> toks = lex(text);
  Parser p{toks};
  return p.module();
}

std::pair<int, int> lineCol(const std::string& text, uint32_t offset) {
  int line = 1, col = 1;
  for (uint32_t i = 0; i < offset && i < text.size(); i++) {
    if (text[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  return {line, col};
}

bool alphaEq(const STermPtr& a, const STermPtr& b) {
  struct Cmp {
    std::vector<std::pair<std::string, std::string>> binders;
    bool go(const STermPtr& a, const STermPtr& b) {
      if (!a || !b) return a == b;
      if (a->kind != b->kind) return false;
      switch (a->kind) {
        case SKind::Var: {
          for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
            if (it->first == a->name || it->second == b->name)
              return it->first == a->name && it->second == b->name;
          }
          return a->name == b->name;
        }
        case SKind::Lit: return a->lit == b->lit;
        case SKind::Builtin: return a->builtin == b->builtin;
        case SKind::App: return go(a->a, b->a) && go(a->b, b->b);
        case SKind::Lam: {
          binders.emplace_back(a->name, b->name);
          bool ok = go(a->a, b->a);
          binders.pop_back();
          return ok;
        }
        case SKind::Pi: {
          if (!go(a->a, b->a)) return false;
          binders.emplace_back(a->name, b->name);
          bool ok = go(a->b, b->b);
          binders.pop_back();
          return ok;
        }
        case SKind::Let: {
          if (!go(a->a, b->a)) return false;
          binders.emplace_back(a->name, b->name);
          bool ok = go(a->b, b->b);
          binders.pop_back();
          return ok;
        }
      }
      return false;
    }
  };
  Cmp c;
  return c.go(a, b);
}

bool alphaEqModule(const Module& a, const Module& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); i++) {
    if (a.decls[i].name != b.decls[i].name) return false;
    if (!alphaEq(a.decls[i].ann, b.decls[i].ann)) return false;
    if (!alphaEq(a.decls[i].body, b.decls[i].body)) return false;
  }
  return true;
}

}  // namespace ttfl
