#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ttfl/nbe.hpp"
#include "ttfl/syntax.hpp"

namespace ttfl {

struct Span {
  uint32_t lo = 0;
  uint32_t hi = 0;
};

enum class BuiltinId {
  U, Lift, Coerce,
  Bool, True, False, If,
  Nat, Zero, Suc, NatElim,
  Empty, Exfalso, Unit, Tt,
  Lvl, Lt, LZero, LSuc, LOmega,
  LtDec, LtFinOmega, LtSucSelf, LtTrans, LSup, LvlElim,
};

enum class SKind { Var, Lam, App, Pi, Let, Lit, Builtin };

struct STerm;
using STermPtr = std::shared_ptr<const STerm>;

// Raw named syntax; shadowing permitted, every node carries a span.
struct STerm {
  SKind kind;
  Span span;
  std::string name;      // Var; Lam/Pi/Let binder ("_" for non-dependent arrows)
  uint64_t lit = 0;      // Lit
  BuiltinId builtin{};   // Builtin
  STermPtr a, b;         // Lam: a = body; App: a b; Pi: a = dom, b = cod;
                         // Let: a = def, b = body
};

struct Decl {
  std::string name;
  STermPtr ann;  // optional type annotation
  STermPtr body;
  Span span;
};

struct Module {
  std::vector<Decl> decls;
};

struct ParseError {
  Span span;
  std::string message;
};

// Total on arbitrary input; throws ParseError with span and expectation.
Module parse(const std::string& text);

std::string prettySurface(const STermPtr& t);
std::string prettyModule(const Module& m);

// Core printing with invented names for de Bruijn binders.
std::string prettyCore(const TermPtr& t, const Kernel& kern,
                       const std::vector<std::string>& scopeNames = {});

// Alpha-equivalence up to spans; backs the parse/print round-trip property.
bool alphaEq(const STermPtr& a, const STermPtr& b);
bool alphaEqModule(const Module& a, const Module& b);

// (line, column), 1-based, for error reporting.
std::pair<int, int> lineCol(const std::string& text, uint32_t offset);

}  // namespace ttfl
