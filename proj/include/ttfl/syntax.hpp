#pragma once

#include <memory>
#include <string>
#include <vector>

namespace ttfl {

// Order-lemma primitives. Each has a fixed closed type; availability depends
// on the active structure (LtFinOmega only for omega-bearing structures).
enum class PrimId {
  LtDec,       // (i j : Lvl) -> Lt i j, synthesized for closed i < j
  LtFinOmega,  // (n : Nat) -> Lt (finToLvl n) lomega
  LtSucSelf,   // (l : Lvl) -> Lt l (lsuc l)
  LtTrans,     // (i j k : Lvl) -> Lt j k -> Lt i j -> Lt i k
};

enum class Tag {
  Var,      // ix
  Global,   // ix into the module's global table; name kept for printing
  Lam,      // kids: body
  App,      // kids: fn, arg
  Pi,       // kids: dom, cod
  Let,      // kids: ty, def, body

  Bool, True, False,
  If,       // kids: motive, scrut, then, else
  Nat, Zero,
  Suc,      // kids: n
  NatElim,  // kids: motive, z, s, n
  Empty,
  Exfalso,  // kids: motive, e
  Unit, Tt,

  Univ,     // kids: i, j, p      (i, j : Lvl; p : Lt i j)
  LiftTy,   // kids: j, p, A      (j : Lvl explicit so evaluation knows the target)
  LvlTy, LZero,
  LSuc,     // kids: l
  LOmega,
  LtTy,     // kids: i, j
  LtPrim,   // prim + kids: fully applied argument list
  LSup,     // kids: i, j
  LvlElim,  // kids: motive, z, s, l
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Elaborated de-Bruijn-indexed kernel syntax. There is no El/Code node
// (Russell universes) and no term-level lift (strict cumulativity); LiftTy
// only ever appears in type position. Binder names are printing hints and
// are ignored by structural equality.
struct Term {
  Tag tag;
  int ix = -1;
  PrimId prim{};
  std::string name;  // Lam/Pi/Let binder hint; Global name
  std::vector<TermPtr> kids;
};

TermPtr mkTerm(Tag tag, std::vector<TermPtr> kids = {});
TermPtr mkVar(int ix);
TermPtr mkGlobal(int ix, std::string name);
TermPtr mkBind(Tag tag, std::string name, std::vector<TermPtr> kids);
TermPtr mkPrim(PrimId prim, std::vector<TermPtr> args);

// Structural equality up to binder names, with Lt-typed proof positions
// (third child of Univ, second child of LiftTy, and whole LtPrim terms)
// treated as interchangeable.
bool termEq(const TermPtr& a, const TermPtr& b);

// Checks the de Bruijn index-range invariant.
bool scopeCheck(const TermPtr& t, int depth, int numGlobals);

}  // namespace ttfl
