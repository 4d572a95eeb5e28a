#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttfl/levels.hpp"
#include "ttfl/syntax.hpp"

namespace ttfl {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;
using Env = std::vector<ValuePtr>;  // Var(0) = env.back()

// Semantic levels in sup-of-shifted-atoms normal form: the value is the
// least upper bound of base+shift atoms, where a base is 0, omega, or a
// neutral term of type Lvl. Successor distributes over sup (the order is
// total), which keeps common heterogeneous types definitionally equal.
struct LevelAtom {
  enum class Base { Zero, Omega, Stuck };
  Base base = Base::Zero;
  ValuePtr stuck;      // neutral of type Lvl when base == Stuck
  uint32_t shift = 0;  // successors applied on top of the base
};

struct LevelValue {
  std::vector<LevelAtom> atoms;  // nonempty, sorted, deduplicated, absorbed

  static LevelValue closed(Level l);
  static LevelValue stuck(ValuePtr neutral, uint32_t shift = 0);
  bool isClosed() const;
  Level asClosed() const;  // pre: isClosed()
};

LevelValue sucLevel(const LevelValue& l);
LevelValue lsupValue(const LevelValue& i, const LevelValue& j);
bool levelEq(const LevelValue& a, const LevelValue& b);

struct Closure {
  Env env;
  TermPtr body;
  std::string name;  // binder hint
  // When set, application lifts the result to this level (with this proof);
  // produced by lifting a Pi value.
  std::optional<LevelValue> liftTo;
  ValuePtr liftProof;
};

struct Elim {
  enum class Kind { App, If, NatElim, Exfalso, LvlElim };
  Kind kind;
  // App: {arg}; If: {motive, then, else}; NatElim: {motive, z, s};
  // Exfalso: {motive}; LvlElim: {motive, z, s}
  std::vector<ValuePtr> args;
};

struct Neutral {
  // Var: an ordinary variable. Prim: a primitive blocked on a non-level
  // argument (ltFinOmega of a neutral Nat). Level: a level expression that
  // is stuck but not itself a plain neutral (a sup node), scrutinized by
  // lvlElim.
  enum class Head { Var, Prim, Level };
  Head head = Head::Var;
  int varLevel = -1;  // de Bruijn level
  PrimId prim{};
  std::shared_ptr<LevelValue> lvlHead;
  std::vector<Elim> spine;
};

enum class VTag {
  Lam, Pi,
  Bool, True, False, Nat, Zero, Suc, Empty, Unit, Tt,
  Univ,       // lvl1 = i, lvl2 = j; the proof is erased (<prop). The second
              // index participates only in quoting, not conversion: LiftU
              // makes U i j and U i k definitionally interchangeable.
  LvlTy,
  Lvl,        // lvl1 = the level value
  LtTy,       // lvl1 = i, lvl2 = j
  LtTok,      // lvl1 = i, lvl2 = j (for canonical quoting only)
  LiftStuck,  // lvl1 = target level, a = proof value, b = the blocked neutral
  Neutral,
};

struct Value {
  VTag tag;
  Closure clo;      // Lam body; Pi codomain
  ValuePtr a, b;    // Pi: a = domain; Suc: a = pred; LiftStuck: a = proof, b = inner
  LevelValue lvl1, lvl2;
  struct Neutral neu;
};

ValuePtr mkValue(VTag tag);
ValuePtr vCanon(VTag tag);  // shared Bool/True/.../Tt constants
ValuePtr vLam(Closure clo);
ValuePtr vPi(ValuePtr dom, Closure cod);
ValuePtr vSuc(ValuePtr n);
ValuePtr vUniv(LevelValue i, LevelValue j);
ValuePtr vLvl(LevelValue l);
ValuePtr vLtTy(LevelValue i, LevelValue j);
ValuePtr vLtTok(LevelValue i, LevelValue j);
ValuePtr vLiftStuck(LevelValue j, ValuePtr proof, ValuePtr inner);
ValuePtr vVar(int level);

// A declaration elaborated into the global scope. Definitions always unfold
// during evaluation; cores are retained for printing and re-checking.
struct Global {
  std::string name;
  TermPtr coreBody;
  TermPtr coreType;  // may be null when the declaration is itself a type
  ValuePtr value;
  ValuePtr type;     // null when isType
  LevelValue lvl;    // level of `type`, or of the type itself when isType
  bool isType = false;
};

struct Kernel {
  StructureId structure = StructureId::Nat;
  std::vector<Global> globals;
};

ValuePtr eval(const Kernel& kern, const Env& env, const TermPtr& t);
ValuePtr apply(const Kernel& kern, const Closure& clo, const ValuePtr& arg);
ValuePtr vApp(const Kernel& kern, const ValuePtr& fn, const ValuePtr& arg);

// Reads a Value in level position. Neutrals become stuck level atoms.
LevelValue asLevel(const ValuePtr& v);

// Semantic Lift: pushes the lift through canonical type codes (identity on
// base formers and universes, componentwise on Pi) and blocks on neutrals.
// Nested stuck lifts collapse to the outermost target (functoriality).
ValuePtr liftValue(const Kernel& kern, const LevelValue& j, const ValuePtr& proof,
                   const ValuePtr& type);

// Strips stuck-lift wrappers: Tm (Lift p A) = Tm A.
ValuePtr stripLift(const ValuePtr& v);

TermPtr quote(const Kernel& kern, int depth, const ValuePtr& v);
TermPtr quoteLevel(const Kernel& kern, int depth, const LevelValue& l);

// Type-directed conversion: unconditionally true at Lt and Unit types, eta
// for functions, level values by normal-form equality.
bool conv(const Kernel& kern, int depth, const ValuePtr& a, const ValuePtr& b,
          const ValuePtr& ty);

// Untyped structural comparison (used inside neutral spines and to compare
// type values). All LtTok values are equal.
bool convValue(const Kernel& kern, int depth, const ValuePtr& a, const ValuePtr& b);

// Deterministic total order on values, for sorting sup operands.
int cmpValue(const ValuePtr& a, const ValuePtr& b);

}  // namespace ttfl
