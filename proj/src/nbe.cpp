#include "ttfl/nbe.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ttfl {

namespace {

[[noreturn]] void kernelBug(const char* what) {
  throw std::logic_error(std::string("kernel bug: ") + what);
}

int cmpInt(long a, long b) { return a < b ? -1 : a > b ? 1 : 0; }

// Total order on terms aligned with termEq: binder names and Lt-typed proof
// positions do not participate.
int cmpTerm(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (a->tag == Tag::LtPrim && b->tag == Tag::LtPrim) return 0;
  if (int c = cmpInt((int)a->tag, (int)b->tag)) return c;
  if (int c = cmpInt(a->ix, b->ix)) return c;
  if (int c = cmpInt((long)a->kids.size(), (long)b->kids.size())) return c;
  for (size_t k = 0; k < a->kids.size(); k++) {
    bool proofPos = (a->tag == Tag::Univ && k == 2) || (a->tag == Tag::LiftTy && k == 1);
    if (proofPos) continue;
    if (int c = cmpTerm(a->kids[k], b->kids[k])) return c;
  }
  return 0;
}

int cmpLevel(const LevelValue& a, const LevelValue& b);

int cmpClosure(const Closure& a, const Closure& b) {
  if (int c = cmpTerm(a.body, b.body)) return c;
  if (int c = cmpInt((long)a.env.size(), (long)b.env.size())) return c;
  for (size_t i = 0; i < a.env.size(); i++)
    if (int c = cmpValue(a.env[i], b.env[i])) return c;
  if (int c = cmpInt(a.liftTo.has_value(), b.liftTo.has_value())) return c;
  if (a.liftTo && b.liftTo)
    if (int c = cmpLevel(*a.liftTo, *b.liftTo)) return c;
  return 0;
}

int cmpAtom(const LevelAtom& a, const LevelAtom& b) {
  if (int c = cmpInt((int)a.base, (int)b.base)) return c;
  if (a.base == LevelAtom::Base::Stuck)
    if (int c = cmpValue(a.stuck, b.stuck)) return c;
  return cmpInt(a.shift, b.shift);
}

int cmpLevel(const LevelValue& a, const LevelValue& b) {
  if (int c = cmpInt((long)a.atoms.size(), (long)b.atoms.size())) return c;
  for (size_t i = 0; i < a.atoms.size(); i++)
    if (int c = cmpAtom(a.atoms[i], b.atoms[i])) return c;
  return 0;
}

int cmpNeutral(const Neutral& a, const Neutral& b) {
  if (int c = cmpInt((int)a.head, (int)b.head)) return c;
  if (int c = cmpInt(a.varLevel, b.varLevel)) return c;
  if (int c = cmpInt((int)a.prim, (int)b.prim)) return c;
  if (a.head == Neutral::Head::Level)
    if (int c = cmpLevel(*a.lvlHead, *b.lvlHead)) return c;
  if (int c = cmpInt((long)a.spine.size(), (long)b.spine.size())) return c;
  for (size_t i = 0; i < a.spine.size(); i++) {
    if (int c = cmpInt((int)a.spine[i].kind, (int)b.spine[i].kind)) return c;
    if (int c = cmpInt((long)a.spine[i].args.size(), (long)b.spine[i].args.size())) return c;
    for (size_t k = 0; k < a.spine[i].args.size(); k++)
      if (int c = cmpValue(a.spine[i].args[k], b.spine[i].args[k])) return c;
  }
  return 0;
}

// Sorted, deduplicated, absorbed normal form.
std::vector<LevelAtom> normAtoms(std::vector<LevelAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const LevelAtom& a, const LevelAtom& b) { return cmpAtom(a, b) < 0; });
  std::vector<LevelAtom> merged;
  for (auto& at : atoms) {
    if (!merged.empty()) {
      LevelAtom& last = merged.back();
      bool sameBase = last.base == at.base &&
                      (at.base != LevelAtom::Base::Stuck || cmpValue(last.stuck, at.stuck) == 0);
      if (sameBase) {
        last.shift = std::max(last.shift, at.shift);
        continue;
      }
    }
    merged.push_back(at);
  }
  // A finite atom 0+m is absorbed by omega-based atoms, and by any atom
  // shifted at least m times (every level is >= 0).
  std::vector<LevelAtom> out;
  for (size_t i = 0; i < merged.size(); i++) {
    const LevelAtom& x = merged[i];
    bool absorbed = false;
    if (x.base == LevelAtom::Base::Zero) {
      for (size_t k = 0; k < merged.size(); k++) {
        if (k == i) continue;
        const LevelAtom& y = merged[k];
        if (y.base == LevelAtom::Base::Omega || y.shift >= x.shift) {
          absorbed = true;
          break;
        }
      }
    }
    if (!absorbed) out.push_back(x);
  }
  if (out.empty()) kernelBug("empty level normal form");
  return out;
}

}  // namespace

LevelValue LevelValue::closed(Level l) {
  LevelAtom at;
  at.base = l.block == 0 ? LevelAtom::Base::Zero : LevelAtom::Base::Omega;
  at.shift = l.offset;
  return LevelValue{{at}};
}

LevelValue LevelValue::stuck(ValuePtr neutral, uint32_t shift) {
  LevelAtom at;
  at.base = LevelAtom::Base::Stuck;
  at.stuck = std::move(neutral);
  at.shift = shift;
  return LevelValue{{at}};
}

bool LevelValue::isClosed() const {
  return atoms.size() == 1 && atoms[0].base != LevelAtom::Base::Stuck;
}

Level LevelValue::asClosed() const {
  assert(isClosed());
  return Level{atoms[0].base == LevelAtom::Base::Omega ? 1u : 0u, atoms[0].shift};
}

LevelValue sucLevel(const LevelValue& l) {
  LevelValue out = l;
  for (auto& at : out.atoms) at.shift++;
  return out;
}

LevelValue lsupValue(const LevelValue& i, const LevelValue& j) {
  std::vector<LevelAtom> atoms = i.atoms;
  atoms.insert(atoms.end(), j.atoms.begin(), j.atoms.end());
  return LevelValue{normAtoms(std::move(atoms))};
}

bool levelEq(const LevelValue& a, const LevelValue& b) { return cmpLevel(a, b) == 0; }

ValuePtr mkValue(VTag tag) {
  auto v = std::make_shared<Value>();
  v->tag = tag;
  return v;
}

ValuePtr vCanon(VTag tag) {
  static const ValuePtr cBool = mkValue(VTag::Bool);
  static const ValuePtr cTrue = mkValue(VTag::True);
  static const ValuePtr cFalse = mkValue(VTag::False);
  static const ValuePtr cNat = mkValue(VTag::Nat);
  static const ValuePtr cZero = mkValue(VTag::Zero);
  static const ValuePtr cEmpty = mkValue(VTag::Empty);
  static const ValuePtr cUnit = mkValue(VTag::Unit);
  static const ValuePtr cTt = mkValue(VTag::Tt);
  static const ValuePtr cLvlTy = mkValue(VTag::LvlTy);
  switch (tag) {
    case VTag::Bool: return cBool;
    case VTag::True: return cTrue;
    case VTag::False: return cFalse;
    case VTag::Nat: return cNat;
    case VTag::Zero: return cZero;
    case VTag::Empty: return cEmpty;
    case VTag::Unit: return cUnit;
    case VTag::Tt: return cTt;
    case VTag::LvlTy: return cLvlTy;
    default: kernelBug("vCanon on non-constant");
  }
}

ValuePtr vLam(Closure clo) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Lam;
  v->clo = std::move(clo);
  return v;
}

ValuePtr vPi(ValuePtr dom, Closure cod) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Pi;
  v->a = std::move(dom);
  v->clo = std::move(cod);
  return v;
}

ValuePtr vSuc(ValuePtr n) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Suc;
  v->a = std::move(n);
  return v;
}

ValuePtr vUniv(LevelValue i, LevelValue j) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Univ;
  v->lvl1 = std::move(i);
  v->lvl2 = std::move(j);
  return v;
}

ValuePtr vLvl(LevelValue l) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Lvl;
  v->lvl1 = std::move(l);
  return v;
}

ValuePtr vLtTy(LevelValue i, LevelValue j) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::LtTy;
  v->lvl1 = std::move(i);
  v->lvl2 = std::move(j);
  return v;
}

ValuePtr vLtTok(LevelValue i, LevelValue j) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::LtTok;
  v->lvl1 = std::move(i);
  v->lvl2 = std::move(j);
  return v;
}

ValuePtr vLiftStuck(LevelValue j, ValuePtr proof, ValuePtr inner) {
  // Nested stuck lifts collapse to the outermost target.
  if (inner && inner->tag == VTag::LiftStuck) inner = inner->b;
  auto v = std::make_shared<Value>();
  v->tag = VTag::LiftStuck;
  v->lvl1 = std::move(j);
  v->a = std::move(proof);
  v->b = std::move(inner);
  return v;
}

ValuePtr vVar(int level) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Neutral;
  v->neu.head = Neutral::Head::Var;
  v->neu.varLevel = level;
  return v;
}

int cmpValue(const ValuePtr& a, const ValuePtr& b) {
  if (a == b) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (a->tag == VTag::LtTok && b->tag == VTag::LtTok) return 0;
  if (int c = cmpInt((int)a->tag, (int)b->tag)) return c;
  switch (a->tag) {
    case VTag::Lam: return cmpClosure(a->clo, b->clo);
    case VTag::Pi:
      if (int c = cmpValue(a->a, b->a)) return c;
      return cmpClosure(a->clo, b->clo);
    case VTag::Suc: return cmpValue(a->a, b->a);
    case VTag::Univ: return cmpLevel(a->lvl1, b->lvl1);  // second index is display-only
    case VTag::Lvl: return cmpLevel(a->lvl1, b->lvl1);
    case VTag::LtTy:
      if (int c = cmpLevel(a->lvl1, b->lvl1)) return c;
      return cmpLevel(a->lvl2, b->lvl2);
    case VTag::LiftStuck:
      if (int c = cmpLevel(a->lvl1, b->lvl1)) return c;
      return cmpValue(a->b, b->b);
    case VTag::Neutral: return cmpNeutral(a->neu, b->neu);
    default: return 0;
  }
}

LevelValue asLevel(const ValuePtr& v) {
  if (v->tag == VTag::Lvl) return v->lvl1;
  if (v->tag == VTag::Neutral) return LevelValue::stuck(v);
  kernelBug("non-level value in level position");
}

namespace {

ValuePtr pushElim(const ValuePtr& neu, Elim e) {
  auto v = std::make_shared<Value>();
  *v = *neu;
  v->neu.spine.push_back(std::move(e));
  return v;
}

ValuePtr levelNeutral(const LevelValue& l) {
  // Single bare stuck atom: reuse the underlying neutral directly.
  if (l.atoms.size() == 1 && l.atoms[0].base == LevelAtom::Base::Stuck &&
      l.atoms[0].shift == 0)
    return l.atoms[0].stuck;
  auto v = std::make_shared<Value>();
  v->tag = VTag::Neutral;
  v->neu.head = Neutral::Head::Level;
  v->neu.lvlHead = std::make_shared<LevelValue>(l);
  return v;
}

std::optional<uint32_t> asNumeral(const ValuePtr& v) {
  uint32_t n = 0;
  const Value* cur = v.get();
  while (cur->tag == VTag::Suc) {
    n++;
    cur = cur->a.get();
  }
  if (cur->tag == VTag::Zero) return n;
  return std::nullopt;
}

ValuePtr natElimValue(const Kernel& kern, const ValuePtr& motive, const ValuePtr& z,
                      const ValuePtr& s, const ValuePtr& n);

ValuePtr lvlElimValue(const Kernel& kern, const ValuePtr& motive, const ValuePtr& z,
                      const ValuePtr& s, const LevelValue& l);

}  // namespace

ValuePtr apply(const Kernel& kern, const Closure& clo, const ValuePtr& arg) {
  Env env = clo.env;
  env.push_back(arg);
  ValuePtr res = eval(kern, env, clo.body);
  if (clo.liftTo) res = liftValue(kern, *clo.liftTo, clo.liftProof, res);
  return res;
}

ValuePtr vApp(const Kernel& kern, const ValuePtr& fn, const ValuePtr& arg) {
  if (fn->tag == VTag::Lam) return apply(kern, fn->clo, arg);
  if (fn->tag == VTag::Neutral) return pushElim(fn, Elim{Elim::Kind::App, {arg}});
  kernelBug("application of non-function value");
}

ValuePtr stripLift(const ValuePtr& v) {
  return v && v->tag == VTag::LiftStuck ? v->b : v;
}

ValuePtr liftValue(const Kernel& kern, const LevelValue& j, const ValuePtr& proof,
                   const ValuePtr& type) {
  switch (type->tag) {
    case VTag::Pi: {
      ValuePtr dom = liftValue(kern, j, proof, type->a);
      Closure cod = type->clo;
      cod.liftTo = j;  // overwriting an inner lift keeps the outermost target
      cod.liftProof = proof;
      return vPi(std::move(dom), std::move(cod));
    }
    case VTag::Univ:
      // LiftU: the lifted universe keeps its contents, only its ambient
      // family index moves.
      return vUniv(type->lvl1, j);
    case VTag::Neutral:
    case VTag::LiftStuck:
      return vLiftStuck(j, proof, type);
    default:
      // Base formers are preserved on the nose.
      return type;
  }
}

ValuePtr eval(const Kernel& kern, const Env& env, const TermPtr& t) {
  switch (t->tag) {
    case Tag::Var:
      if (t->ix < 0 || (size_t)t->ix >= env.size()) kernelBug("variable out of scope");
      return env[env.size() - 1 - t->ix];
    case Tag::Global:
      if (t->ix < 0 || (size_t)t->ix >= kern.globals.size()) kernelBug("unknown global");
      return kern.globals[t->ix].value;
    case Tag::Lam:
      return vLam(Closure{env, t->kids[0], t->name, std::nullopt, nullptr});
    case Tag::App:
      return vApp(kern, eval(kern, env, t->kids[0]), eval(kern, env, t->kids[1]));
    case Tag::Pi:
      return vPi(eval(kern, env, t->kids[0]),
                 Closure{env, t->kids[1], t->name, std::nullopt, nullptr});
    case Tag::Let: {
      Env inner = env;
      inner.push_back(eval(kern, env, t->kids[1]));
      return eval(kern, inner, t->kids[2]);
    }
    case Tag::Bool: return vCanon(VTag::Bool);
    case Tag::True: return vCanon(VTag::True);
    case Tag::False: return vCanon(VTag::False);
    case Tag::If: {
      ValuePtr scrut = eval(kern, env, t->kids[1]);
      if (scrut->tag == VTag::True) return eval(kern, env, t->kids[2]);
      if (scrut->tag == VTag::False) return eval(kern, env, t->kids[3]);
      if (scrut->tag != VTag::Neutral) kernelBug("if on non-Bool");
      return pushElim(scrut, Elim{Elim::Kind::If,
                                  {eval(kern, env, t->kids[0]), eval(kern, env, t->kids[2]),
                                   eval(kern, env, t->kids[3])}});
    }
    case Tag::Nat: return vCanon(VTag::Nat);
    case Tag::Zero: return vCanon(VTag::Zero);
    case Tag::Suc: return vSuc(eval(kern, env, t->kids[0]));
    case Tag::NatElim:
      return natElimValue(kern, eval(kern, env, t->kids[0]), eval(kern, env, t->kids[1]),
                          eval(kern, env, t->kids[2]), eval(kern, env, t->kids[3]));
    case Tag::Empty: return vCanon(VTag::Empty);
    case Tag::Exfalso: {
      ValuePtr e = eval(kern, env, t->kids[1]);
      if (e->tag != VTag::Neutral) kernelBug("exfalso on canonical value");
      return pushElim(e, Elim{Elim::Kind::Exfalso, {eval(kern, env, t->kids[0])}});
    }
    case Tag::Unit: return vCanon(VTag::Unit);
    case Tag::Tt: return vCanon(VTag::Tt);
    case Tag::Univ:
      // The proof child is erased here; it was validated at elaboration.
      return vUniv(asLevel(eval(kern, env, t->kids[0])),
                   asLevel(eval(kern, env, t->kids[1])));
    case Tag::LiftTy:
      return liftValue(kern, asLevel(eval(kern, env, t->kids[0])),
                       eval(kern, env, t->kids[1]), eval(kern, env, t->kids[2]));
    case Tag::LvlTy: return vCanon(VTag::LvlTy);
    case Tag::LZero: return vLvl(LevelValue::closed(finLevel(0)));
    case Tag::LSuc: return vLvl(sucLevel(asLevel(eval(kern, env, t->kids[0]))));
    case Tag::LOmega: return vLvl(LevelValue::closed(omegaLevel()));
    case Tag::LtTy:
      return vLtTy(asLevel(eval(kern, env, t->kids[0])),
                   asLevel(eval(kern, env, t->kids[1])));
    case Tag::LSup:
      return vLvl(lsupValue(asLevel(eval(kern, env, t->kids[0])),
                            asLevel(eval(kern, env, t->kids[1]))));
    case Tag::LvlElim:
      return lvlElimValue(kern, eval(kern, env, t->kids[0]), eval(kern, env, t->kids[1]),
                          eval(kern, env, t->kids[2]),
                          asLevel(eval(kern, env, t->kids[3])));
    case Tag::LtPrim:
      switch (t->prim) {
        case PrimId::LtDec:
          return vLtTok(asLevel(eval(kern, env, t->kids[0])),
                        asLevel(eval(kern, env, t->kids[1])));
        case PrimId::LtSucSelf: {
          LevelValue l = asLevel(eval(kern, env, t->kids[0]));
          return vLtTok(l, sucLevel(l));
        }
        case PrimId::LtTrans:
          return vLtTok(asLevel(eval(kern, env, t->kids[0])),
                        asLevel(eval(kern, env, t->kids[2])));
        case PrimId::LtFinOmega: {
          ValuePtr n = eval(kern, env, t->kids[0]);
          if (auto m = asNumeral(n))
            return vLtTok(LevelValue::closed(finLevel(*m)),
                          LevelValue::closed(omegaLevel()));
          auto v = std::make_shared<Value>();
          v->tag = VTag::Neutral;
          v->neu.head = Neutral::Head::Prim;
          v->neu.prim = PrimId::LtFinOmega;
          v->neu.spine.push_back(Elim{Elim::Kind::App, {n}});
          return v;
        }
      }
      kernelBug("unknown primitive");
  }
  kernelBug("unknown core tag");
}

namespace {

ValuePtr natElimValue(const Kernel& kern, const ValuePtr& motive, const ValuePtr& z,
                      const ValuePtr& s, const ValuePtr& n) {
  if (n->tag == VTag::Zero) return z;
  if (n->tag == VTag::Suc) {
    ValuePtr rec = natElimValue(kern, motive, z, s, n->a);
    return vApp(kern, vApp(kern, s, n->a), rec);
  }
  if (n->tag != VTag::Neutral) kernelBug("natElim on non-Nat");
  return pushElim(n, Elim{Elim::Kind::NatElim, {motive, z, s}});
}

ValuePtr lvlElimValue(const Kernel& kern, const ValuePtr& motive, const ValuePtr& z,
                      const ValuePtr& s, const LevelValue& l) {
  if (l.isClosed() && l.asClosed().block == 0) {
    uint32_t n = l.asClosed().offset;
    ValuePtr acc = z;
    LevelValue cur = LevelValue::closed(finLevel(0));
    for (uint32_t k = 0; k < n; k++) {
      acc = vApp(kern, vApp(kern, s, vLvl(cur)), acc);
      cur = sucLevel(cur);
    }
    return acc;
  }
  // Peel successors off a single stuck atom; anything else is fully stuck.
  if (l.atoms.size() == 1 && l.atoms[0].base == LevelAtom::Base::Stuck &&
      l.atoms[0].shift > 0) {
    LevelValue pred = l;
    pred.atoms[0].shift--;
    ValuePtr rec = lvlElimValue(kern, motive, z, s, pred);
    return vApp(kern, vApp(kern, s, vLvl(pred)), rec);
  }
  return pushElim(levelNeutral(l), Elim{Elim::Kind::LvlElim, {motive, z, s}});
}

}  // namespace

TermPtr quoteLevel(const Kernel& kern, int depth, const LevelValue& l) {
  TermPtr out;
  for (const auto& at : l.atoms) {
    TermPtr base;
    switch (at.base) {
      case LevelAtom::Base::Zero: base = mkTerm(Tag::LZero); break;
      case LevelAtom::Base::Omega: base = mkTerm(Tag::LOmega); break;
      case LevelAtom::Base::Stuck: base = quote(kern, depth, at.stuck); break;
    }
    for (uint32_t k = 0; k < at.shift; k++) base = mkTerm(Tag::LSuc, {base});
    out = out ? mkTerm(Tag::LSup, {out, base}) : base;
  }
  return out;
}

TermPtr quote(const Kernel& kern, int depth, const ValuePtr& v) {
  switch (v->tag) {
    case VTag::Lam:
      return mkBind(Tag::Lam, v->clo.name,
                    {quote(kern, depth + 1, apply(kern, v->clo, vVar(depth)))});
    case VTag::Pi:
      return mkBind(Tag::Pi, v->clo.name,
                    {quote(kern, depth, v->a),
                     quote(kern, depth + 1, apply(kern, v->clo, vVar(depth)))});
    case VTag::Bool: return mkTerm(Tag::Bool);
    case VTag::True: return mkTerm(Tag::True);
    case VTag::False: return mkTerm(Tag::False);
    case VTag::Nat: return mkTerm(Tag::Nat);
    case VTag::Zero: return mkTerm(Tag::Zero);
    case VTag::Suc: return mkTerm(Tag::Suc, {quote(kern, depth, v->a)});
    case VTag::Empty: return mkTerm(Tag::Empty);
    case VTag::Unit: return mkTerm(Tag::Unit);
    case VTag::Tt: return mkTerm(Tag::Tt);
    case VTag::Univ: {
      TermPtr i = quoteLevel(kern, depth, v->lvl1);
      TermPtr j = quoteLevel(kern, depth, v->lvl2);
      return mkTerm(Tag::Univ, {i, j, mkPrim(PrimId::LtDec, {i, j})});
    }
    case VTag::LvlTy: return mkTerm(Tag::LvlTy);
    case VTag::Lvl: return quoteLevel(kern, depth, v->lvl1);
    case VTag::LtTy:
      return mkTerm(Tag::LtTy, {quoteLevel(kern, depth, v->lvl1),
                                quoteLevel(kern, depth, v->lvl2)});
    case VTag::LtTok:
      return mkPrim(PrimId::LtDec, {quoteLevel(kern, depth, v->lvl1),
                                    quoteLevel(kern, depth, v->lvl2)});
    case VTag::LiftStuck:
      return mkTerm(Tag::LiftTy, {quoteLevel(kern, depth, v->lvl1),
                                  quote(kern, depth, v->a), quote(kern, depth, v->b)});
    case VTag::Neutral: {
      TermPtr acc;
      size_t spineStart = 0;
      switch (v->neu.head) {
        case Neutral::Head::Var:
          acc = mkVar(depth - 1 - v->neu.varLevel);
          break;
        case Neutral::Head::Prim: {
          // ltFinOmega blocked on a neutral Nat argument.
          std::vector<TermPtr> args;
          if (!v->neu.spine.empty() && v->neu.spine[0].kind == Elim::Kind::App) {
            args.push_back(quote(kern, depth, v->neu.spine[0].args[0]));
            spineStart = 1;
          }
          acc = mkPrim(v->neu.prim, std::move(args));
          break;
        }
        case Neutral::Head::Level:
          acc = quoteLevel(kern, depth, *v->neu.lvlHead);
          break;
      }
      for (size_t i = spineStart; i < v->neu.spine.size(); i++) {
        const Elim& e = v->neu.spine[i];
        auto q = [&](const ValuePtr& x) { return quote(kern, depth, x); };
        switch (e.kind) {
          case Elim::Kind::App: acc = mkTerm(Tag::App, {acc, q(e.args[0])}); break;
          case Elim::Kind::If:
            acc = mkTerm(Tag::If, {q(e.args[0]), acc, q(e.args[1]), q(e.args[2])});
            break;
          case Elim::Kind::NatElim:
            acc = mkTerm(Tag::NatElim, {q(e.args[0]), q(e.args[1]), q(e.args[2]), acc});
            break;
          case Elim::Kind::Exfalso:
            acc = mkTerm(Tag::Exfalso, {q(e.args[0]), acc});
            break;
          case Elim::Kind::LvlElim:
            acc = mkTerm(Tag::LvlElim, {q(e.args[0]), q(e.args[1]), q(e.args[2]), acc});
            break;
        }
      }
      return acc;
    }
  }
  kernelBug("unknown value tag");
}

bool convValue(const Kernel& kern, int depth, const ValuePtr& a, const ValuePtr& b) {
  if (a == b) return true;
  if (a->tag == VTag::LtTok && b->tag == VTag::LtTok) return true;
  // Eta for functions inside untyped comparison.
  if (a->tag == VTag::Lam || b->tag == VTag::Lam) {
    auto applicable = [](const ValuePtr& v) {
      return v->tag == VTag::Lam || v->tag == VTag::Neutral;
    };
    if (!applicable(a) || !applicable(b)) return false;
    ValuePtr fresh = vVar(depth);
    return convValue(kern, depth + 1, vApp(kern, a, fresh), vApp(kern, b, fresh));
  }
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case VTag::Pi: {
      if (!convValue(kern, depth, a->a, b->a)) return false;
      ValuePtr fresh = vVar(depth);
      return convValue(kern, depth + 1, apply(kern, a->clo, fresh),
                       apply(kern, b->clo, fresh));
    }
    case VTag::Suc: return convValue(kern, depth, a->a, b->a);
    case VTag::Univ: return levelEq(a->lvl1, b->lvl1);  // LiftU: second index ignored
    case VTag::Lvl: return levelEq(a->lvl1, b->lvl1);
    case VTag::LtTy:
      return levelEq(a->lvl1, b->lvl1) && levelEq(a->lvl2, b->lvl2);
    case VTag::LiftStuck:
      return levelEq(a->lvl1, b->lvl1) && convValue(kern, depth, a->b, b->b);
    case VTag::Neutral: {
      const Neutral& na = a->neu;
      const Neutral& nb = b->neu;
      if (na.head != nb.head || na.varLevel != nb.varLevel) return false;
      if (na.head == Neutral::Head::Prim && na.prim != nb.prim) return false;
      if (na.head == Neutral::Head::Level && !levelEq(*na.lvlHead, *nb.lvlHead))
        return false;
      if (na.spine.size() != nb.spine.size()) return false;
      for (size_t i = 0; i < na.spine.size(); i++) {
        if (na.spine[i].kind != nb.spine[i].kind) return false;
        if (na.spine[i].args.size() != nb.spine[i].args.size()) return false;
        for (size_t k = 0; k < na.spine[i].args.size(); k++)
          if (!convValue(kern, depth, na.spine[i].args[k], nb.spine[i].args[k]))
            return false;
      }
      return true;
    }
    default: return true;  // matching canonical constants
  }
}

bool conv(const Kernel& kern, int depth, const ValuePtr& a, const ValuePtr& b,
          const ValuePtr& ty) {
  ValuePtr sty = stripLift(ty);
  switch (sty->tag) {
    case VTag::LtTy: return true;  // <prop: proof irrelevance
    case VTag::Unit: return true;  // eta for the unit type
    case VTag::Pi: {
      ValuePtr fresh = vVar(depth);
      return conv(kern, depth + 1, vApp(kern, a, fresh), vApp(kern, b, fresh),
                  apply(kern, sty->clo, fresh));
    }
    case VTag::LvlTy: return levelEq(asLevel(a), asLevel(b));
    default: return convValue(kern, depth, a, b);
  }
}

}  // namespace ttfl
