#include "ttfl/elab.hpp"

#include <sstream>

namespace ttfl {

namespace {

const LevelValue kL0 = LevelValue::closed(finLevel(0));

[[noreturn]] void fail(const Ctx& ctx, ErrKind k, Span sp, std::string msg) {
  std::string c;
  for (const auto& b : ctx.binders) {
    if (!c.empty()) c += ", ";
    c += b.name;
  }
  throw ElabError{k, sp, std::move(msg), std::move(c)};
}

// Largest de Bruijn level occurring free in a value; -1 when closed. Free
// variables of a closure can only enter through its environment.
int valueMaxVar(const ValuePtr& v);

int levelMaxVar(const LevelValue& l) {
  int m = -1;
  for (const auto& at : l.atoms)
    if (at.base == LevelAtom::Base::Stuck) m = std::max(m, valueMaxVar(at.stuck));
  return m;
}

int closureMaxVar(const Closure& c) {
  int m = -1;
  for (const auto& v : c.env) m = std::max(m, valueMaxVar(v));
  if (c.liftTo) m = std::max(m, levelMaxVar(*c.liftTo));
  if (c.liftProof) m = std::max(m, valueMaxVar(c.liftProof));
  return m;
}

int valueMaxVar(const ValuePtr& v) {
  if (!v) return -1;
  int m = -1;
  switch (v->tag) {
    case VTag::Neutral: {
      if (v->neu.head == Neutral::Head::Var) m = v->neu.varLevel;
      if (v->neu.lvlHead) m = std::max(m, levelMaxVar(*v->neu.lvlHead));
      for (const auto& e : v->neu.spine)
        for (const auto& a : e.args) m = std::max(m, valueMaxVar(a));
      return m;
    }
    case VTag::Lam:
      return closureMaxVar(v->clo);
    case VTag::Pi:
      return std::max(valueMaxVar(v->a), closureMaxVar(v->clo));
    case VTag::Suc:
      return valueMaxVar(v->a);
    case VTag::Univ:
    case VTag::LtTy:
    case VTag::LtTok:
      return std::max(levelMaxVar(v->lvl1), levelMaxVar(v->lvl2));
    case VTag::Lvl:
      return levelMaxVar(v->lvl1);
    case VTag::LiftStuck:
      m = levelMaxVar(v->lvl1);
      m = std::max(m, valueMaxVar(v->a));
      return std::max(m, valueMaxVar(v->b));
    default:
      return -1;
  }
}

int binderShift(Tag tag, size_t kid) {
  switch (tag) {
    case Tag::Lam: return kid == 0 ? 1 : 0;
    case Tag::Pi: return kid == 1 ? 1 : 0;
    case Tag::Let: return kid == 2 ? 1 : 0;
    default: return 0;
  }
}

TermPtr shiftTerm(const TermPtr& t, int cutoff, int d) {
  if (t->tag == Tag::Var)
    return t->ix >= cutoff ? mkVar(t->ix + d) : t;
  if (t->kids.empty()) return t;
  auto copy = std::make_shared<Term>(*t);
  for (size_t k = 0; k < copy->kids.size(); k++)
    copy->kids[k] = shiftTerm(copy->kids[k], cutoff + binderShift(t->tag, k), d);
  return copy;
}

struct Scope {
  Ctx& ctx;
  Scope(Ctx& c, std::string name, ValuePtr ty, LevelValue lvl, ValuePtr val)
      : ctx(c) {
    ctx.binders.push_back({std::move(name), std::move(ty), std::move(lvl)});
    ctx.env.push_back(std::move(val));
  }
  ~Scope() {
    ctx.binders.pop_back();
    ctx.env.pop_back();
  }
};

}  // namespace

const char* errKindName(ErrKind k) {
  switch (k) {
    case ErrKind::Unbound: return "UNBOUND";
    case ErrKind::Mismatch: return "MISMATCH";
    case ErrKind::NotAType: return "NOT_A_TYPE";
    case ErrKind::LevelOrder: return "LEVEL_ORDER";
    case ErrKind::NoSubtype: return "NO_SUBTYPE";
    case ErrKind::Parse: return "PARSE";
  }
  return "?";
}

std::vector<std::string> Ctx::names() const {
  std::vector<std::string> out;
  out.reserve(binders.size());
  for (const auto& b : binders) out.push_back(b.name);
  return out;
}

TermPtr levelToCore(Level l) {
  TermPtr t = mkTerm(l.block ? Tag::LOmega : Tag::LZero);
  for (uint32_t k = 0; k < l.offset; k++) t = mkTerm(Tag::LSuc, {t});
  return t;
}

namespace {

std::string showTy(const Kernel& kern, const Ctx& ctx, const ValuePtr& v) {
  return prettyCore(quote(kern, ctx.depth(), v), kern, ctx.names());
}

std::string showLvlV(const Kernel& kern, const Ctx& ctx, const LevelValue& l) {
  return prettyCore(quoteLevel(kern, ctx.depth(), l), kern, ctx.names());
}

// Type equality: strips stuck lifts on both sides at every Pi layer.
bool tyConv(const Kernel& kern, int depth, const ValuePtr& a, const ValuePtr& b) {
  ValuePtr sa = stripLift(a), sb = stripLift(b);
  if (sa->tag == VTag::Pi && sb->tag == VTag::Pi) {
    if (!tyConv(kern, depth, sa->a, sb->a)) return false;
    ValuePtr fresh = vVar(depth);
    return tyConv(kern, depth + 1, apply(kern, sa->clo, fresh),
                  apply(kern, sb->clo, fresh));
  }
  return convValue(kern, depth, sa, sb);
}

}  // namespace

LevelValue Elaborator::reflectLevel(const Ctx& ctx, const TermPtr& t) {
  return asLevel(eval(kern_, ctx.env, t));
}

std::optional<Coercion> Elaborator::subtype(Ctx& ctx, const ValuePtr& a,
                                            const ValuePtr& b) {
  ValuePtr sa = stripLift(a), sb = stripLift(b);
  int d = ctx.depth();
  if (convValue(kern_, d, sa, sb)) return Coercion{};
  if (sa->tag == VTag::Univ && sb->tag == VTag::Univ) {
    if (sa->lvl1.isClosed() && sb->lvl1.isClosed() &&
        lt(sa->lvl1.asClosed(), sb->lvl1.asClosed())) {
      Coercion c;
      c.kind = Coercion::Kind::ULe;
      c.targetLevel = quoteLevel(kern_, d, sb->lvl1);
      c.proof = mkPrim(PrimId::LtDec,
                       {quoteLevel(kern_, d, sa->lvl1), c.targetLevel});
      return c;
    }
    return std::nullopt;
  }
  if (sa->tag == VTag::Pi && sb->tag == VTag::Pi) {
    auto domCo = subtype(ctx, sb->a, sa->a);
    if (!domCo) return std::nullopt;
    std::optional<Coercion> codCo;
    {
      Scope sc(ctx, sb->clo.name.empty() ? "x" : sb->clo.name, sb->a, kL0,
               vVar(d));
      TermPtr argC = applyCoercion(*domCo, mkVar(0));
      ValuePtr argV = eval(kern_, ctx.env, argC);
      codCo = subtype(ctx, apply(kern_, sa->clo, argV),
                      apply(kern_, sb->clo, vVar(d)));
    }
    if (!codCo) return std::nullopt;
    if (domCo->kind == Coercion::Kind::Refl &&
        codCo->kind == Coercion::Kind::Refl)
      return Coercion{};
    Coercion c;
    c.kind = Coercion::Kind::PiLe;
    c.dom = std::make_shared<Coercion>(std::move(*domCo));
    c.cod = std::make_shared<Coercion>(std::move(*codCo));
    c.binder = sb->clo.name.empty() ? "x" : sb->clo.name;
    return c;
  }
  return std::nullopt;
}

TermPtr Elaborator::applyCoercion(const Coercion& co, const TermPtr& t) {
  switch (co.kind) {
    case Coercion::Kind::Refl:
      return t;
    case Coercion::Kind::ULe:
      return mkTerm(Tag::LiftTy, {co.targetLevel, co.proof, t});
    case Coercion::Kind::PiLe: {
      TermPtr arg = applyCoercion(*co.dom, mkVar(0));
      TermPtr app = mkTerm(Tag::App, {shiftTerm(t, 0, 1), arg});
      return mkBind(Tag::Lam, co.binder, {applyCoercion(*co.cod, app)});
    }
  }
  return t;
}

Elaborator::TypeRes Elaborator::checkIsType(Ctx& ctx, const STermPtr& t) {
  Judgment j = infer(ctx, t);
  if (j.isType) return {j.core, j.type, j.lvl};
  ValuePtr sty = stripLift(j.type);
  if (sty->tag == VTag::Univ)
    return {j.core, eval(kern_, ctx.env, j.core), sty->lvl1};
  fail(ctx, ErrKind::NotAType, t->span,
       "expected a type, found a term of " + showTy(kern_, ctx, j.type));
}

Elaborator::Motive Elaborator::elabMotive(Ctx& ctx, const STermPtr& t,
                                          const ValuePtr& domTy,
                                          const LevelValue& domLvl) {
  int d = ctx.depth();
  if (t->kind == SKind::Lam) {
    TypeRes body;
    {
      Scope sc(ctx, t->name, domTy, domLvl, vVar(d));
      body = checkIsType(ctx, t->a);
    }
    TermPtr lvlCore = quoteLevel(kern_, d + 1, body.lvl);
    TermPtr core = mkBind(Tag::Lam, t->name, {body.core});
    return {core, vLam(Closure{ctx.env, body.core, t->name, {}, nullptr}),
            lvlCore};
  }
  Judgment mj = infer(ctx, t);
  if (mj.isType)
    fail(ctx, ErrKind::Mismatch, t->span, "the motive must be a function");
  ValuePtr ft = stripLift(mj.type);
  if (ft->tag != VTag::Pi)
    fail(ctx, ErrKind::Mismatch, t->span, "the motive must be a function");
  if (!tyConv(kern_, d, ft->a, domTy))
    fail(ctx, ErrKind::Mismatch, t->span,
         "the motive's domain is " + showTy(kern_, ctx, ft->a) +
             " where " + showTy(kern_, ctx, domTy) + " is scrutinized");
  ValuePtr codV = stripLift(apply(kern_, ft->clo, vVar(d)));
  if (codV->tag != VTag::Univ)
    fail(ctx, ErrKind::NotAType, t->span,
         "the motive must land in a universe");
  TermPtr lvlCore = quoteLevel(kern_, d + 1, codV->lvl1);
  return {mj.core, eval(kern_, ctx.env, mj.core), lvlCore};
}

LevelValue Elaborator::motiveLvlAt(const Ctx& ctx, const Motive& m,
                                   const ValuePtr& scrut) {
  Env env = ctx.env;
  env.push_back(scrut);
  return asLevel(eval(kern_, env, m.lvlCore));
}

Judgment Elaborator::applyArgs(Ctx& ctx, Judgment head,
                               const std::vector<STermPtr>& args, size_t from) {
  for (size_t k = from; k < args.size(); k++) {
    if (head.isType)
      fail(ctx, ErrKind::Mismatch, args[k]->span, "a type is not a function");
    ValuePtr fty = stripLift(head.type);
    if (fty->tag != VTag::Pi)
      fail(ctx, ErrKind::Mismatch, args[k]->span,
           "expected a function, found a term of " +
               showTy(kern_, ctx, head.type));
    TermPtr argCore = check(ctx, args[k], fty->a, head.lvl);
    ValuePtr argVal = eval(kern_, ctx.env, argCore);
    head.core = mkTerm(Tag::App, {head.core, argCore});
    head.type = apply(kern_, fty->clo, argVal);
  }
  return head;
}

Judgment Elaborator::builtinSpine(Ctx& ctx, Span span, BuiltinId b,
                                  const std::vector<STermPtr>& args) {
  const Kernel& K = kern_;
  int d = ctx.depth();
  auto need = [&](size_t n, const char* who) {
    if (args.size() < n)
      fail(ctx, ErrKind::Mismatch, span,
           std::string(who) + " expects " + std::to_string(n) + " arguments");
  };
  auto checkLvl = [&](const STermPtr& a) { return check(ctx, a, vCanon(VTag::LvlTy), kL0); };
  auto lvlOf = [&](const TermPtr& c) { return asLevel(eval(K, ctx.env, c)); };
  auto rest = [&](Judgment j, size_t used) {
    return applyArgs(ctx, std::move(j), args, used);
  };

  switch (b) {
    case BuiltinId::U: {
      need(2, "U");
      TermPtr ci = checkLvl(args[0]);
      TermPtr cj = checkLvl(args[1]);
      LevelValue iv = lvlOf(ci), jv = lvlOf(cj);
      // A closed index must denote a stage of the active structure, even
      // when an explicit proof is supplied; otherwise a successor computed
      // past the ceiling could smuggle in a universe above every stage.
      for (const LevelValue* lp : {&iv, &jv})
        if (lp->isClosed() && !levelValid(K.structure, lp->asClosed()))
          fail(ctx, ErrKind::LevelOrder, span,
               "level " + showLvlV(K, ctx, *lp) + " is not a stage of " +
                   showStructure(K.structure));
      TermPtr cp;
      if (args.size() >= 3) {
        cp = check(ctx, args[2], vLtTy(iv, jv), kL0);
      } else if (iv.isClosed() && jv.isClosed()) {
        if (!ltWitness(K.structure, iv.asClosed(), jv.asClosed()))
          fail(ctx, ErrKind::LevelOrder, span,
               showLevel(K.structure, iv.asClosed()) + " < " +
                   showLevel(K.structure, jv.asClosed()) + " does not hold");
        cp = mkPrim(PrimId::LtDec, {ci, cj});
      } else {
        fail(ctx, ErrKind::LevelOrder, span,
             "an explicit order proof is required for open levels");
      }
      Judgment j{mkTerm(Tag::Univ, {ci, cj, cp}), true, vUniv(iv, jv), jv};
      if (args.size() > 3) return rest(std::move(j), 3);
      return j;
    }
    case BuiltinId::Lift: {
      need(2, "Lift");
      Judgment pj = infer(ctx, args[0]);
      ValuePtr pty = stripLift(pj.type);
      if (pj.isType || pty->tag != VTag::LtTy)
        fail(ctx, ErrKind::Mismatch, args[0]->span,
             "Lift expects an order proof as its first argument");
      LevelValue iv = pty->lvl1, jv = pty->lvl2;
      if (jv.isClosed() && !levelValid(K.structure, jv.asClosed()))
        fail(ctx, ErrKind::LevelOrder, span,
             "level " + showLvlV(K, ctx, jv) + " is not a stage of " +
                 showStructure(K.structure));
      TypeRes A = checkIsType(ctx, args[1]);
      bool ok = levelEq(A.lvl, iv) ||
                (A.lvl.isClosed() && iv.isClosed() &&
                 lt(A.lvl.asClosed(), iv.asClosed()));
      if (!ok)
        fail(ctx, ErrKind::LevelOrder, args[1]->span,
             "the lifted type lives at " + showLvlV(K, ctx, A.lvl) +
                 " but the proof starts at " + showLvlV(K, ctx, iv));
      ValuePtr pv = eval(K, ctx.env, pj.core);
      TermPtr core =
          mkTerm(Tag::LiftTy, {quoteLevel(K, d, jv), pj.core, A.core});
      return rest({core, true, liftValue(K, jv, pv, A.type), jv}, 2);
    }
    case BuiltinId::Coerce: {
      need(2, "coerce");
      TypeRes T = checkIsType(ctx, args[0]);
      TermPtr c = check(ctx, args[1], T.type, T.lvl);
      return rest({c, false, T.type, T.lvl}, 2);
    }
    case BuiltinId::Bool:
      return rest({mkTerm(Tag::Bool), true, vCanon(VTag::Bool), kL0}, 0);
    case BuiltinId::Nat:
      return rest({mkTerm(Tag::Nat), true, vCanon(VTag::Nat), kL0}, 0);
    case BuiltinId::Empty:
      return rest({mkTerm(Tag::Empty), true, vCanon(VTag::Empty), kL0}, 0);
    case BuiltinId::Unit:
      return rest({mkTerm(Tag::Unit), true, vCanon(VTag::Unit), kL0}, 0);
    case BuiltinId::Lvl:
      return rest({mkTerm(Tag::LvlTy), true, vCanon(VTag::LvlTy), kL0}, 0);
    case BuiltinId::True:
      return rest({mkTerm(Tag::True), false, vCanon(VTag::Bool), kL0}, 0);
    case BuiltinId::False:
      return rest({mkTerm(Tag::False), false, vCanon(VTag::Bool), kL0}, 0);
    case BuiltinId::Zero:
      return rest({mkTerm(Tag::Zero), false, vCanon(VTag::Nat), kL0}, 0);
    case BuiltinId::Tt:
      return rest({mkTerm(Tag::Tt), false, vCanon(VTag::Unit), kL0}, 0);
    case BuiltinId::Suc: {
      need(1, "suc");
      TermPtr c = check(ctx, args[0], vCanon(VTag::Nat), kL0);
      return rest({mkTerm(Tag::Suc, {c}), false, vCanon(VTag::Nat), kL0}, 1);
    }
    case BuiltinId::If: {
      need(4, "if");
      Motive m = elabMotive(ctx, args[0], vCanon(VTag::Bool), kL0);
      TermPtr sc = check(ctx, args[1], vCanon(VTag::Bool), kL0);
      ValuePtr sv = eval(K, ctx.env, sc);
      TermPtr th = check(ctx, args[2], vApp(K, m.value, vCanon(VTag::True)),
                         motiveLvlAt(ctx, m, vCanon(VTag::True)));
      TermPtr el = check(ctx, args[3], vApp(K, m.value, vCanon(VTag::False)),
                         motiveLvlAt(ctx, m, vCanon(VTag::False)));
      return rest({mkTerm(Tag::If, {m.core, sc, th, el}), false,
                   vApp(K, m.value, sv), motiveLvlAt(ctx, m, sv)},
                  4);
    }
    case BuiltinId::NatElim: {
      need(4, "natElim");
      Motive m = elabMotive(ctx, args[0], vCanon(VTag::Nat), kL0);
      TermPtr z = check(ctx, args[1], vApp(K, m.value, vCanon(VTag::Zero)),
                        motiveLvlAt(ctx, m, vCanon(VTag::Zero)));
      // s : (n : Nat) -> M n -> M (suc n), built directly in the semantics
      // with the motive value threaded through the closure environment.
      TermPtr sbody =
          mkBind(Tag::Pi, "_",
                 {mkTerm(Tag::App, {mkVar(1), mkVar(0)}),
                  mkTerm(Tag::App, {mkVar(2), mkTerm(Tag::Suc, {mkVar(1)})})});
      ValuePtr sTy =
          vPi(vCanon(VTag::Nat), Closure{{m.value}, sbody, "n", {}, nullptr});
      TermPtr s = check(ctx, args[2], sTy, kL0);
      TermPtr n = check(ctx, args[3], vCanon(VTag::Nat), kL0);
      ValuePtr nv = eval(K, ctx.env, n);
      return rest({mkTerm(Tag::NatElim, {m.core, z, s, n}), false,
                   vApp(K, m.value, nv), motiveLvlAt(ctx, m, nv)},
                  4);
    }
    case BuiltinId::Exfalso: {
      need(2, "exfalso");
      TypeRes T = checkIsType(ctx, args[0]);
      TermPtr e = check(ctx, args[1], vCanon(VTag::Empty), kL0);
      return rest({mkTerm(Tag::Exfalso, {T.core, e}), false, T.type, T.lvl}, 2);
    }
    case BuiltinId::Lt: {
      need(2, "Lt");
      TermPtr ci = checkLvl(args[0]);
      TermPtr cj = checkLvl(args[1]);
      return rest({mkTerm(Tag::LtTy, {ci, cj}), true,
                   vLtTy(lvlOf(ci), lvlOf(cj)), kL0},
                  2);
    }
    case BuiltinId::LZero:
      return rest({mkTerm(Tag::LZero), false, vCanon(VTag::LvlTy), kL0}, 0);
    case BuiltinId::LSuc: {
      need(1, "lsuc");
      TermPtr c = checkLvl(args[0]);
      LevelValue lv = lvlOf(c);
      if (lv.isClosed()) {
        if (!succLevel(K.structure, lv.asClosed()))
          fail(ctx, ErrKind::LevelOrder, span,
               showLevel(K.structure, lv.asClosed()) +
                   " has no successor in " + showStructure(K.structure));
      }
      return rest({mkTerm(Tag::LSuc, {c}), false, vCanon(VTag::LvlTy), kL0}, 1);
    }
    case BuiltinId::LOmega: {
      if (!hasOmega(K.structure))
        fail(ctx, ErrKind::LevelOrder, span,
             "lomega is not a level of " + showStructure(K.structure));
      return rest({mkTerm(Tag::LOmega), false, vCanon(VTag::LvlTy), kL0}, 0);
    }
    case BuiltinId::LSup: {
      need(2, "lsup");
      TermPtr ci = checkLvl(args[0]);
      TermPtr cj = checkLvl(args[1]);
      return rest({mkTerm(Tag::LSup, {ci, cj}), false, vCanon(VTag::LvlTy), kL0},
                  2);
    }
    case BuiltinId::LtDec: {
      need(2, "ltDec");
      TermPtr ci = checkLvl(args[0]);
      TermPtr cj = checkLvl(args[1]);
      LevelValue iv = lvlOf(ci), jv = lvlOf(cj);
      if (!iv.isClosed() || !jv.isClosed())
        fail(ctx, ErrKind::LevelOrder, span,
             "ltDec decides closed levels only");
      if (!ltWitness(K.structure, iv.asClosed(), jv.asClosed()))
        fail(ctx, ErrKind::LevelOrder, span,
             showLevel(K.structure, iv.asClosed()) + " < " +
                 showLevel(K.structure, jv.asClosed()) + " does not hold");
      return rest({mkPrim(PrimId::LtDec, {ci, cj}), false, vLtTy(iv, jv), kL0},
                  2);
    }
    case BuiltinId::LtSucSelf: {
      need(1, "ltSucSelf");
      TermPtr c = checkLvl(args[0]);
      LevelValue lv = lvlOf(c);
      if (lv.isClosed()) {
        if (!succLevel(K.structure, lv.asClosed()))
          fail(ctx, ErrKind::LevelOrder, span,
               showLevel(K.structure, lv.asClosed()) +
                   " has no successor in " + showStructure(K.structure));
      }
      return rest({mkPrim(PrimId::LtSucSelf, {c}), false,
                   vLtTy(lv, sucLevel(lv)), kL0},
                  1);
    }
    case BuiltinId::LtTrans: {
      need(5, "ltTrans");
      TermPtr ci = checkLvl(args[0]);
      TermPtr cj = checkLvl(args[1]);
      TermPtr ck = checkLvl(args[2]);
      LevelValue iv = lvlOf(ci), jv = lvlOf(cj), kv = lvlOf(ck);
      TermPtr pjk = check(ctx, args[3], vLtTy(jv, kv), kL0);
      TermPtr pij = check(ctx, args[4], vLtTy(iv, jv), kL0);
      return rest({mkPrim(PrimId::LtTrans, {ci, cj, ck, pjk, pij}), false,
                   vLtTy(iv, kv), kL0},
                  5);
    }
    case BuiltinId::LtFinOmega: {
      need(1, "ltFinOmega");
      if (!hasOmega(K.structure))
        fail(ctx, ErrKind::LevelOrder, span,
             "lomega is not a level of " + showStructure(K.structure));
      TermPtr cn = check(ctx, args[0], vCanon(VTag::Nat), kL0);
      ValuePtr nv = eval(K, ctx.env, cn);
      // finToLvl n, computed by the evaluator itself.
      TermPtr mot = mkBind(Tag::Lam, "_", {mkTerm(Tag::LvlTy)});
      TermPtr s = mkBind(
          Tag::Lam, "m",
          {mkBind(Tag::Lam, "r", {mkTerm(Tag::LSuc, {mkVar(0)})})});
      TermPtr fin =
          mkTerm(Tag::NatElim, {mot, mkTerm(Tag::LZero), s, mkVar(0)});
      LevelValue lv = asLevel(eval(K, Env{nv}, fin));
      return rest({mkPrim(PrimId::LtFinOmega, {cn}), false,
                   vLtTy(lv, LevelValue::closed(omegaLevel())), kL0},
                  1);
    }
    case BuiltinId::LvlElim: {
      need(4, "lvlElim");
      if (K.structure != StructureId::Nat)
        fail(ctx, ErrKind::LevelOrder, span,
             "lvlElim eliminates levels of nat only");
      Motive m = elabMotive(ctx, args[0], vCanon(VTag::LvlTy), kL0);
      ValuePtr zeroL = vLvl(kL0);
      TermPtr z = check(ctx, args[1], vApp(K, m.value, zeroL),
                        motiveLvlAt(ctx, m, zeroL));
      // s : (l : Lvl) -> M l -> M (lsuc l)
      TermPtr sbody =
          mkBind(Tag::Pi, "_",
                 {mkTerm(Tag::App, {mkVar(1), mkVar(0)}),
                  mkTerm(Tag::App, {mkVar(2), mkTerm(Tag::LSuc, {mkVar(1)})})});
      ValuePtr sTy =
          vPi(vCanon(VTag::LvlTy), Closure{{m.value}, sbody, "l", {}, nullptr});
      TermPtr s = check(ctx, args[2], sTy, kL0);
      TermPtr l = check(ctx, args[3], vCanon(VTag::LvlTy), kL0);
      ValuePtr lv = eval(K, ctx.env, l);
      return rest({mkTerm(Tag::LvlElim, {m.core, z, s, l}), false,
                   vApp(K, m.value, lv), motiveLvlAt(ctx, m, lv)},
                  4);
    }
  }
  fail(ctx, ErrKind::Mismatch, span, "unknown builtin");
}

Judgment Elaborator::infer(Ctx& ctx, const STermPtr& t) {
  switch (t->kind) {
    case SKind::Var: {
      int d = ctx.depth();
      for (int k = 0; k < d; k++) {
        const auto& b = ctx.binders[(size_t)(d - 1 - k)];
        if (b.name == t->name)
          return {mkVar(k), false, b.type, b.lvl};
      }
      for (size_t g = 0; g < kern_.globals.size(); g++) {
        const Global& gl = kern_.globals[g];
        if (gl.name == t->name) {
          if (gl.isType)
            return {mkGlobal((int)g, gl.name), true, gl.value, gl.lvl};
          return {mkGlobal((int)g, gl.name), false, gl.type, gl.lvl};
        }
      }
      fail(ctx, ErrKind::Unbound, t->span, "unbound name " + t->name);
    }
    case SKind::Lam:
      fail(ctx, ErrKind::Mismatch, t->span,
           "cannot infer the type of a bare lambda; add an annotation");
    case SKind::App: {
      std::vector<STermPtr> args;
      STermPtr head = t;
      while (head->kind == SKind::App) {
        args.push_back(head->b);
        head = head->a;
      }
      std::reverse(args.begin(), args.end());
      if (head->kind == SKind::Builtin)
        return builtinSpine(ctx, t->span, head->builtin, args);
      return applyArgs(ctx, infer(ctx, head), args, 0);
    }
    case SKind::Builtin:
      return builtinSpine(ctx, t->span, t->builtin, {});
    case SKind::Pi: {
      int d = ctx.depth();
      TypeRes dom = checkIsType(ctx, t->a);
      TypeRes cod;
      Env outer = ctx.env;
      {
        Scope sc(ctx, t->name, dom.type, dom.lvl, vVar(d));
        cod = checkIsType(ctx, t->b);
      }
      LevelValue plv = lsupValue(dom.lvl, cod.lvl);
      if (levelMaxVar(plv) >= d)
        fail(ctx, ErrKind::LevelOrder, t->span,
             "the codomain level escapes its binder; no level bounds this "
             "function type");
      TermPtr core = mkBind(Tag::Pi, t->name, {dom.core, cod.core});
      return {core, true,
              vPi(dom.type, Closure{outer, cod.core, t->name, {}, nullptr}),
              plv};
    }
    case SKind::Let: {
      int d = ctx.depth();
      Judgment dj = infer(ctx, t->a);
      ValuePtr defVal = dj.isType ? dj.type : eval(kern_, ctx.env, dj.core);
      ValuePtr bty = dj.isType ? vUniv(dj.lvl, sucLevel(dj.lvl)) : dj.type;
      LevelValue blv = dj.isType ? sucLevel(dj.lvl) : dj.lvl;
      TermPtr tyCore = quote(kern_, d, bty);
      Judgment bj;
      {
        Scope sc(ctx, t->name, bty, blv, defVal);
        bj = infer(ctx, t->b);
      }
      bj.core = mkBind(Tag::Let, t->name, {tyCore, dj.core, bj.core});
      return bj;
    }
    case SKind::Lit: {
      TermPtr c = mkTerm(Tag::Zero);
      for (uint64_t k = 0; k < t->lit; k++) c = mkTerm(Tag::Suc, {c});
      return {c, false, vCanon(VTag::Nat), kL0};
    }
  }
  fail(ctx, ErrKind::Mismatch, t->span, "unreachable surface form");
}

TermPtr Elaborator::check(Ctx& ctx, const STermPtr& t, const ValuePtr& expected,
                          const LevelValue& lvl) {
  ValuePtr exp = stripLift(expected);
  switch (t->kind) {
    case SKind::Lam: {
      if (exp->tag != VTag::Pi)
        fail(ctx, ErrKind::Mismatch, t->span,
             "a function cannot have type " + showTy(kern_, ctx, expected));
      int d = ctx.depth();
      TermPtr body;
      {
        Scope sc(ctx, t->name, exp->a, lvl, vVar(d));
        body = check(ctx, t->a, apply(kern_, exp->clo, vVar(d)), lvl);
      }
      return mkBind(Tag::Lam, t->name, {body});
    }
    case SKind::Let: {
      int d = ctx.depth();
      Judgment dj = infer(ctx, t->a);
      ValuePtr defVal = dj.isType ? dj.type : eval(kern_, ctx.env, dj.core);
      ValuePtr bty = dj.isType ? vUniv(dj.lvl, sucLevel(dj.lvl)) : dj.type;
      LevelValue blv = dj.isType ? sucLevel(dj.lvl) : dj.lvl;
      TermPtr tyCore = quote(kern_, d, bty);
      TermPtr body;
      {
        Scope sc(ctx, t->name, bty, blv, defVal);
        body = check(ctx, t->b, expected, lvl);
      }
      return mkBind(Tag::Let, t->name, {tyCore, dj.core, body});
    }
    case SKind::Lit: {
      if (exp->tag == VTag::Nat) {
        TermPtr c = mkTerm(Tag::Zero);
        for (uint64_t k = 0; k < t->lit; k++) c = mkTerm(Tag::Suc, {c});
        return c;
      }
      if (exp->tag == VTag::LvlTy) {
        TermPtr c = mkTerm(Tag::LZero);
        for (uint64_t k = 0; k < t->lit; k++) c = mkTerm(Tag::LSuc, {c});
        return c;
      }
      break;
    }
    default:
      break;
  }
  Judgment j = infer(ctx, t);
  if (j.isType) {
    if (exp->tag == VTag::Univ) {
      if (levelEq(j.lvl, exp->lvl1)) return j.core;
      if (j.lvl.isClosed() && exp->lvl1.isClosed() &&
          lt(j.lvl.asClosed(), exp->lvl1.asClosed())) {
        TermPtr tgt = quoteLevel(kern_, ctx.depth(), exp->lvl1);
        TermPtr src = quoteLevel(kern_, ctx.depth(), j.lvl);
        return mkTerm(Tag::LiftTy,
                      {tgt, mkPrim(PrimId::LtDec, {src, tgt}), j.core});
      }
      fail(ctx, ErrKind::NoSubtype, t->span,
           "a type at level " + showLvlV(kern_, ctx, j.lvl) +
               " does not inhabit a universe at level " +
               showLvlV(kern_, ctx, exp->lvl1));
    }
    fail(ctx, ErrKind::Mismatch, t->span,
         "a type cannot have type " + showTy(kern_, ctx, expected));
  }
  if (tyConv(kern_, ctx.depth(), j.type, expected)) return j.core;
  if (auto co = subtype(ctx, j.type, expected))
    return applyCoercion(*co, j.core);
  ValuePtr sa = stripLift(j.type);
  ErrKind k = ((sa->tag == VTag::Pi && exp->tag == VTag::Pi) ||
               (sa->tag == VTag::Univ && exp->tag == VTag::Univ))
                  ? ErrKind::NoSubtype
                  : ErrKind::Mismatch;
  fail(ctx, k, t->span,
       "expected " + showTy(kern_, ctx, expected) + ", found a term of " +
           showTy(kern_, ctx, j.type));
}

void Elaborator::elabModule(const Module& m) {
  for (const Decl& d : m.decls) {
    Ctx ctx;
    Global g;
    g.name = d.name;
    if (d.ann) {
      TypeRes T = checkIsType(ctx, d.ann);
      g.coreBody = check(ctx, d.body, T.type, T.lvl);
      g.coreType = T.core;
      g.value = eval(kern_, {}, g.coreBody);
      g.type = T.type;
      g.lvl = T.lvl;
      g.isType = false;
    } else {
      Judgment j = infer(ctx, d.body);
      g.coreBody = j.core;
      g.coreType = nullptr;
      g.isType = j.isType;
      g.value = j.isType ? j.type : eval(kern_, {}, j.core);
      g.type = j.isType ? nullptr : j.type;
      g.lvl = j.lvl;
    }
    kern_.globals.push_back(std::move(g));
  }
}

}  // namespace ttfl
