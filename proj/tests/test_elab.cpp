#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "ttfl/elab.hpp"

using namespace ttfl;

namespace {

ErrKind errOf(const std::string& src, StructureId s = StructureId::Nat) {
  try {
    ttfl::test::elabSource(src, s);
  } catch (const ElabError& e) {
    return e.kind;
  } catch (const ParseError&) {
    return ErrKind::Parse;
  }
  FAIL("expected an elaboration error");
  return ErrKind::Parse;
}

const Global& globalOf(const Kernel& k, const std::string& name) {
  for (const auto& g : k.globals)
    if (g.name == name) return g;
  REQUIRE(false);
  return k.globals.front();
}

TermPtr nfOf(const Kernel& k, const std::string& name) {
  return quote(k, 0, globalOf(k, name).value);
}

}  // namespace

TEST_CASE("universe formation") {
  Kernel k = ttfl::test::elabSource("t = U 0 1;");
  const Global& g = globalOf(k, "t");
  CHECK(g.isType);
  REQUIRE(g.value->tag == VTag::Univ);
  CHECK(g.value->lvl1.asClosed() == finLevel(0));
  CHECK(g.lvl.asClosed() == finLevel(1));
  CHECK(errOf("t = U 0 0;") == ErrKind::LevelOrder);
  CHECK(errOf("t = U 1 0;") == ErrKind::LevelOrder);
}

TEST_CASE("universe formation is fine at any valid pair") {
  Kernel k = ttfl::test::elabSource("t = U 2 7;");
  CHECK(globalOf(k, "t").lvl.asClosed() == finLevel(7));
}

TEST_CASE("open universe indices demand an explicit proof") {
  CHECK(errOf("t : (l : Lvl) -> U 0 4 = \\l. U l 4;") == ErrKind::LevelOrder);
  Kernel k = ttfl::test::elabSource(
      "t : (l : Lvl) -> Lt l 4 -> U 4 5 = \\l p. U l 4 p;");
  (void)k;
}

TEST_CASE("bounded polymorphism works under hypotheses") {
  Kernel k = ttfl::test::elabSource(
      "idUpTo3 : (l : Lvl) -> (p : Lt l 3) -> (A : U l 3 p) -> Lift p A -> "
      "Lift p A = \\l p A a. a;");
  const Global& g = globalOf(k, "idUpTo3");
  CHECK(!g.isType);
  CHECK(g.lvl.asClosed() == finLevel(3));
  // the elaborated body is just the 4-ary constant-last lambda
  TermPtr b = g.coreBody;
  for (int i = 0; i < 4; i++) {
    REQUIRE(b->tag == Tag::Lam);
    b = b->kids[0];
  }
  CHECK(termEq(b, mkVar(0)));
}

TEST_CASE("strict cumulativity: checking against a lifted type inserts nothing") {
  Kernel k = ttfl::test::elabSource(
      "a : Bool = true;\n"
      "b : Lift (ltDec 0 1) Bool = true;\n"
      "c : Lift (ltDec 0 3) (Bool -> Bool) = \\x. x;\n"
      "d : Bool -> Bool = \\x. x;");
  CHECK(termEq(globalOf(k, "a").coreBody, globalOf(k, "b").coreBody));
  CHECK(termEq(globalOf(k, "c").coreBody, globalOf(k, "d").coreBody));
  // and a lifted value can flow back to the plain type silently
  Kernel k2 = ttfl::test::elabSource(
      "b : Lift (ltDec 0 1) Bool = true;\n"
      "a : Bool = b;");
  CHECK(termEq(globalOf(k2, "a").coreBody, mkGlobal(0, "b")));
}

TEST_CASE("subtyping: universes are covariant in the stage, by coercion") {
  Kernel k;
  k.structure = StructureId::Nat;
  Elaborator el(k);
  Ctx ctx;
  ValuePtr u01 = vUniv(LevelValue::closed(finLevel(0)),
                       LevelValue::closed(finLevel(1)));
  ValuePtr u12 = vUniv(LevelValue::closed(finLevel(1)),
                       LevelValue::closed(finLevel(2)));
  auto up = el.subtype(ctx, u01, u12);
  REQUIRE(up.has_value());
  CHECK(up->kind == Coercion::Kind::ULe);
  CHECK(!el.subtype(ctx, u12, u01).has_value());
  // the ULe coercion wraps in a lift to the target stage
  TermPtr coerced = el.applyCoercion(*up, mkTerm(Tag::Bool));
  REQUIRE(coerced->tag == Tag::LiftTy);
  CHECK(termEq(coerced->kids[2], mkTerm(Tag::Bool)));
}

TEST_CASE("subtyping: function types are contravariant in the domain") {
  Kernel k;
  k.structure = StructureId::Nat;
  Elaborator el(k);
  Ctx ctx;
  auto piv = [&](ValuePtr dom, Tag codTag) {
    return vPi(dom, Closure{{}, mkTerm(codTag), "_", {}, nullptr});
  };
  ValuePtr u01 = vUniv(LevelValue::closed(finLevel(0)),
                       LevelValue::closed(finLevel(1)));
  ValuePtr u12 = vUniv(LevelValue::closed(finLevel(1)),
                       LevelValue::closed(finLevel(2)));
  ValuePtr fromBig = piv(u12, Tag::Bool);    // U 1 -> Bool
  ValuePtr fromSmall = piv(u01, Tag::Bool);  // U 0 -> Bool
  // (U 1 -> Bool) <= (U 0 -> Bool): the bigger domain accepts lifted arguments
  auto co = el.subtype(ctx, fromBig, fromSmall);
  REQUIRE(co.has_value());
  CHECK(co->kind == Coercion::Kind::PiLe);
  CHECK(!el.subtype(ctx, fromSmall, fromBig).has_value());
  // incompatible shapes have no coercion at all
  CHECK(!el.subtype(ctx, piv(vCanon(VTag::Bool), Tag::Nat),
                    piv(vCanon(VTag::Nat), Tag::Nat))
             .has_value());
}

TEST_CASE("refl coercion is the syntactic identity") {
  Kernel k;
  Elaborator el(k);
  Ctx ctx;
  auto co = el.subtype(ctx, vCanon(VTag::Bool), vCanon(VTag::Bool));
  REQUIRE(co.has_value());
  CHECK(co->kind == Coercion::Kind::Refl);
  TermPtr t = mkTerm(Tag::App, {mkVar(0), mkTerm(Tag::True)});
  CHECK(el.applyCoercion(*co, t).get() == t.get());
}

TEST_CASE("a coerced identity function still returns its argument") {
  Kernel k = ttfl::test::elabSource(
      "f : U 1 2 -> U 1 2 = \\A. A;\n"
      "g : U 0 1 -> U 1 2 = coerce (U 0 1 -> U 1 2) f;\n"
      "t = g Bool;");
  // g = \x. f (Lift p x); applied to Bool this computes back to Bool
  CHECK(termEq(nfOf(k, "t"), mkTerm(Tag::Bool)));
}

TEST_CASE("proof tokens are erased from normal forms") {
  Kernel k = ttfl::test::elabSource(
      "x = U 0 2 (ltDec 0 2);\n"
      "y = U 0 2 (ltTrans 0 1 2 (ltDec 1 2) (ltDec 0 1));");
  CHECK(termEq(nfOf(k, "x"), nfOf(k, "y")));
  CHECK(convValue(k, 0, globalOf(k, "x").value, globalOf(k, "y").value));
}

TEST_CASE("level reflection round-trips") {
  for (StructureId s : {StructureId::Nat, StructureId::OmegaPlusOne,
                        StructureId::OmegaPlusOmega}) {
    Kernel k;
    k.structure = s;
    Elaborator el(k);
    Ctx ctx;
    for (uint32_t b = 0; b <= 1; b++)
      for (uint32_t o = 0; o <= 10; o++) {
        Level l{b, o};
        if (!levelValid(s, l)) continue;
        LevelValue v = el.reflectLevel(ctx, levelToCore(l));
        REQUIRE(v.isClosed());
        CHECK(v.asClosed() == l);
        // and back out through the quoter
        TermPtr back = quoteLevel(k, 0, v);
        CHECK(termEq(back, levelToCore(l)));
      }
  }
}

TEST_CASE("first-class levels: computed levels appear in types") {
  Kernel k = ttfl::test::elabSource(
      "lv : Lvl = lsup 1 (lsuc 1);\n"
      "t : U 2 3 = Bool;\n"
      "u = U lv 3;");
  const Global& u = globalOf(k, "u");
  CHECK(u.isType);
  CHECK(u.value->lvl1.asClosed() == finLevel(2));
}

TEST_CASE("the documented rejections carry the documented kinds") {
  CHECK(errOf("t = mystery;") == ErrKind::Unbound);
  CHECK(errOf("t : Bool = zero;") == ErrKind::Mismatch);
  CHECK(errOf("t : true = tt;") == ErrKind::NotAType);
  CHECK(errOf("t : U 0 2 = U 1 2;") == ErrKind::NoSubtype);
  CHECK(errOf("t : Lvl = lomega;") == ErrKind::LevelOrder);
  CHECK(errOf("t : Lvl = lsuc lomega;", StructureId::OmegaPlusOne) ==
        ErrKind::LevelOrder);
  CHECK(errOf("t = \\x. x;") == ErrKind::Mismatch);  // un-annotated lambda
  CHECK(errOf("t : Bool -> Bool = \\x y. x;") == ErrKind::Mismatch);
  CHECK(errOf("t = true false;") == ErrKind::Mismatch);
}

TEST_CASE("no universe sits above every stage") {
  // a function type whose codomain level would escape its binder is rejected
  CHECK(errOf("t = (l : Lvl) -> U l (lsuc l) (ltSucSelf l);") ==
        ErrKind::LevelOrder);
  // the top stage of omega1 has no successor, hence no enclosing universe
  CHECK(errOf("t = U lomega (lsuc lomega);", StructureId::OmegaPlusOne) ==
        ErrKind::LevelOrder);
  // and even with a smuggled proof the invalid stage is refused
  CHECK(errOf("p : (l : Lvl) -> Lt l (lsuc l) = \\l. ltSucSelf l;\n"
              "t = U lomega (lsuc lomega) (p lomega);",
              StructureId::OmegaPlusOne) == ErrKind::LevelOrder);
}

TEST_CASE("let is transparent and shadowing is innermost") {
  Kernel k = ttfl::test::elabSource(
      "t : Bool = let x = true in let x = false in x;\n"
      "u : Nat = let T = Nat in let n = 2 in coerce T n;");
  CHECK(termEq(nfOf(k, "t"), mkTerm(Tag::False)));
  CHECK(termEq(nfOf(k, "u"),
               mkTerm(Tag::Suc, {mkTerm(Tag::Suc, {mkTerm(Tag::Zero)})})));
}

TEST_CASE("heterogeneous function types live at the sup of their parts") {
  Kernel k = ttfl::test::elabSource("t = U 0 1 -> U 2 3;");
  CHECK(globalOf(k, "t").lvl.asClosed() == finLevel(3));
  Kernel k2 = ttfl::test::elabSource("t = (A : U 1 2) -> Bool;");
  CHECK(globalOf(k2, "t").lvl.asClosed() == finLevel(2));
}

TEST_CASE("whole corpus: accepts elaborate, rejects fail as annotated") {
  int checked = 0;
  for (const auto& c : ttfl::test::loadCorpus()) {
    CAPTURE(c.path.string());
    if (c.accept) {
      Kernel k = ttfl::test::elabSource(c.text, c.levels);
      // soundness hand-off: every produced core satisfies the scope invariant
      for (size_t i = 0; i < k.globals.size(); i++) {
        CHECK(scopeCheck(k.globals[i].coreBody, 0, (int)i));
        if (k.globals[i].coreType)
          CHECK(scopeCheck(k.globals[i].coreType, 0, (int)i));
      }
      checked++;
    } else {
      REQUIRE(c.expect.has_value());
      std::string got;
      try {
        ttfl::test::elabSource(c.text, c.levels);
      } catch (const ElabError& e) {
        got = errKindName(e.kind);
      } catch (const ParseError&) {
        got = "PARSE";
      }
      CHECK(got == *c.expect);
      checked++;
    }
  }
  CHECK(checked >= 16);
}

TEST_CASE("canonicity over the corpus, with enough witnesses") {
  int canonical = 0;
  for (const auto& c : ttfl::test::loadCorpus()) {
    if (!c.accept) continue;
    Kernel k = ttfl::test::elabSource(c.text, c.levels);
    for (const auto& g : k.globals) {
      if (g.isType || !g.type) continue;
      ValuePtr ty = stripLift(g.type);
      if (ty->tag == VTag::Bool) {
        CHECK((g.value->tag == VTag::True || g.value->tag == VTag::False));
        canonical++;
      } else if (ty->tag == VTag::Nat) {
        ValuePtr v = g.value;
        while (v->tag == VTag::Suc) v = v->a;
        CHECK(v->tag == VTag::Zero);
        canonical++;
      }
    }
  }
  CHECK(canonical >= 20);
}

TEST_CASE("stability across the corpus") {
  for (const auto& c : ttfl::test::loadCorpus()) {
    if (!c.accept) continue;
    Kernel k = ttfl::test::elabSource(c.text, c.levels);
    for (const auto& g : k.globals) {
      ValuePtr v = g.value;
      ValuePtr v2 = eval(k, {}, quote(k, 0, v));
      CAPTURE(c.path.string());
      CAPTURE(g.name);
      CHECK(convValue(k, 0, v, v2));
    }
  }
}
