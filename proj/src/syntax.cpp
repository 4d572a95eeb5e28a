#include "ttfl/syntax.hpp"

namespace ttfl {

TermPtr mkTerm(Tag tag, std::vector<TermPtr> kids) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->kids = std::move(kids);
  return t;
}

TermPtr mkVar(int ix) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::Var;
  t->ix = ix;
  return t;
}

TermPtr mkGlobal(int ix, std::string name) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::Global;
  t->ix = ix;
  t->name = std::move(name);
  return t;
}

TermPtr mkBind(Tag tag, std::string name, std::vector<TermPtr> kids) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->name = std::move(name);
  t->kids = std::move(kids);
  return t;
}

TermPtr mkPrim(PrimId prim, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->tag = Tag::LtPrim;
  t->prim = prim;
  t->kids = std::move(args);
  return t;
}

bool termEq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  // Lt-typed subterms are proof-irrelevant tokens.
  if (a->tag == Tag::LtPrim && b->tag == Tag::LtPrim) return true;
  if (a->tag != b->tag) return false;
  if (a->ix != b->ix) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t k = 0; k < a->kids.size(); k++) {
    bool proofPos = (a->tag == Tag::Univ && k == 2) || (a->tag == Tag::LiftTy && k == 1);
    if (proofPos) continue;
    if (!termEq(a->kids[k], b->kids[k])) return false;
  }
  return true;
}

bool scopeCheck(const TermPtr& t, int depth, int numGlobals) {
  if (!t) return false;
  if (t->tag == Tag::Var) return t->ix >= 0 && t->ix < depth;
  if (t->tag == Tag::Global) return t->ix >= 0 && t->ix < numGlobals;
  int inner = depth;
  for (size_t k = 0; k < t->kids.size(); k++) {
    int d = depth;
    switch (t->tag) {
      case Tag::Lam: d = depth + 1; break;
      case Tag::Pi: d = (k == 1) ? depth + 1 : depth; break;
      case Tag::Let: d = (k == 2) ? depth + 1 : depth; break;
      default: break;
    }
    (void)inner;
    if (!scopeCheck(t->kids[k], d, numGlobals)) return false;
  }
  return true;
}

}  // namespace ttfl
