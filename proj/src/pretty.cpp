#include <optional>
#include <sstream>

#include "ttfl/surface.hpp"

namespace ttfl {

namespace {

const char* builtinName(BuiltinId b) {
  switch (b) {
    case BuiltinId::U: return "U";
    case BuiltinId::Lift: return "Lift";
    case BuiltinId::Coerce: return "coerce";
    case BuiltinId::Bool: return "Bool";
    case BuiltinId::True: return "true";
    case BuiltinId::False: return "false";
    case BuiltinId::If: return "if";
    case BuiltinId::Nat: return "Nat";
    case BuiltinId::Zero: return "zero";
    case BuiltinId::Suc: return "suc";
    case BuiltinId::NatElim: return "natElim";
    case BuiltinId::Empty: return "Empty";
    case BuiltinId::Exfalso: return "exfalso";
    case BuiltinId::Unit: return "Unit";
    case BuiltinId::Tt: return "tt";
    case BuiltinId::Lvl: return "Lvl";
    case BuiltinId::Lt: return "Lt";
    case BuiltinId::LZero: return "lzero";
    case BuiltinId::LSuc: return "lsuc";
    case BuiltinId::LOmega: return "lomega";
    case BuiltinId::LtDec: return "ltDec";
    case BuiltinId::LtFinOmega: return "ltFinOmega";
    case BuiltinId::LtSucSelf: return "ltSucSelf";
    case BuiltinId::LtTrans: return "ltTrans";
    case BuiltinId::LSup: return "lsup";
    case BuiltinId::LvlElim: return "lvlElim";
  }
  return "?";
}

const char* primName(PrimId p) {
  switch (p) {
    case PrimId::LtDec: return "ltDec";
    case PrimId::LtFinOmega: return "ltFinOmega";
    case PrimId::LtSucSelf: return "ltSucSelf";
    case PrimId::LtTrans: return "ltTrans";
  }
  return "?";
}

// prec: 0 = any term, 1 = application operand head, 2 = atom
void wrap(std::ostringstream& out, bool needParens, const std::string& s) {
  if (needParens) out << "(" << s << ")";
  else out << s;
}

std::string surf(const STermPtr& t, int prec);

std::string surfApp(const STermPtr& f, const STermPtr& a) {
  return surf(f, 1) + " " + surf(a, 2);
}

std::string surf(const STermPtr& t, int prec) {
  std::ostringstream out;
  switch (t->kind) {
    case SKind::Var: return t->name;
    case SKind::Lit: return std::to_string(t->lit);
    case SKind::Builtin: return builtinName(t->builtin);
    case SKind::App: wrap(out, prec > 1, surfApp(t->a, t->b)); break;
    case SKind::Lam: {
      std::string binders;
      const STerm* cur = t.get();
      while (cur->kind == SKind::Lam) {
        binders += (binders.empty() ? "" : " ") + cur->name;
        cur = cur->a.get();
      }
      // Rebuild a shared_ptr view of the body via the last Lam's child.
      const STerm* walk = t.get();
      STermPtr body = t;
      while (walk->kind == SKind::Lam) {
        body = walk->a;
        walk = walk->a.get();
      }
      wrap(out, prec > 0, "\\" + binders + ". " + surf(body, 0));
      break;
    }
    case SKind::Pi: {
      std::string s;
      if (t->name == "_")
        s = surf(t->a, 1) + " -> " + surf(t->b, 0);
      else
        s = "(" + t->name + " : " + surf(t->a, 0) + ") -> " + surf(t->b, 0);
      wrap(out, prec > 0, s);
      break;
    }
    case SKind::Let:
      wrap(out, prec > 0,
           "let " + t->name + " = " + surf(t->a, 0) + " in " + surf(t->b, 0));
      break;
  }
  return out.str();
}

bool occursVar(const TermPtr& t, int ix) {
  if (t->tag == Tag::Var) return t->ix == ix;
  int shift = 0;
  for (size_t k = 0; k < t->kids.size(); k++) {
    switch (t->tag) {
      case Tag::Lam: shift = 1; break;
      case Tag::Pi: shift = (k == 1) ? 1 : 0; break;
      case Tag::Let: shift = (k == 2) ? 1 : 0; break;
      default: shift = 0; break;
    }
    if (occursVar(t->kids[k], ix + shift)) return true;
  }
  return false;
}

struct CorePrinter {
  const Kernel& kern;
  std::vector<std::string> names;

  bool usedName(const std::string& n) const {
    for (const auto& s : names)
      if (s == n) return true;
    for (const auto& g : kern.globals)
      if (g.name == n) return true;
    return builtinTableHas(n);
  }

  static bool builtinTableHas(const std::string& n) {
    static const char* reserved[] = {
        "U", "Lift", "coerce", "Bool", "true", "false", "if", "Nat", "zero",
        "suc", "natElim", "Empty", "exfalso", "Unit", "tt", "Lvl", "Lt",
        "lzero", "lsuc", "lomega", "ltDec", "ltFinOmega", "ltSucSelf",
        "ltTrans", "lsup", "lvlElim", "let", "in"};
    for (const char* r : reserved)
      if (n == r) return true;
    return false;
  }

  std::string freshName(const std::string& hint) {
    static const char* pool[] = {"x", "y", "z", "a", "b", "c", "f", "g", "n", "m"};
    std::string base = hint;
    if (base.empty() || base == "_") base = pool[names.size() % 10];
    std::string cand = base;
    int k = 0;
    while (usedName(cand)) cand = base + std::to_string(++k);
    return cand;
  }

  std::optional<uint64_t> numeral(const TermPtr& t, Tag sucTag, Tag zeroTag) const {
    uint64_t n = 0;
    const Term* cur = t.get();
    while (cur->tag == sucTag) {
      n++;
      cur = cur->kids[0].get();
    }
    if (cur->tag == zeroTag) return n;
    return std::nullopt;
  }

  std::string spine(const char* head, const std::vector<TermPtr>& args) {
    std::string s = head;
    for (const auto& a : args) s += " " + go(a, 2);
    return s;
  }

  std::string go(const TermPtr& t, int prec) {
    std::ostringstream out;
    switch (t->tag) {
      case Tag::Var:
        return names[names.size() - 1 - (size_t)t->ix];
      case Tag::Global:
        return t->name;
      case Tag::Lam: {
        std::string binders;
        TermPtr body = t;
        size_t pushed = 0;
        while (body->tag == Tag::Lam) {
          std::string n = freshName(body->name);
          names.push_back(n);
          pushed++;
          binders += (binders.empty() ? "" : " ") + n;
          body = body->kids[0];
        }
        std::string s = "\\" + binders + ". " + go(body, 0);
        names.resize(names.size() - pushed);
        wrap(out, prec > 0, s);
        break;
      }
      case Tag::Pi: {
        std::string s;
        if (!occursVar(t->kids[1], 0)) {
          s = go(t->kids[0], 1) + " -> ";
          names.push_back("_");
          s += go(t->kids[1], 0);
          names.pop_back();
        } else {
          std::string n = freshName(t->name);
          s = "(" + n + " : " + go(t->kids[0], 0) + ") -> ";
          names.push_back(n);
          s += go(t->kids[1], 0);
          names.pop_back();
        }
        wrap(out, prec > 0, s);
        break;
      }
      case Tag::App:
        wrap(out, prec > 1, go(t->kids[0], 1) + " " + go(t->kids[1], 2));
        break;
      case Tag::Let: {
        std::string n = freshName(t->name);
        std::string s = "let " + n + " = " + go(t->kids[1], 0) + " in ";
        names.push_back(n);
        s += go(t->kids[2], 0);
        names.pop_back();
        wrap(out, prec > 0, s);
        break;
      }
      case Tag::Bool: return "Bool";
      case Tag::True: return "true";
      case Tag::False: return "false";
      case Tag::Nat: return "Nat";
      case Tag::Zero: return "zero";
      case Tag::Suc:
        if (auto n = numeral(t, Tag::Suc, Tag::Zero)) return std::to_string(*n);
        wrap(out, prec > 1, "suc " + go(t->kids[0], 2));
        break;
      case Tag::If:
        wrap(out, prec > 1,
             spine("if", {t->kids[0], t->kids[1], t->kids[2], t->kids[3]}));
        break;
      case Tag::NatElim:
        wrap(out, prec > 1,
             spine("natElim", {t->kids[0], t->kids[1], t->kids[2], t->kids[3]}));
        break;
      case Tag::Empty: return "Empty";
      case Tag::Exfalso:
        wrap(out, prec > 1, spine("exfalso", {t->kids[0], t->kids[1]}));
        break;
      case Tag::Unit: return "Unit";
      case Tag::Tt: return "tt";
      case Tag::Univ:
        wrap(out, prec > 1, spine("U", {t->kids[0], t->kids[1], t->kids[2]}));
        break;
      case Tag::LiftTy:
        // The explicit target level is recomputed from the proof's type.
        wrap(out, prec > 1, spine("Lift", {t->kids[1], t->kids[2]}));
        break;
      case Tag::LvlTy: return "Lvl";
      case Tag::LZero: return "0";
      case Tag::LSuc:
        if (auto n = numeral(t, Tag::LSuc, Tag::LZero)) return std::to_string(*n);
        wrap(out, prec > 1, "lsuc " + go(t->kids[0], 2));
        break;
      case Tag::LOmega: return "lomega";
      case Tag::LtTy:
        wrap(out, prec > 1, spine("Lt", {t->kids[0], t->kids[1]}));
        break;
      case Tag::LtPrim:
        if (t->kids.empty()) return primName(t->prim);
        wrap(out, prec > 1, spine(primName(t->prim), t->kids));
        break;
      case Tag::LSup:
        wrap(out, prec > 1, spine("lsup", {t->kids[0], t->kids[1]}));
        break;
      case Tag::LvlElim:
        wrap(out, prec > 1,
             spine("lvlElim", {t->kids[0], t->kids[1], t->kids[2], t->kids[3]}));
        break;
    }
    return out.str();
  }
};

}  // namespace

std::string prettySurface(const STermPtr& t) { return surf(t, 0); }

std::string prettyModule(const Module& m) {
  std::ostringstream out;
  for (const auto& d : m.decls) {
    out << d.name;
    if (d.ann) out << " : " << surf(d.ann, 0);
    out << " = " << surf(d.body, 0) << ";\n";
  }
  return out.str();
}

std::string prettyCore(const TermPtr& t, const Kernel& kern,
                       const std::vector<std::string>& scopeNames) {
  CorePrinter p{kern, scopeNames};
  return p.go(t, 0);
}

}  // namespace ttfl
