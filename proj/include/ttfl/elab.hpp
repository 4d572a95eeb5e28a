#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttfl/nbe.hpp"
#include "ttfl/surface.hpp"

namespace ttfl {

enum class ErrKind { Unbound, Mismatch, NotAType, LevelOrder, NoSubtype, Parse };

const char* errKindName(ErrKind k);

struct ElabError {
  ErrKind kind;
  Span span;
  std::string message;
  std::string context;  // pretty binder telescope at the failure site
};

// A type together with the level it lives at; constructing one asserts the
// judgment "type at level" was established.
struct TypeAtLevel {
  ValuePtr type;
  LevelValue lvl;
};

// Elaboration result. Type formers return isType = true: the term IS a type
// at `lvl` (with `type` its value), usable as a term of any admissible
// enclosing universe without needing one to exist.
struct Judgment {
  TermPtr core;
  bool isType = false;
  ValuePtr type;   // isType: the type itself; otherwise: the term's type
  LevelValue lvl;  // isType: level of the type; otherwise: level of `type`
};

// Evidence of A <= B with the term transformer it induces. ULe carries the
// pre-quoted target level and order proof; PiLe is contravariant in the
// domain and covariant in the codomain (backwards-forwards coercion).
struct Coercion {
  enum class Kind { Refl, ULe, PiLe };
  Kind kind = Kind::Refl;
  TermPtr targetLevel;  // ULe
  TermPtr proof;        // ULe
  std::shared_ptr<Coercion> dom, cod;  // PiLe
  std::string binder;
};

struct Ctx {
  struct Binder {
    std::string name;
    ValuePtr type;
    LevelValue lvl;
  };
  std::vector<Binder> binders;
  Env env;

  int depth() const { return (int)binders.size(); }
  std::vector<std::string> names() const;
};

class Elaborator {
 public:
  explicit Elaborator(Kernel& kern) : kern_(kern) {}

  Judgment infer(Ctx& ctx, const STermPtr& t);
  TermPtr check(Ctx& ctx, const STermPtr& t, const ValuePtr& expected,
                const LevelValue& lvl);

  struct TypeRes {
    TermPtr core;
    ValuePtr type;
    LevelValue lvl;
  };
  // Elaborates t in a position that demands a type.
  TypeRes checkIsType(Ctx& ctx, const STermPtr& t);

  std::optional<Coercion> subtype(Ctx& ctx, const ValuePtr& a, const ValuePtr& b);
  TermPtr applyCoercion(const Coercion& co, const TermPtr& t);

  // Reads a core term of type Lvl back as an external-level value (mkLvl).
  LevelValue reflectLevel(const Ctx& ctx, const TermPtr& t);

  void elabModule(const Module& m);

  Kernel& kernel() { return kern_; }

 private:
  Kernel& kern_;

  Judgment builtinSpine(Ctx& ctx, Span span, BuiltinId b,
                        const std::vector<STermPtr>& args);
  Judgment applyArgs(Ctx& ctx, Judgment head, const std::vector<STermPtr>& args,
                     size_t from);
  struct Motive {
    TermPtr core;
    ValuePtr value;
    TermPtr lvlCore;  // level of the codomain, under one binder for the scrutinee
  };
  Motive elabMotive(Ctx& ctx, const STermPtr& t, const ValuePtr& domTy,
                    const LevelValue& domLvl);
  LevelValue motiveLvlAt(const Ctx& ctx, const Motive& m, const ValuePtr& scrut);
};

// unLvl: a closed level as its canonical internal normal form.
TermPtr levelToCore(Level l);

}  // namespace ttfl
