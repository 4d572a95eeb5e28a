#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ttfl/elab.hpp"
#include "ttfl/levels.hpp"
#include "ttfl/surface.hpp"

namespace ttfl::test {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Kernel elabSource(const std::string& text,
                         StructureId s = StructureId::Nat) {
  Kernel kern;
  kern.structure = s;
  Module m = parse(text);
  Elaborator el(kern);
  el.elabModule(m);
  return kern;
}

struct CorpusFile {
  std::filesystem::path path;
  std::string text;
  StructureId levels = StructureId::Nat;
  std::optional<std::string> expect;  // reject files only
  bool accept = false;
};

inline std::vector<CorpusFile> loadCorpus() {
  std::vector<CorpusFile> out;
  for (const char* sub : {"accept", "reject"}) {
    std::filesystem::path dir = std::filesystem::path(CORPUS_DIR) / sub;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".ttfl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      CorpusFile c;
      c.path = f;
      c.text = slurp(f);
      c.accept = std::string(sub) == "accept";
      std::istringstream in(c.text);
      std::string line;
      for (int k = 0; k < 2 && std::getline(in, line); k++) {
        auto grab = [&](const std::string& key) -> std::optional<std::string> {
          std::string pre = "-- " + key + ": ";
          if (line.rfind(pre, 0) != 0) return std::nullopt;
          std::string v = line.substr(pre.size());
          while (!v.empty() && (v.back() == '\r' || v.back() == ' ')) v.pop_back();
          return v;
        };
        if (auto e = grab("expect")) c.expect = *e;
        if (auto l = grab("levels"))
          if (auto s = parseStructureId(*l)) c.levels = *s;
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

// A tiny deterministic PRNG so generated cases are reproducible everywhere.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  uint32_t below(uint32_t n) { return (uint32_t)(next() % n); }
};

// Random closed type expressions with a known level, for lift-law checks.
struct GenTy {
  TermPtr core;
  Level lvl;
};

inline std::vector<Level> smallLevels(StructureId s) {
  std::vector<Level> ls = {finLevel(0), finLevel(1), finLevel(2), finLevel(3)};
  if (hasOmega(s)) ls.push_back(omegaLevel());
  if (s == StructureId::OmegaPlusOmega) {
    ls.push_back(omegaLevel(1));
    ls.push_back(omegaLevel(2));
  }
  return ls;
}

inline GenTy genType(Rng& rng, StructureId s, int depth) {
  auto ls = smallLevels(s);
  switch (rng.below(depth > 0 ? 6 : 4)) {
    case 0: return {mkTerm(Tag::Bool), finLevel(0)};
    case 1: return {mkTerm(Tag::Nat), finLevel(0)};
    case 2: return {mkTerm(Tag::Unit), finLevel(0)};
    case 3: return {mkTerm(Tag::Empty), finLevel(0)};
    case 4: {  // a universe U i j for structure levels i < j
      for (int tries = 0; tries < 16; tries++) {
        Level i = ls[rng.below((uint32_t)ls.size())];
        Level j = ls[rng.below((uint32_t)ls.size())];
        if (!lt(i, j)) continue;
        TermPtr ci = levelToCore(i), cj = levelToCore(j);
        return {mkTerm(Tag::Univ, {ci, cj, mkPrim(PrimId::LtDec, {ci, cj})}),
                j};
      }
      return {mkTerm(Tag::Bool), finLevel(0)};
    }
    default: {  // non-dependent function type
      GenTy dom = genType(rng, s, depth - 1);
      GenTy cod = genType(rng, s, depth - 1);
      return {mkBind(Tag::Pi, "_", {dom.core, cod.core}), sup(dom.lvl, cod.lvl)};
    }
  }
}

}  // namespace ttfl::test
