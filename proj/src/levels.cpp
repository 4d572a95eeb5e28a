#include "ttfl/levels.hpp"

namespace ttfl {

bool levelValid(StructureId s, Level l) {
  switch (s) {
    case StructureId::Nat:
      return l.block == 0;
    case StructureId::OmegaPlusOne:
      return l.block == 0 || (l.block == 1 && l.offset == 0);
    case StructureId::OmegaPlusOmega:
      return l.block <= 1;
  }
  return false;
}

bool lt(Level i, Level j) { return i < j; }

Level sup(Level i, Level j) { return lt(i, j) ? j : i; }

std::pair<uint32_t, uint32_t> rank(Level i) { return {i.block, i.offset}; }

Bootstrap bootstrap() { return Bootstrap{finLevel(0), finLevel(1), LtEvidence{}}; }

std::optional<LtEvidence> ltWitness(StructureId s, Level i, Level j) {
  if (!levelValid(s, i) || !levelValid(s, j)) return std::nullopt;
  if (!lt(i, j)) return std::nullopt;
  return LtEvidence{};
}

bool hasOmega(StructureId s) { return s != StructureId::Nat; }

std::optional<Level> succLevel(StructureId s, Level l) {
  Level next{l.block, l.offset + 1};
  if (!levelValid(s, next)) return std::nullopt;
  return next;
}

std::string showLevel(StructureId s, Level l) {
  if (l.block == 0) return std::to_string(l.offset);
  if (l.offset == 0) return "\xcf\x89";  // omega
  (void)s;
  return "\xcf\x89+" + std::to_string(l.offset);
}

std::string showStructure(StructureId s) {
  switch (s) {
    case StructureId::Nat: return "nat";
    case StructureId::OmegaPlusOne: return "omega1";
    case StructureId::OmegaPlusOmega: return "omega-omega";
  }
  return "?";
}

std::optional<StructureId> parseStructureId(std::string_view s) {
  if (s == "nat") return StructureId::Nat;
  if (s == "omega1") return StructureId::OmegaPlusOne;
  if (s == "omega-omega") return StructureId::OmegaPlusOmega;
  return std::nullopt;
}

}  // namespace ttfl
