#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace ttfl {

// The active universe-level structure. Exactly one is in effect per kernel
// session; every Level value is interpreted relative to it.
enum class StructureId {
  Nat,             // 0 < 1 < 2 < ...
  OmegaPlusOne,    // 0 < 1 < ... < omega
  OmegaPlusOmega,  // 0 < 1 < ... < omega < omega+1 < ...
};

// Uniform encoding shared by all three structures: a level is
// omega * block + offset, ordered lexicographically by (block, offset).
struct Level {
  uint32_t block = 0;   // 0 = finite part, 1 = omega block
  uint32_t offset = 0;

  friend constexpr auto operator<=>(const Level&, const Level&) = default;
};

constexpr Level finLevel(uint32_t n) { return Level{0, n}; }
constexpr Level omegaLevel(uint32_t n = 0) { return Level{1, n}; }

// Proof-irrelevant token recording that some i < j was validated. Any two
// tokens for the same pair are interchangeable.
struct LtEvidence {};

// True iff `l` denotes a level of structure `s`.
bool levelValid(StructureId s, Level l);

// The strict order. Total, irreflexive, transitive on all three structures.
bool lt(Level i, Level j);

// Least upper bound; computable as max since the order is total.
Level sup(Level i, Level j);

// Order-embedding into lexicographically ordered pairs of naturals; this is
// the well-foundedness evidence (descending chains from (b, o) are finite).
std::pair<uint32_t, uint32_t> rank(Level i);

struct Bootstrap {
  Level l0;
  Level l1;
  LtEvidence lt01;
};

// The smallest two levels with a witness of their order; shared by all
// structures (the finite prefix is common).
Bootstrap bootstrap();

// A token iff lt(i, j) holds and both levels belong to `s`.
std::optional<LtEvidence> ltWitness(StructureId s, Level i, Level j);

bool hasOmega(StructureId s);

// Successor inside the structure; nullopt when there is none (omega under
// OmegaPlusOne, or overflow).
std::optional<Level> succLevel(StructureId s, Level l);

std::string showLevel(StructureId s, Level l);
std::string showStructure(StructureId s);

// Accepts the CLI spellings "nat", "omega1", "omega-omega".
std::optional<StructureId> parseStructureId(std::string_view s);

}  // namespace ttfl
