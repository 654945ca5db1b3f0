#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "mbl/character_table.hpp"
#include "mbl/finite_field.hpp"
#include "mbl/perm_group.hpp"

namespace mbl {

/// A p-block of G, described at character level.
struct Block {
  Int p = 2;
  Int conductor = 1;                     // conductor of the reduction map used
  std::vector<std::size_t> characters;   // sorted row indices
  int defect = 0;
  std::vector<int> heights;              // parallel to characters
  std::size_t defect_class = 0;          // p-regular G-class of minimal defect with lambda != 0
  PermGroup defect_group = PermGroup::trivial(1);
  std::vector<FFElem> central_character; // lambda_B per class
  std::vector<FFElem> idempotent;        // reduced e_B(g_C) per class
  Int minimal_field_degree = 1;

  bool contains(std::size_t chi) const;
  bool is_principal() const { return contains(0); }
  std::size_t size() const { return characters.size(); }
  // Characters of height zero.
  std::vector<std::size_t> height_zero() const;
};

/// omega_chi(C^) = |C| chi(g_C) / chi(1).
CycloNum central_character_value(const CharacterTable& t, std::size_t chi, std::size_t c);

/// e_B(g_C) = sum over chi in B of chi(1) chi(g_C^-1) / |G|.
CycloNum idempotent_coefficient(const CharacterTable& t, const std::vector<std::size_t>& chars, std::size_t c);

/// Blocks by central-character linkage over F_{p^m}, m = ord_{n_{p'}}(p), with
/// n = conductor (default exp(G); any multiple may be given so that several
/// groups reduce into one field). Ordered by least character index.
std::vector<Block> p_blocks(const CharacterTable& t, Int p, Int conductor = 0);

std::size_t block_of(const std::vector<Block>& blocks, std::size_t chi);

/// Reduced coefficients of Br_P(e_B): e_B restricted to C_G(P), one entry per
/// class of C_G(P).
struct BrauerImage {
  PermGroup centralizer;
  std::vector<FFElem> coefficients;
  bool is_zero() const;
};
BrauerImage brauer_image(const CharacterTable& t, const Block& b, const PermGroup& p_subgroup);

/// Checks the defining property of a defect group: Br_P(b) != 0 and
/// Br_Q(b) = 0 for every p-subgroup Q > P. It suffices to test the overgroups
/// <P, g> with g in N_G(P) \ P and g^p in P, since every larger p-subgroup
/// contains one of them and Br_Q(b) = 0 passes to overgroups of Q.
bool verify_defect_group(const CharacterTable& t, const Block& b, const PermGroup& p_subgroup);

/// Smallest d such that all reduced idempotent coefficients lie in F_{p^d}.
Int minimal_field_degree(const Block& b);

/// The Brauer correspondent in N = N_G(P), P the defect group of b.
struct LocalBlock {
  PermGroup normalizer = PermGroup::trivial(1);
  std::shared_ptr<const CharacterTable> table;
  std::vector<Block> blocks;  // blocks of N, reduced at b.conductor
  std::size_t index = 0;      // the correspondent
  const Block& block() const { return blocks[index]; }
};

/// Finds the unique block c of N_G(P) with lambda_c(Br_P(C^)) = lambda_B(C^)
/// for every G-class C. Throws NoCorrespondent or MultipleCorrespondents.
std::size_t brauer_correspondent(const CharacterTable& tg, const Block& b, const PermGroup& p_subgroup,
                                 const CharacterTable& tn, const std::vector<Block>& blocks_n);
LocalBlock brauer_correspondent(const CharacterTable& tg, const Block& b);

/// A block of kG, k = F_{p^d}: an orbit of the large-field blocks under the
/// Galois element acting as p^d on p'-roots of unity and trivially on p-power
/// roots of unity.
struct FrobeniusOrbit {
  std::vector<std::size_t> blocks;  // indices into the large-field block list
  std::vector<FFElem> idempotent;   // sum of the members' reduced idempotents
  Int field_degree = 1;             // of the summed idempotent
};
std::vector<FrobeniusOrbit> frobenius_block_orbits(const CharacterTable& t, const std::vector<Block>& blocks, Int d);

/// Primitive idempotents of Z(F_{p^d} G) computed without characters: the
/// Berlekamp subalgebra { x : x^q = x } of the class algebra, q = p^g with
/// g = gcd(d, m), split by eigenvalues. Coordinates are per class and live in
/// the same field as the blocks' reductions at the given conductor.
std::vector<std::vector<FFElem>> direct_block_idempotents(const PermGroup& g, Int p, Int d, Int conductor = 0);

/// Product in the class algebra over a finite field, from integer structure
/// constants.
std::vector<FFElem> class_algebra_product(const std::vector<std::vector<std::vector<Int>>>& c,
                                          const std::vector<FFElem>& a, const std::vector<FFElem>& b);

}  // namespace mbl
