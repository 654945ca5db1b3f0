#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mbl/blocks.hpp"
#include "mbl/character_table.hpp"

namespace mbl {

struct Pairing {
  std::size_t chi = 0;  // row of the G-table
  std::size_t psi = 0;  // row of the H-table
  int sign = 1;
  bool operator==(const Pairing&) const = default;
};

/// chi -> sign * psi from the characters of a block of G onto those of a
/// block of H. Pairs are kept sorted by chi.
struct SignedBijection {
  std::vector<std::size_t> source;  // Irr(B), sorted
  std::vector<std::size_t> target;  // Irr(C), sorted
  std::vector<Pairing> pairs;

  SignedBijection() = default;
  SignedBijection(std::vector<std::size_t> source, std::vector<std::size_t> target, std::vector<Pairing> pairs);

  // The pair with the given chi, or nullptr.
  const Pairing* find(std::size_t chi) const;
  bool is_bijection() const;
  bool operator==(const SignedBijection& o) const { return pairs == o.pairs; }
};

SignedBijection identity_bijection(const Block& b);

using Bicharacter = std::vector<std::vector<CycloNum>>;  // [G-class][H-class]

/// mu(g, h) = sum of sign * chi(g) * psi(h), at conductor lcm(exp G, exp H).
Bicharacter mu_bicharacter(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso);

struct ClassPairViolation {
  std::size_t g_class = 0;
  std::size_t h_class = 0;
  std::string condition;  // "separation", "integrality-G", "integrality-H"
};

struct IsometryVerdict {
  bool bijection = true;
  bool separation = true;
  bool integrality = true;
  std::vector<ClassPairViolation> violations;
  bool pass() const { return bijection && separation && integrality; }
};

/// Broue's conditions: mu(g, h) = 0 when exactly one of g, h is p-regular, and
/// mu(g, h)/|C_G(g)|, mu(g, h)/|C_H(h)| lie in Z_(p)[zeta_n].
IsometryVerdict is_perfect_isometry(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso, Int p);

struct EquivarianceVerdict {
  bool pass = true;              // I(^s chi) = ^s I(chi) for all s and chi
  bool signs_equivariant = true; // sign(^s chi) = sign(chi), reported separately
  bool block_stable = true;
  std::optional<Int> witness_unit;        // a failing s, if any
  std::optional<std::size_t> witness_chi;
};

/// Throws ModulusIncompatible unless exp(G) and exp(H) divide s.modulus.
EquivarianceVerdict equivariance_check(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso,
                                       const GaloisSubgroup& s);

/// The twisted bijection ^s chi -> sign * ^s psi.
SignedBijection galois_twist(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso, Int r,
                             Int modulus);

/// Characters of the block fixed by p_fixing_subgroup(exp G, p).
std::vector<std::size_t> p_rational_characters(const CharacterTable& t, const Block& b);

struct NavarroRow {
  Int unit = 1;
  std::size_t fixed_g = 0;
  std::size_t fixed_h = 0;
};
struct NavarroReport {
  Int modulus = 1;
  std::vector<NavarroRow> rows;
  bool consistent = true;
};

/// For every s in H_n, the numbers of height-zero characters of B and of C
/// fixed by s. n must be a multiple of exp(G) and exp(H).
NavarroReport navarro_counts(const CharacterTable& tg, const Block& b, const CharacterTable& th, const Block& c, Int n);

struct SearchOptions {
  bool match_p_rationality = true;  // prune pairs whose p-rationality differs
  bool deduplicate = true;          // one result per permutation of equal-restriction families
  std::size_t max_results = 0;      // 0: all
};

/// Backtracking over sign-decorated bijections Irr(B) -> Irr(C) in
/// deterministic order. Pairs must satisfy nu_p(psi(1)) - nu_p(chi(1)) =
/// nu_p|H| - nu_p|G|; mu is accumulated modulo an auxiliary prime as a sound
/// separation filter and every survivor is verified exactly.
std::vector<SignedBijection> search_perfect_isometries(const CharacterTable& tg, const Block& b,
                                                       const CharacterTable& th, const Block& c,
                                                       const SearchOptions& opts = {});

}  // namespace mbl
