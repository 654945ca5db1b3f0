#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "mbl/cyclotomic.hpp"
#include "mbl/perm_group.hpp"

namespace mbl {

/// Exact ordinary character table. Rows are irreducible characters, columns
/// follow the group's class order; entries live at conductor exp(G).
/// Row order: trivial character first, then by degree, then by the row of
/// values in descending canonical order.
class CharacterTable {
 public:
  CharacterTable(PermGroup group, std::vector<std::vector<CycloNum>> values);

  const PermGroup& group() const { return group_; }
  std::size_t num_characters() const { return values_.size(); }
  std::size_t num_classes() const { return group_.num_classes(); }
  Int group_order() const { return static_cast<Int>(group_.order()); }
  Int exponent() const { return group_.exponent(); }

  const CycloNum& value(std::size_t chi, std::size_t c) const { return values_[chi][c]; }
  const std::vector<CycloNum>& row(std::size_t chi) const { return values_[chi]; }
  Int degree(std::size_t chi) const { return degrees_[chi]; }
  Int class_size(std::size_t c) const { return static_cast<Int>(group_.classes()[c].size); }
  Int centralizer_order(std::size_t c) const { return group_.centralizer_order(c); }

  // Index of the row ^sigma chi for sigma: zeta -> zeta^r, gcd(r, exp G) = 1.
  std::size_t galois_conjugate(std::size_t chi, Int r) const;
  // Index of the row equal to the given class function (npos if none).
  std::size_t find_row(const std::vector<CycloNum>& values) const;

  // Sum over classes of |C| a(g_C) b(g_C^-1) / |G|.
  CycloNum inner_product(const std::vector<CycloNum>& a, const std::vector<CycloNum>& b) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  PermGroup group_;
  std::vector<std::vector<CycloNum>> values_;
  std::vector<Int> degrees_;
};

/// Dixon-Schneider: splits the class-algebra structure-constant matrices into
/// common eigenspaces over F_l, l the smallest prime = 1 mod exp(G) with
/// l > 2 sqrt|G|, then lifts each value by inverting the eigenvalue
/// multiplicities through the power maps.
CharacterTable character_table(const PermGroup& g);

/// The auxiliary prime used by character_table.
Int dixon_prime(Int group_order, Int exponent);

/// Class-algebra structure constants: c[j][k][l] = #{x in C_j : x^-1 g_l in C_k},
/// so that C_j^ C_k^ = sum_l c[j][k][l] C_l^.
std::vector<std::vector<std::vector<Int>>> class_structure_constants(const PermGroup& g);

}  // namespace mbl
