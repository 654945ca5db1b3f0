#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mbl/numtheory.hpp"

namespace mbl {

// A permutation of {0, ..., n-1} as its image array.
using Perm = std::vector<int>;

namespace perm {
Perm identity(int n);
// Apply a first, then b: (a*b)[i] = b[a[i]].
Perm mul(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
Perm power(const Perm& a, Int k);  // k may be negative
Int order(const Perm& a);
bool is_identity(const Perm& a);
// g^-1 x g
Perm conjugate(const Perm& x, const Perm& g);
// Cycle notation with 1-based points, e.g. "(1,2,3)"; "()" for the identity.
std::string to_cycles(const Perm& a);
}  // namespace perm

// Default bound on |G| for full enumeration.
inline constexpr std::size_t kDefaultGroupBound = 5000;

struct ConjClass {
  std::size_t representative = 0;  // element index in the group
  std::size_t size = 0;
  Int element_order = 1;
  // powers[j] = class of g^j for 0 <= j < element_order.
  std::vector<std::size_t> powers;

  bool is_p_regular(Int p) const { return element_order % p != 0; }
};

/// Finite permutation group with fully enumerated elements. Elements are kept
/// in lexicographic order of their image arrays, so index 0 is the identity.
/// Copies share the same immutable data.
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Perm> generators, std::size_t bound = kDefaultGroupBound);
  static PermGroup trivial(int degree);

  int degree() const;
  const std::vector<Perm>& generators() const;
  const std::vector<Perm>& elements() const;
  std::size_t order() const { return elements().size(); }
  const Perm& element(std::size_t i) const { return elements()[i]; }
  // Index of g, or npos if g is not in the group.
  std::size_t index_of(const Perm& g) const;
  bool contains(const Perm& g) const { return index_of(g) != npos; }
  Int exponent() const;
  std::size_t bound() const;

  // Sorted by (element order, size, representative index); class 0 is the
  // identity. Computed on first use.
  const std::vector<ConjClass>& classes() const;
  std::size_t num_classes() const { return classes().size(); }
  std::size_t class_of(std::size_t element_index) const;
  std::size_t class_of_perm(const Perm& g) const;  // throws NotMember
  std::size_t inverse_class(std::size_t c) const { return classes()[c].powers.size() > 1 ? classes()[c].powers.back() : c; }
  std::size_t power_class(std::size_t c, Int k) const;
  Int centralizer_order(std::size_t c) const { return static_cast<Int>(order() / classes()[c].size); }
  const Perm& class_representative(std::size_t c) const { return element(classes()[c].representative); }

  bool is_subgroup_of(const PermGroup& g) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

/// Subgroup of G generated by gens (inherits G's size bound).
PermGroup subgroup(const PermGroup& g, const std::vector<Perm>& gens);
/// Subgroup of G with the given element set; generators chosen greedily.
PermGroup subgroup_from_elements(const PermGroup& g, const std::vector<Perm>& elts);

PermGroup centralizer(const PermGroup& g, const Perm& x);
/// C_G(Q): elements commuting with every element of Q.
PermGroup centralizer(const PermGroup& g, const PermGroup& q);
/// N_G(Q) = { g : g Q g^-1 = Q }.
PermGroup normalizer(const PermGroup& g, const PermGroup& q);

/// A Sylow p-subgroup, built by ascent: starting from 1, repeatedly adjoin the
/// first element of N_G(P) \ P whose p-th power lies in P.
PermGroup sylow_subgroup(const PermGroup& g, Int p);
std::pair<PermGroup, PermGroup> sylow_and_normalizer(const PermGroup& g, Int p);

/// g = g_p * g_p' with commuting factors of p-power and p'-order.
std::pair<Perm, Perm> p_part_decomposition(const Perm& g, Int p);

/// H-class -> G-class; throws NotMember if H is not contained in G.
std::vector<std::size_t> class_fusion(const PermGroup& h, const PermGroup& g);

bool is_cyclic(const PermGroup& g);

}  // namespace mbl
