#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbl/blocks.hpp"
#include "mbl/isometry.hpp"

namespace mbl {

/// Brauer tree of a block with nontrivial cyclic defect group. Vertices are
/// ordered by least character index; edges are (u, w) with u < w, sorted, and
/// edge j carries the irreducible Brauer character brauer_characters[j].
struct BrauerTree {
  Int p = 2;
  std::vector<std::size_t> characters;               // Irr(B), sorted
  std::vector<std::vector<std::size_t>> vertices;    // character families
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t exceptional = 0;  // the vertex v; Galois-stable choice when m = 1
  Int multiplicity = 1;
  std::vector<std::size_t> regular_classes;          // p-regular classes of G
  std::vector<std::vector<CycloNum>> brauer_characters;  // [edge][regular class]

  bool has_exceptional() const { return multiplicity > 1; }
  std::size_t num_edges() const { return edges.size(); }
  std::size_t vertex_of(std::size_t chi) const;
  std::vector<std::size_t> incident_edges(std::size_t vertex) const;
  // Edge distance from the exceptional vertex.
  std::vector<int> distances() const;
};

/// Vertices are the exceptional family (characters not constant on P \ 1) and
/// singletons. Edges are chosen among vertex pairs whose character sums vanish
/// on p-singular classes, as the unique spanning tree whose Brauer characters
/// are orthonormal to the projective characters chi_u + chi_w.
/// Throws NotCyclic or TreeValidationFailed.
BrauerTree brauer_tree(const CharacterTable& t, const Block& b);

/// d[chi][edge], rows in tree.characters order.
std::vector<std::vector<int>> decomposition_matrix(const BrauerTree& tree);

struct TreeAutomorphism {
  std::vector<std::size_t> vertex_perm;
  std::vector<std::size_t> edge_perm;
  std::vector<std::size_t> fixed_vertices;
};

/// The tree automorphism induced by chi -> chi^sigma, sigma = (zeta -> zeta^r)
/// on Q(zeta_exp(G)). Throws BlockNotStable, and TreeValidationFailed if the
/// induced map is not a tree automorphism or, for |P| >= 3, fixes no vertex.
TreeAutomorphism galois_tree_automorphism(const CharacterTable& t, const BrauerTree& tree, Int r);

enum class RhoClass {
  kAwayFromV,  // the bipartition class not containing v plays <rho>-orbits
  kContainsV,
};

/// Cyclic order of the edges around every vertex, and optionally the labels
/// delta(i) of the correspondent's simple modules.
struct PlanarEmbedding {
  std::vector<std::vector<std::size_t>> cyclic_order;  // per vertex
  std::optional<std::vector<std::size_t>> delta;       // per edge
};

struct RouquierPartition {
  RhoClass convention = RhoClass::kAwayFromV;
  std::vector<int> distances;            // per vertex
  std::vector<std::size_t> far_endpoint; // per edge
  std::vector<std::size_t> i0_image;     // edges whose far endpoint is in the rho class
  std::vector<std::size_t> i1_image;     // the others: left factors of N'
  // Only with an embedding.
  std::optional<std::vector<std::size_t>> rho, sigma;
  std::vector<std::size_t> i0, i1;
  // (rho(i), delta(i)) for i in I_1; delta present only if supplied.
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> n_prime;
};

/// Throws TreeValidationFailed if the embedding does not match the tree.
RouquierPartition rouquier_partition(const BrauerTree& tree, RhoClass convention = RhoClass::kAwayFromV,
                                     const std::optional<PlanarEmbedding>& embedding = std::nullopt);

struct ShadowResult {
  BrauerTree tree_g, tree_h;
  LocalBlock local;
  SignedBijection isometry;
  IsometryVerdict verdict;
  EquivarianceVerdict equivariance;
  GaloisSubgroup galois;  // h_nk(n, p, d_B), n = lcm(|G|, |N|)
  std::string strategy;   // which candidate family verified
};

/// Character shadow of Rouquier's complex: exceptional family to exceptional
/// family, the remaining characters matched in order of distance from v, signs
/// from distance parity. Candidates are tried until one is a perfect isometry
/// that is equivariant under h_nk(n, p, d_B); then the flipped convention,
/// then a constrained search. Throws NoShadowFound.
ShadowResult shadow_isometry(const CharacterTable& tg, const Block& b);

}  // namespace mbl
