#include "mbl/cyclicblocks.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "mbl/errors.hpp"
#include "test_util.hpp"

namespace mbl {
namespace {

using testing::corpus_group;
using Edge = std::pair<std::size_t, std::size_t>;

struct CyclicCase {
  std::string key;
  Int p;
  CharacterTable table;
  Block block;
};

std::vector<CyclicCase> cyclic_corpus() {
  std::vector<CyclicCase> out;
  for (const char* key : testing::kCorpus) {
    const auto t = character_table(corpus_group(key));
    for (Int p : {2, 3, 5, 7})
      for (const auto& b : p_blocks(t, p))
        if (b.defect > 0 && is_cyclic(b.defect_group)) out.push_back({key, p, t, b});
  }
  return out;
}

const std::vector<CyclicCase>& corpus() {
  static const auto cases = cyclic_corpus();
  return cases;
}

std::size_t row_with_degree(const CharacterTable& t, Int d, std::size_t skip = 0) {
  for (std::size_t i = 0; i < t.num_characters(); ++i)
    if (t.degree(i) == d && skip-- == 0) return i;
  return CharacterTable::npos;
}

TEST(BrauerTree, S3AtThreeIsAPath) {
  const auto t = character_table(corpus_group("s3"));
  const auto tree = brauer_tree(t, p_blocks(t, 3)[0]);
  const std::size_t one = 0, sgn = row_with_degree(t, 1, 1), two = row_with_degree(t, 2);
  EXPECT_EQ(tree.multiplicity, 1);
  ASSERT_EQ(tree.num_edges(), 2u);
  const auto vo = tree.vertex_of(one), vs = tree.vertex_of(sgn), v2 = tree.vertex_of(two);
  EXPECT_EQ(tree.edges, (std::vector<Edge>{{std::min(vo, v2), std::max(vo, v2)}, {std::min(vs, v2), std::max(vs, v2)}}));
  EXPECT_EQ(tree.exceptional, vo);

  const auto d = decomposition_matrix(tree);
  const auto row = [&](std::size_t chi) {
    return d[static_cast<std::size_t>(std::find(tree.characters.begin(), tree.characters.end(), chi) -
                                      tree.characters.begin())];
  };
  EXPECT_EQ(row(one), (std::vector<int>{1, 0}));
  EXPECT_EQ(row(two), (std::vector<int>{1, 1}));
  EXPECT_EQ(row(sgn), (std::vector<int>{0, 1}));
}

TEST(BrauerTree, A5AtFiveHasExceptionalEnd) {
  const auto t = character_table(corpus_group("a5"));
  const auto tree = brauer_tree(t, p_blocks(t, 5)[0]);
  const std::size_t x3 = row_with_degree(t, 3), y3 = row_with_degree(t, 3, 1), x4 = row_with_degree(t, 4);
  EXPECT_EQ(tree.multiplicity, 2);
  EXPECT_EQ(tree.vertices[tree.exceptional], (std::vector<std::size_t>{x3, y3}));
  ASSERT_EQ(tree.num_edges(), 2u);
  // Path 1 - 4 - {3, 3'}.
  const auto v4 = tree.vertex_of(x4);
  EXPECT_EQ(tree.incident_edges(v4).size(), 2u);
  EXPECT_EQ(tree.incident_edges(tree.vertex_of(0)).size(), 1u);
  const auto d = decomposition_matrix(tree);
  for (std::size_t i = 0; i < tree.characters.size(); ++i)
    if (tree.characters[i] == x3 || tree.characters[i] == y3)
      EXPECT_EQ(d[i], d[static_cast<std::size_t>(std::find(tree.characters.begin(), tree.characters.end(), x3) -
                                                 tree.characters.begin())]);
}

TEST(BrauerTree, OrderTwoDefectIsOneEdge) {
  std::size_t seen = 0;
  for (const auto& c : corpus()) {
    if (c.block.defect_group.order() != 2) continue;
    ++seen;
    const auto tree = brauer_tree(c.table, c.block);
    EXPECT_EQ(tree.vertices.size(), 2u) << c.key;
    EXPECT_EQ(tree.num_edges(), 1u);
    EXPECT_EQ(tree.multiplicity, 1);
    const auto d = decomposition_matrix(tree);
    for (const auto& row : d) EXPECT_EQ(row, std::vector<int>{1});
  }
  EXPECT_GT(seen, 0u);
}

TEST(BrauerTree, CorpusInvariants) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.key + " p=" + std::to_string(c.p));
    const auto tree = brauer_tree(c.table, c.block);
    const Int q = static_cast<Int>(c.block.defect_group.order());
    const auto e = static_cast<Int>(tree.num_edges());
    EXPECT_EQ(e * tree.multiplicity, q - 1);
    EXPECT_EQ(static_cast<Int>(c.block.size()), e + tree.multiplicity);
    EXPECT_EQ(tree.vertices.size(), tree.num_edges() + 1);
    // Connected.
    for (int dist : tree.distances()) EXPECT_GE(dist, 0);

    const auto& cls = c.table.group().classes();
    auto sum_vanishes = [&](std::size_t u, std::size_t w) {
      for (std::size_t k = 0; k < cls.size(); ++k) {
        if (cls[k].is_p_regular(c.p)) continue;
        CycloNum s(0L);
        for (auto chi : tree.vertices[u]) s += c.table.value(chi, k);
        for (auto chi : tree.vertices[w]) s += c.table.value(chi, k);
        if (!s.is_zero()) return false;
      }
      return true;
    };
    for (std::size_t u = 0; u < tree.vertices.size(); ++u)
      for (std::size_t w = u + 1; w < tree.vertices.size(); ++w) {
        const bool edge = std::find(tree.edges.begin(), tree.edges.end(), Edge{u, w}) != tree.edges.end();
        // On the corpus no two vertices are at odd distance >= 3.
        EXPECT_EQ(sum_vanishes(u, w), edge) << u << "," << w;
      }

    // chi = sum of d * phi on p-regular classes, with positive Brauer degrees.
    const auto d = decomposition_matrix(tree);
    for (const auto& phi : tree.brauer_characters) EXPECT_GT(phi[0].rational_value(), 0);
    for (std::size_t i = 0; i < tree.characters.size(); ++i)
      for (std::size_t r = 0; r < tree.regular_classes.size(); ++r) {
        CycloNum s(0L);
        for (std::size_t j = 0; j < tree.num_edges(); ++j) s += tree.brauer_characters[j][r] * Rational(d[i][j]);
        EXPECT_EQ(s, c.table.value(tree.characters[i], tree.regular_classes[r]));
      }
  }
}

TEST(BrauerTree, RejectsNonCyclic) {
  const auto t = character_table(corpus_group("s4"));
  EXPECT_THROW(brauer_tree(t, p_blocks(t, 2)[0]), NotCyclic);
  const auto a5 = character_table(corpus_group("a5"));
  EXPECT_THROW(brauer_tree(a5, p_blocks(a5, 5).back()), NotCyclic);
}

TEST(TreeAutomorphism, RationalTreeIsFixed) {
  const auto t = character_table(corpus_group("s3"));
  const auto tree = brauer_tree(t, p_blocks(t, 3)[0]);
  for (Int r : {1, 5}) {
    const auto a = galois_tree_automorphism(t, tree, r);
    EXPECT_EQ(a.fixed_vertices.size(), tree.vertices.size());
    EXPECT_EQ(a.edge_perm, (std::vector<std::size_t>{0, 1}));
  }
}

TEST(TreeAutomorphism, A5SwapKeepsFamily) {
  const auto t = character_table(corpus_group("a5"));
  const auto tree = brauer_tree(t, p_blocks(t, 5)[0]);
  const std::size_t x3 = row_with_degree(t, 3);
  Int swap = 0;
  for (Int r : full_galois_group(30).units)
    if (t.galois_conjugate(x3, r) != x3) swap = r;
  ASSERT_NE(swap, 0);
  const auto a = galois_tree_automorphism(t, tree, swap);
  EXPECT_EQ(a.fixed_vertices.size(), tree.vertices.size());
}

TEST(TreeAutomorphism, C7C3FixesExceptionalVertex) {
  const auto t = character_table(corpus_group("c7c3"));
  const auto tree = brauer_tree(t, p_blocks(t, 7)[0]);
  ASSERT_TRUE(tree.has_exceptional());
  bool moved_family = false;
  for (Int r : full_galois_group(21).units) {
    const auto a = galois_tree_automorphism(t, tree, r);
    EXPECT_NE(std::find(a.fixed_vertices.begin(), a.fixed_vertices.end(), tree.exceptional), a.fixed_vertices.end());
    const auto& fam = tree.vertices[tree.exceptional];
    moved_family = moved_family || t.galois_conjugate(fam[0], r) != fam[0];
  }
  EXPECT_TRUE(moved_family);
}

TEST(TreeAutomorphism, EveryCorpusAutomorphismFixesAVertex) {
  for (const auto& c : corpus()) {
    const auto tree = brauer_tree(c.table, c.block);
    const Int n = c.table.exponent();
    for (Int r : full_galois_group(n).units) {
      if (n == 1) break;
      std::vector<std::size_t> image;
      for (auto chi : tree.characters) image.push_back(c.table.galois_conjugate(chi, r));
      std::sort(image.begin(), image.end());
      if (image != tree.characters) {
        EXPECT_THROW(galois_tree_automorphism(c.table, tree, r), BlockNotStable);
        continue;
      }
      const auto a = galois_tree_automorphism(c.table, tree, r);
      if (c.block.defect_group.order() >= 3) EXPECT_FALSE(a.fixed_vertices.empty()) << c.key;
    }
  }
}

TEST(Rouquier, SingleEdge) {
  const auto t = character_table(corpus_group("c2"));
  const auto tree = brauer_tree(t, p_blocks(t, 2)[0]);
  const auto away = rouquier_partition(tree);
  EXPECT_EQ(away.far_endpoint, (std::vector<std::size_t>{1 - tree.exceptional}));
  EXPECT_EQ(away.i0_image, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(away.i1_image.empty());
  const auto with_v = rouquier_partition(tree, RhoClass::kContainsV);
  EXPECT_TRUE(with_v.i0_image.empty());
  EXPECT_EQ(with_v.i1_image, (std::vector<std::size_t>{0}));
}

TEST(Rouquier, S3Path) {
  const auto t = character_table(corpus_group("s3"));
  const auto tree = brauer_tree(t, p_blocks(t, 3)[0]);
  const auto rp = rouquier_partition(tree);
  const auto v2 = tree.vertex_of(row_with_degree(t, 2)), vs = tree.vertex_of(row_with_degree(t, 1, 1));
  EXPECT_EQ(rp.distances[tree.exceptional], 0);
  EXPECT_EQ(rp.distances[v2], 1);
  EXPECT_EQ(rp.distances[vs], 2);
  // Edge 0 joins 1 and chi_2, edge 1 joins chi_2 and sgn.
  EXPECT_EQ(rp.far_endpoint, (std::vector<std::size_t>{v2, vs}));
  EXPECT_EQ(rp.i0_image, (std::vector<std::size_t>{0}));
  EXPECT_EQ(rp.i1_image, (std::vector<std::size_t>{1}));
  EXPECT_FALSE(rp.rho);
}

TEST(Rouquier, S3PathWithEmbedding) {
  const auto t = character_table(corpus_group("s3"));
  const auto tree = brauer_tree(t, p_blocks(t, 3)[0]);
  PlanarEmbedding emb;
  for (std::size_t u = 0; u < tree.vertices.size(); ++u) emb.cyclic_order.push_back(tree.incident_edges(u));
  emb.delta = std::vector<std::size_t>{1, 0};
  const auto rp = rouquier_partition(tree, RhoClass::kAwayFromV, emb);
  ASSERT_TRUE(rp.rho);
  // rho cycles the two edges at chi_2; sigma fixes both.
  EXPECT_EQ(*rp.rho, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(*rp.sigma, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rp.i0, (std::vector<std::size_t>{1}));
  EXPECT_EQ(rp.i1, (std::vector<std::size_t>{0}));
  ASSERT_EQ(rp.n_prime.size(), 1u);
  EXPECT_EQ(rp.n_prime[0].first, 1u);
  EXPECT_EQ(rp.n_prime[0].second, std::optional<std::size_t>(1));
  // Left factors agree with the partition image.
  EXPECT_EQ(std::vector<std::size_t>{rp.n_prime[0].first}, rp.i1_image);

  emb.cyclic_order[0] = {0, 1};
  EXPECT_THROW(rouquier_partition(tree, RhoClass::kAwayFromV, emb), TreeValidationFailed);
}

TEST(Rouquier, StarWithCentralException) {
  const auto t = character_table(corpus_group("c7c3"));
  const auto tree = brauer_tree(t, p_blocks(t, 7)[0]);
  const auto rp = rouquier_partition(tree);
  for (auto far : rp.far_endpoint) EXPECT_EQ(tree.incident_edges(far).size(), 1u);
  EXPECT_EQ(rp.i0_image.size(), tree.num_edges());
  EXPECT_TRUE(rp.i1_image.empty());
}

TEST(Rouquier, PartitionCoversEdges) {
  for (const auto& c : corpus()) {
    const auto tree = brauer_tree(c.table, c.block);
    for (auto conv : {RhoClass::kAwayFromV, RhoClass::kContainsV}) {
      const auto rp = rouquier_partition(tree, conv);
      auto all = rp.i0_image;
      all.insert(all.end(), rp.i1_image.begin(), rp.i1_image.end());
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> ids(tree.num_edges());
      for (std::size_t j = 0; j < ids.size(); ++j) ids[j] = j;
      EXPECT_EQ(all, ids);
    }
  }
}

TEST(Shadow, S3IsIdentity) {
  const auto t = character_table(corpus_group("s3"));
  const auto b = p_blocks(t, 3)[0];
  const auto r = shadow_isometry(t, b);
  EXPECT_EQ(r.local.normalizer.order(), 6u);
  for (const auto& pr : r.isometry.pairs) {
    EXPECT_EQ(pr.chi, pr.psi);
    EXPECT_EQ(pr.sign, 1);
  }
}

TEST(Shadow, A5ToD10) {
  const auto t = character_table(corpus_group("a5"));
  const auto r = shadow_isometry(t, p_blocks(t, 5)[0]);
  EXPECT_TRUE(r.verdict.pass());
  EXPECT_TRUE(r.equivariance.pass);
  const auto& fam_g = r.tree_g.vertices[r.tree_g.exceptional];
  const auto& fam_h = r.tree_h.vertices[r.tree_h.exceptional];
  ASSERT_EQ(fam_g.size(), 2u);
  for (auto chi : fam_g) {
    const auto* pr = r.isometry.find(chi);
    ASSERT_NE(pr, nullptr);
    EXPECT_NE(std::find(fam_h.begin(), fam_h.end(), pr->psi), fam_h.end());
  }
}

TEST(Shadow, OrderTwoDefect) {
  for (const auto& c : corpus()) {
    if (c.block.defect_group.order() != 2) continue;
    const auto r = shadow_isometry(c.table, c.block);
    ASSERT_EQ(r.isometry.pairs.size(), 2u);
    EXPECT_TRUE(r.verdict.pass());
    EXPECT_TRUE(r.isometry.pairs[0].sign == 1 || r.isometry.pairs[1].sign == 1);
  }
}

TEST(Shadow, CorpusVerifiesAndPreservesRationality) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.key + " p=" + std::to_string(c.p));
    const auto r = shadow_isometry(c.table, c.block);
    EXPECT_TRUE(r.verdict.pass());
    EXPECT_TRUE(r.equivariance.pass);
    EXPECT_TRUE(is_perfect_isometry(c.table, *r.local.table, r.isometry, c.p).pass());
    EXPECT_TRUE(equivariance_check(c.table, *r.local.table, r.isometry, r.galois).pass);
    const auto rg = p_rational_characters(c.table, c.block);
    const auto rh = p_rational_characters(*r.local.table, r.local.block());
    for (const auto& pr : r.isometry.pairs)
      EXPECT_EQ(std::count(rg.begin(), rg.end(), pr.chi), std::count(rh.begin(), rh.end(), pr.psi));
    const Int n = lcm(c.table.group_order(), r.local.table->group_order());
    EXPECT_TRUE(navarro_counts(c.table, c.block, *r.local.table, r.local.block(), n).consistent);
  }
}

}  // namespace
}  // namespace mbl
