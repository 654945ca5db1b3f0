#include "mbl/blocks.hpp"

#include <gtest/gtest.h>

#include <set>

#include "mbl/errors.hpp"
#include "test_util.hpp"

namespace mbl {
namespace {

using testing::corpus_group;
using Chars = std::vector<std::size_t>;

std::vector<Chars> partition(const std::vector<Block>& blocks) {
  std::vector<Chars> out;
  for (const auto& b : blocks) out.push_back(b.characters);
  return out;
}

bool conjugate_subgroups(const PermGroup& g, const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order()) return false;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& s : a.generators()) ok = ok && b.contains(perm::conjugate(s, x));
    if (ok) return true;
  }
  return false;
}

// Every p-subgroup of G properly containing P, by adjoining p-elements one at
// a time.
std::vector<PermGroup> p_overgroups(const PermGroup& g, const PermGroup& pg, Int p) {
  std::vector<Perm> p_elements;
  for (const auto& x : g.elements())
    if (p_part(perm::order(x), p) == perm::order(x)) p_elements.push_back(x);
  std::set<std::vector<Perm>> seen{pg.elements()};
  std::vector<PermGroup> frontier{pg}, out;
  while (!frontier.empty()) {
    std::vector<PermGroup> next;
    for (const auto& q : frontier)
      for (const auto& x : p_elements) {
        if (q.contains(x)) continue;
        auto gens = q.generators();
        gens.push_back(x);
        PermGroup big = subgroup(g, gens);
        if (p_part(static_cast<Int>(big.order()), p) != static_cast<Int>(big.order())) continue;
        if (!seen.insert(big.elements()).second) continue;
        out.push_back(big);
        next.push_back(big);
      }
    frontier = std::move(next);
  }
  return out;
}

TEST(Blocks, SymmetricThreeAtThree) {
  const auto t = character_table(corpus_group("s3"));
  const auto b = p_blocks(t, 3);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].characters, (Chars{0, 1, 2}));
  EXPECT_EQ(b[0].defect, 1);
}

TEST(Blocks, AlternatingFourAtThree) {
  const auto t = character_table(corpus_group("a4"));
  const auto b = p_blocks(t, 3);
  EXPECT_EQ(partition(b), (std::vector<Chars>{{0, 1, 2}, {3}}));
  EXPECT_EQ(b[0].defect, 1);
  EXPECT_EQ(b[1].defect, 0);
  EXPECT_EQ(t.degree(3), 3);
  const auto local = brauer_correspondent(t, b[0]);
  EXPECT_EQ(local.normalizer.order(), 3u);
  EXPECT_EQ(local.blocks.size(), 1u);
  EXPECT_EQ(local.index, 0u);
}

TEST(Blocks, AlternatingFiveAtFive) {
  const auto t = character_table(corpus_group("a5"));
  const auto b = p_blocks(t, 5);
  EXPECT_EQ(partition(b), (std::vector<Chars>{{0, 1, 2, 3}, {4}}));
  EXPECT_EQ(b[0].defect, 1);
  EXPECT_EQ(b[0].defect_group.order(), 5u);
  EXPECT_EQ(b[1].defect, 0);
  EXPECT_EQ(b[1].defect_group.order(), 1u);
  EXPECT_EQ(t.degree(4), 5);

  const auto img = brauer_image(t, b[0], b[0].defect_group);
  EXPECT_FALSE(img.is_zero());
  EXPECT_EQ(img.centralizer.order(), 5u);
  EXPECT_TRUE(brauer_image(t, b[1], b[0].defect_group).is_zero());
  EXPECT_FALSE(brauer_image(t, b[1], PermGroup::trivial(5)).is_zero());

  const auto local = brauer_correspondent(t, b[0]);
  EXPECT_EQ(local.normalizer.order(), 10u);
  EXPECT_TRUE(local.block().is_principal());
  EXPECT_EQ(local.block().size(), 4u);
}

TEST(Blocks, SymmetricFourPrincipalTwoBlockHasDihedralDefectGroup) {
  const auto t = character_table(corpus_group("s4"));
  const auto b = p_blocks(t, 2);
  const auto& d = b[0].defect_group;
  EXPECT_EQ(d.order(), 8u);
  EXPECT_EQ(d.exponent(), 4);
  EXPECT_EQ(d.num_classes(), 5u);  // D_8 (Q_8 has no faithful degree-4 action)
  EXPECT_TRUE(verify_defect_group(t, b[0], d));
}

TEST(Blocks, MinimalFieldDegree) {
  const auto t3 = character_table(corpus_group("c3"));
  const auto b3 = p_blocks(t3, 2);
  ASSERT_EQ(b3.size(), 3u);
  EXPECT_EQ(b3[0].minimal_field_degree, 1);
  EXPECT_EQ(b3[1].minimal_field_degree, 2);
  EXPECT_EQ(b3[2].minimal_field_degree, 2);
  for (const char* key : {"s3", "s4", "d8", "q8"})
    for (Int p : {2, 3})
      for (const auto& b : p_blocks(character_table(corpus_group(key)), p)) EXPECT_EQ(minimal_field_degree(b), 1);
  for (const char* key : testing::kCorpus)
    for (Int p : {2, 3, 5, 7}) EXPECT_EQ(p_blocks(character_table(corpus_group(key)), p)[0].minimal_field_degree, 1);
}

TEST(Blocks, FrobeniusOrbitExamples) {
  {
    const auto t = character_table(corpus_group("c3"));
    const auto orbits = frobenius_block_orbits(t, p_blocks(t, 2), 1);
    ASSERT_EQ(orbits.size(), 2u);
    EXPECT_EQ(orbits[0].blocks, (Chars{0}));
    EXPECT_EQ(orbits[1].blocks, (Chars{1, 2}));
    EXPECT_EQ(orbits[1].field_degree, 1);
  }
  {
    const auto t = character_table(corpus_group("c7"));
    const auto orbits = frobenius_block_orbits(t, p_blocks(t, 2), 1);
    ASSERT_EQ(orbits.size(), 3u);
    std::multiset<std::size_t> sizes;
    for (const auto& o : orbits) sizes.insert(o.blocks.size());
    EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 3, 3}));
  }
  {
    const auto t = character_table(corpus_group("s4"));
    for (const auto& o : frobenius_block_orbits(t, p_blocks(t, 2), 1)) EXPECT_EQ(o.blocks.size(), 1u);
  }
}

TEST(Blocks, CorpusInvariants) {
  for (const char* key : testing::kCorpus) {
    const auto t = character_table(corpus_group(key));
    const PermGroup& g = t.group();
    const auto c = class_structure_constants(g);
    for (Int p : {2, 3, 5, 7}) {
      SCOPED_TRACE(std::string(key) + " p=" + std::to_string(p));
      const auto blocks = p_blocks(t, p);
      std::vector<int> hits(t.num_characters());
      for (const auto& b : blocks) {
        for (auto chi : b.characters) ++hits[chi];
        EXPECT_FALSE(b.height_zero().empty());
        EXPECT_EQ(static_cast<Int>(b.defect_group.order()), pow_mod(p, b.defect, 1LL << 40));
        EXPECT_TRUE(verify_defect_group(t, b, b.defect_group));
        for (const auto& other : blocks) {
          const auto prod = class_algebra_product(c, b.idempotent, other.idempotent);
          if (&other == &b)
            EXPECT_EQ(prod, b.idempotent);
          else
            for (const auto& x : prod) EXPECT_TRUE(x.is_zero());
        }
        for (std::size_t cls = 0; cls < t.num_classes(); ++cls)
          for (auto chi : b.characters)
            EXPECT_EQ(reduce_mod_p(*reduction_map(t.exponent(), p), central_character_value(t, chi, cls)),
                      b.central_character[cls]);
      }
      for (int h : hits) EXPECT_EQ(h, 1);
      // Orbit length under Frob^d is d_B / gcd(d_B, d).
      for (Int d : {1, 2, 3}) {
        for (const auto& o : frobenius_block_orbits(t, blocks, d)) {
          const Int db = blocks[o.blocks[0]].minimal_field_degree;
          EXPECT_EQ(static_cast<Int>(o.blocks.size()), db / std::gcd(db, d));
        }
      }
    }
  }
}

TEST(Blocks, DefectGroupsAreMaximalExhaustively) {
  for (const char* key : testing::kCorpus) {
    const auto t = character_table(corpus_group(key));
    for (Int p : {2, 3, 5, 7}) {
      for (const auto& b : p_blocks(t, p)) {
        EXPECT_FALSE(brauer_image(t, b, b.defect_group).is_zero());
        for (const auto& q : p_overgroups(t.group(), b.defect_group, p))
          EXPECT_TRUE(brauer_image(t, b, q).is_zero()) << key << " p=" << p;
      }
    }
  }
}

TEST(Blocks, BrauerCorrespondenceIsBijective) {
  for (const char* key : testing::kCorpus) {
    const auto t = character_table(corpus_group(key));
    const PermGroup& g = t.group();
    for (Int p : {2, 3, 5, 7}) {
      const auto blocks = p_blocks(t, p);
      for (const auto& b : blocks) {
        const PermGroup& pg = b.defect_group;
        const auto local = brauer_correspondent(t, b);
        std::set<std::size_t> images;
        std::size_t count = 0;
        for (const auto& b2 : blocks) {
          if (!conjugate_subgroups(g, pg, b2.defect_group)) continue;
          ++count;
          images.insert(brauer_correspondent(t, b2, pg, *local.table, local.blocks));
        }
        std::size_t local_count = 0;
        for (const auto& c : local.blocks)
          if (c.defect_group.order() == pg.order()) ++local_count;
        EXPECT_EQ(images.size(), count) << key << " p=" << p;
        EXPECT_EQ(local_count, count) << key << " p=" << p;
        EXPECT_EQ(local.block().defect, b.defect);
        for (std::size_t i : images) EXPECT_EQ(local.blocks[i].defect_group.order(), pg.order());
      }
    }
  }
}

TEST(Blocks, TrivialDefectGroupCorrespondsToItself) {
  const auto t = character_table(corpus_group("a5"));
  const auto b = p_blocks(t, 5);
  const auto local = brauer_correspondent(t, b[1]);
  EXPECT_EQ(local.normalizer.order(), 60u);
  EXPECT_EQ(local.block().characters, b[1].characters);
}

TEST(Blocks, FrobeniusOrbitsMatchDirectBlocks) {
  for (const char* key : {"c3", "c7", "c15", "s3", "a4", "a5", "c7c3", "f20", "sl23", "c12"}) {
    const PermGroup g = std::string(key) == "c15" ? PermGroup(15, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 0}})
                                                   : corpus_group(key);
    const auto t = character_table(g);
    for (Int p : {2, 3, 5}) {
      const auto blocks = p_blocks(t, p);
      for (Int d : {1, 2, 3, 4}) {
        std::vector<std::vector<FFElem>> from_orbits;
        for (const auto& o : frobenius_block_orbits(t, blocks, d)) from_orbits.push_back(o.idempotent);
        std::sort(from_orbits.begin(), from_orbits.end(), [](const auto& a, const auto& b) {
          return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        EXPECT_EQ(from_orbits, direct_block_idempotents(g, p, d)) << key << " p=" << p << " d=" << d;
      }
    }
  }
}

}  // namespace
}  // namespace mbl
