#include "mbl/cyclicblocks.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "mbl/errors.hpp"

namespace mbl {

std::size_t BrauerTree::vertex_of(std::size_t chi) const {
  for (std::size_t u = 0; u < vertices.size(); ++u)
    if (std::find(vertices[u].begin(), vertices[u].end(), chi) != vertices[u].end()) return u;
  throw Error("character " + std::to_string(chi) + " is not in the block");
}

std::vector<std::size_t> BrauerTree::incident_edges(std::size_t vertex) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < edges.size(); ++j)
    if (edges[j].first == vertex || edges[j].second == vertex) out.push_back(j);
  return out;
}

std::vector<int> BrauerTree::distances() const {
  std::vector<int> d(vertices.size(), -1);
  std::deque<std::size_t> queue{exceptional};
  d[exceptional] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (auto j : incident_edges(u)) {
      const std::size_t w = edges[j].first == u ? edges[j].second : edges[j].first;
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return d;
}

namespace {

using Row = std::vector<CycloNum>;

Row operator+(Row a, const Row& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
Row operator-(Row a, const Row& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// Brauer characters from a candidate tree by peeling leaves, or nullopt if the
// restrictions are inconsistent with it.
std::optional<std::vector<Row>> solve_brauer(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                             const std::vector<Row>& restriction) {
  const std::size_t nv = restriction.size();
  std::vector<std::optional<Row>> phi(edges.size());
  std::size_t known = 0;
  while (known < edges.size()) {
    bool progress = false;
    for (std::size_t u = 0; u < nv; ++u) {
      std::size_t unknown = 0, last = 0;
      Row rest = restriction[u];
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (edges[j].first != u && edges[j].second != u) continue;
        if (phi[j]) {
          rest = rest - *phi[j];
        } else {
          ++unknown;
          last = j;
        }
      }
      if (unknown == 1) {
        phi[last] = rest;
        ++known;
        progress = true;
      }
    }
    if (!progress) return std::nullopt;
  }
  std::vector<Row> out;
  for (auto& x : phi) out.push_back(*x);
  for (std::size_t u = 0; u < nv; ++u) {
    Row s(restriction[u].size(), CycloNum(0L));
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (edges[j].first == u || edges[j].second == u) s = s + out[j];
    if (s != restriction[u]) return std::nullopt;
  }
  return out;
}

}  // namespace

BrauerTree brauer_tree(const CharacterTable& t, const Block& b) {
  if (b.defect == 0 || !is_cyclic(b.defect_group))
    throw NotCyclic("block defect group is not nontrivial cyclic");
  const Int p = b.p;
  const Int q = static_cast<Int>(b.defect_group.order());
  const std::size_t k = b.size();
  const auto& cls = t.group().classes();

  BrauerTree tree;
  tree.p = p;
  tree.characters = b.characters;

  // Non-exceptional characters are constant on the nonidentity elements of
  // the defect group; the others form the exceptional family.
  std::vector<std::size_t> p_classes;
  for (const auto& u : b.defect_group.elements())
    if (!perm::is_identity(u)) p_classes.push_back(t.group().class_of_perm(u));
  std::vector<std::size_t> family;
  for (auto chi : b.characters) {
    bool constant = true;
    for (auto c : p_classes) constant = constant && t.value(chi, c) == t.value(chi, p_classes[0]);
    if (!constant) family.push_back(chi);
  }
  if (family.size() == 1) throw TreeValidationFailed("exceptional family of size one");
  tree.multiplicity = family.empty() ? 1 : static_cast<Int>(family.size());
  const Int e = static_cast<Int>(k) - tree.multiplicity;
  if (e <= 0 || e * tree.multiplicity != q - 1)
    throw TreeValidationFailed("e * m != |P| - 1 for e = " + std::to_string(e) + ", m = " +
                               std::to_string(tree.multiplicity));

  for (auto chi : b.characters)
    if (family.empty() || std::find(family.begin(), family.end(), chi) == family.end())
      tree.vertices.push_back({chi});
  if (!family.empty()) tree.vertices.push_back(family);
  std::sort(tree.vertices.begin(), tree.vertices.end());
  const std::size_t nv = tree.vertices.size();

  for (std::size_t c = 0; c < cls.size(); ++c)
    if (cls[c].is_p_regular(p)) tree.regular_classes.push_back(c);

  // Family sums (all classes) and single-member restrictions (p-regular classes).
  std::vector<Row> sums, restriction;
  for (const auto& vert : tree.vertices) {
    Row s(cls.size(), CycloNum(0L));
    for (auto chi : vert)
      for (std::size_t c = 0; c < cls.size(); ++c) s[c] += t.value(chi, c);
    sums.push_back(std::move(s));
    Row r;
    for (auto c : tree.regular_classes) r.push_back(t.value(vert[0], c));
    restriction.push_back(std::move(r));
  }

  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t u = 0; u < nv; ++u)
    for (std::size_t w = u + 1; w < nv; ++w) {
      bool vanishes = true;
      for (std::size_t c = 0; c < cls.size() && vanishes; ++c)
        if (!cls[c].is_p_regular(p)) vanishes = (sums[u][c] + sums[w][c]).is_zero();
      if (vanishes) candidates.emplace_back(u, w);
    }

  std::vector<std::size_t> pos(cls.size(), 0);
  for (std::size_t i = 0; i < tree.regular_classes.size(); ++i) pos[tree.regular_classes[i]] = i;
  const Rational order(t.group_order());

  auto orthonormal = [&](const std::vector<std::pair<std::size_t, std::size_t>>& edges, const std::vector<Row>& phi) {
    for (std::size_t j = 0; j < edges.size(); ++j) {
      const Row proj = sums[edges[j].first] + sums[edges[j].second];
      for (std::size_t i = 0; i < edges.size(); ++i) {
        CycloNum s(0L);
        for (auto c : tree.regular_classes)
          s += proj[c] * phi[i][pos[t.group().inverse_class(c)]] * Rational(cls[c].size);
        if (s / order != CycloNum(i == j ? 1L : 0L)) return false;
      }
    }
    return true;
  };

  // Spanning trees of the vanishing graph.
  std::vector<std::pair<std::vector<std::pair<std::size_t, std::size_t>>, std::vector<Row>>> found;
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  std::vector<std::size_t> parent(nv);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) { return parent[x] == x ? x : root(parent[x]); };
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (chosen.size() == nv - 1) {
      auto phi = solve_brauer(chosen, restriction);
      if (!phi) return;
      for (const auto& f : *phi)
        if (!f[0].is_rational() || f[0].rational_value() <= 0) return;
      if (orthonormal(chosen, *phi)) found.emplace_back(chosen, std::move(*phi));
      return;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const auto [u, w] = candidates[i];
      const auto saved = parent;
      const std::size_t ru = root(u), rw = root(w);
      if (ru == rw) continue;
      parent[ru] = rw;
      chosen.push_back(candidates[i]);
      pick(i + 1);
      chosen.pop_back();
      parent = saved;
    }
  };
  std::iota(parent.begin(), parent.end(), 0);
  pick(0);
  if (found.size() != 1)
    throw TreeValidationFailed(std::to_string(found.size()) + " spanning trees fit the character data");
  tree.edges = std::move(found[0].first);
  tree.brauer_characters = std::move(found[0].second);
  if (static_cast<Int>(tree.edges.size()) != e) throw TreeValidationFailed("edge count differs from e");

  if (tree.has_exceptional()) {
    tree.exceptional = tree.vertex_of(family[0]);
  } else {
    // Least vertex fixed by every Galois automorphism stabilizing the block.
    const Int n = t.exponent();
    std::vector<bool> fixed(nv, true);
    for (Int r : full_galois_group(n).units) {
      if (n == 1) break;
      std::vector<std::size_t> image;
      for (auto chi : b.characters) image.push_back(t.galois_conjugate(chi, r));
      std::sort(image.begin(), image.end());
      if (image != b.characters) continue;
      for (std::size_t u = 0; u < nv; ++u)
        if (t.galois_conjugate(tree.vertices[u][0], r) != tree.vertices[u][0]) fixed[u] = false;
    }
    const auto it = std::find(fixed.begin(), fixed.end(), true);
    tree.exceptional = it == fixed.end() ? 0 : static_cast<std::size_t>(it - fixed.begin());
  }
  return tree;
}

std::vector<std::vector<int>> decomposition_matrix(const BrauerTree& tree) {
  std::vector<std::vector<int>> d;
  for (auto chi : tree.characters) {
    const std::size_t u = tree.vertex_of(chi);
    std::vector<int> row;
    for (const auto& [a, w] : tree.edges) row.push_back(a == u || w == u ? 1 : 0);
    d.push_back(std::move(row));
  }
  return d;
}

TreeAutomorphism galois_tree_automorphism(const CharacterTable& t, const BrauerTree& tree, Int r) {
  TreeAutomorphism a;
  std::vector<std::size_t> image;
  for (auto chi : tree.characters) image.push_back(t.galois_conjugate(chi, r));
  auto sorted = image;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != tree.characters) throw BlockNotStable("Galois conjugation does not stabilize the block");

  for (const auto& vert : tree.vertices) {
    const std::size_t target = tree.vertex_of(t.galois_conjugate(vert[0], r));
    for (auto chi : vert)
      if (tree.vertex_of(t.galois_conjugate(chi, r)) != target)
        throw TreeValidationFailed("Galois conjugation splits a vertex");
    a.vertex_perm.push_back(target);
  }
  for (const auto& [u, w] : tree.edges) {
    auto x = a.vertex_perm[u], y = a.vertex_perm[w];
    if (x > y) std::swap(x, y);
    const auto it = std::find(tree.edges.begin(), tree.edges.end(), std::make_pair(x, y));
    if (it == tree.edges.end()) throw TreeValidationFailed("Galois conjugation does not preserve edges");
    a.edge_perm.push_back(static_cast<std::size_t>(it - tree.edges.begin()));
  }
  for (std::size_t u = 0; u < a.vertex_perm.size(); ++u)
    if (a.vertex_perm[u] == u) a.fixed_vertices.push_back(u);
  const Int q = static_cast<Int>(tree.edges.size()) * tree.multiplicity + 1;
  if (q >= 3 && a.fixed_vertices.empty()) throw TreeValidationFailed("tree automorphism fixes no vertex");
  return a;
}

RouquierPartition rouquier_partition(const BrauerTree& tree, RhoClass convention,
                                     const std::optional<PlanarEmbedding>& embedding) {
  RouquierPartition rp;
  rp.convention = convention;
  rp.distances = tree.distances();
  const int rho_parity = convention == RhoClass::kAwayFromV ? 1 : 0;
  auto in_rho = [&](std::size_t u) { return rp.distances[u] % 2 == rho_parity; };
  for (std::size_t j = 0; j < tree.edges.size(); ++j) {
    const auto [u, w] = tree.edges[j];
    const std::size_t far = rp.distances[u] > rp.distances[w] ? u : w;
    rp.far_endpoint.push_back(far);
    (in_rho(far) ? rp.i0_image : rp.i1_image).push_back(j);
  }
  if (!embedding) return rp;

  const auto& order = embedding->cyclic_order;
  if (order.size() != tree.vertices.size()) throw TreeValidationFailed("embedding has wrong vertex count");
  for (std::size_t u = 0; u < order.size(); ++u) {
    auto got = order[u];
    std::sort(got.begin(), got.end());
    if (got != tree.incident_edges(u)) throw TreeValidationFailed("embedding order at a vertex is not its edge set");
  }
  const std::size_t e = tree.edges.size();
  if (embedding->delta) {
    auto d = *embedding->delta;
    std::sort(d.begin(), d.end());
    std::vector<std::size_t> ids(e);
    std::iota(ids.begin(), ids.end(), 0);
    if (d != ids) throw TreeValidationFailed("delta is not a permutation of the edges");
  }
  auto next_around = [&](std::size_t u, std::size_t j) {
    const auto& cyc = order[u];
    const auto it = std::find(cyc.begin(), cyc.end(), j);
    return cyc[(static_cast<std::size_t>(it - cyc.begin()) + 1) % cyc.size()];
  };
  std::vector<std::size_t> rho(e), sigma(e);
  for (std::size_t j = 0; j < e; ++j) {
    const auto [u, w] = tree.edges[j];
    const std::size_t ru = in_rho(u) ? u : w, su = in_rho(u) ? w : u;
    rho[j] = next_around(ru, j);
    sigma[j] = next_around(su, j);
  }
  for (std::size_t i = 0; i < e; ++i) {
    const bool zero = std::find(rp.i0_image.begin(), rp.i0_image.end(), rho[i]) != rp.i0_image.end();
    (zero ? rp.i0 : rp.i1).push_back(i);
  }
  for (auto i : rp.i1) {
    std::optional<std::size_t> d;
    if (embedding->delta) d = (*embedding->delta)[i];
    rp.n_prime.emplace_back(rho[i], d);
  }
  rp.rho = std::move(rho);
  rp.sigma = std::move(sigma);
  return rp;
}

namespace {

struct Side {
  std::vector<std::size_t> anchor;  // members of the vertex v
  std::vector<std::size_t> others;  // by (distance, index)
  std::vector<int> dist;            // per character, parallel to the tree's list
};

Side arrange(const BrauerTree& tree) {
  Side s;
  const auto d = tree.distances();
  s.anchor = tree.vertices[tree.exceptional];
  std::vector<std::pair<int, std::size_t>> rest;
  for (auto chi : tree.characters) {
    const int dc = d[tree.vertex_of(chi)];
    s.dist.push_back(dc);
    if (dc != 0) rest.emplace_back(dc, chi);
  }
  std::sort(rest.begin(), rest.end());
  for (const auto& [dc, chi] : rest) s.others.push_back(chi);
  return s;
}

int distance_of(const BrauerTree& tree, const Side& s, std::size_t chi) {
  const auto it = std::find(tree.characters.begin(), tree.characters.end(), chi);
  return s.dist[static_cast<std::size_t>(it - tree.characters.begin())];
}

}  // namespace

ShadowResult shadow_isometry(const CharacterTable& tg, const Block& b) {
  ShadowResult res;
  res.tree_g = brauer_tree(tg, b);
  res.local = brauer_correspondent(tg, b);
  const CharacterTable& th = *res.local.table;
  const Block& c = res.local.block();
  res.tree_h = brauer_tree(th, c);
  const Int n = lcm(tg.group_order(), th.group_order());
  res.galois = h_nk(n, b.p, b.minimal_field_degree);

  const Side sg = arrange(res.tree_g), sh = arrange(res.tree_h);
  if (sg.anchor.size() != sh.anchor.size() || sg.others.size() != sh.others.size())
    throw NoShadowFound("trees of B and its correspondent have different shapes");

  auto accept = [&](const SignedBijection& iso, const std::string& strategy) {
    auto v = is_perfect_isometry(tg, th, iso, b.p);
    if (!v.pass()) return false;
    auto eq = equivariance_check(tg, th, iso, res.galois);
    if (!eq.pass) return false;
    res.isometry = iso;
    res.verdict = std::move(v);
    res.equivariance = eq;
    res.strategy = strategy;
    return true;
  };

  constexpr std::size_t kMaxCandidates = 200000;
  for (int flip : {1, -1}) {
    std::vector<std::size_t> ai(sh.anchor.size()), oi(sh.others.size());
    std::iota(ai.begin(), ai.end(), 0);
    std::size_t tried = 0;
    do {
      std::iota(oi.begin(), oi.end(), 0);
      do {
        if (++tried > kMaxCandidates) break;
        std::vector<Pairing> pairs;
        for (std::size_t i = 0; i < ai.size(); ++i) pairs.push_back({sg.anchor[i], sh.anchor[ai[i]], flip});
        for (std::size_t i = 0; i < oi.size(); ++i) {
          const std::size_t chi = sg.others[i], psi = sh.others[oi[i]];
          const int parity = (distance_of(res.tree_g, sg, chi) + distance_of(res.tree_h, sh, psi)) % 2;
          pairs.push_back({chi, psi, parity == 0 ? flip : -flip});
        }
        if (accept(SignedBijection(b.characters, c.characters, pairs), flip == 1 ? "parity" : "parity-flipped"))
          return res;
      } while (std::next_permutation(oi.begin(), oi.end()));
    } while (tried <= kMaxCandidates && std::next_permutation(ai.begin(), ai.end()));
  }

  SearchOptions opts;
  opts.deduplicate = false;
  for (const auto& iso : search_perfect_isometries(tg, b, th, c, opts))
    if (accept(iso, "search")) return res;
  throw NoShadowFound("no equivariant perfect isometry to the Brauer correspondent");
}

}  // namespace mbl
