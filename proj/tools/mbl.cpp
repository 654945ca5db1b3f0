#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "cache.hpp"
#include "mbl/blocks.hpp"
#include "mbl/cyclicblocks.hpp"
#include "mbl/errors.hpp"
#include "mbl/io.hpp"
#include "mbl/isometry.hpp"
#include "mbl/symalg.hpp"

namespace fs = std::filesystem;
using namespace mbl;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Global {
  bool json = false;
  bool no_cache = false;
};

Global g_opts;

struct Loaded {
  std::string name;
  std::shared_ptr<const CharacterTable> table;
};

Loaded load(const std::string& path) {
  const std::string text = read_file(path);
  auto gf = group_from_json_text(text, path);
  auto table = g_opts.no_cache ? std::make_shared<const CharacterTable>(character_table(gf.group))
                               : cached_character_table(gf.group, text);
  return {gf.name, std::move(table)};
}

void require_prime(Int p) {
  if (p < 2 || !is_prime(p)) throw Error("--prime must be a prime, got " + std::to_string(p));
}

Block pick_block(const std::vector<Block>& blocks, std::size_t index) {
  if (index >= blocks.size())
    throw Error("--block " + std::to_string(index) + " out of range (" + std::to_string(blocks.size()) + " blocks)");
  return blocks[index];
}

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

std::string join_int(const std::vector<Int>& v) {
  std::ostringstream s;
  s << '{';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << '}';
  return s.str();
}

int emit(const Json& j, const std::string& text, int code) {
  if (g_opts.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
  return code;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

std::string table_text(const CharacterTable& t) {
  const auto& g = t.group();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"class"}, order = {"order"}, size = {"size"};
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    head.push_back(std::to_string(c));
    order.push_back(std::to_string(g.classes()[c].element_order));
    size.push_back(std::to_string(g.classes()[c].size));
  }
  cells.push_back(head);
  cells.push_back(order);
  cells.push_back(size);
  for (std::size_t chi = 0; chi < t.num_characters(); ++chi) {
    std::vector<std::string> row = {"X." + std::to_string(chi)};
    for (const auto& x : t.row(chi)) row.push_back(x.to_string());
    cells.push_back(row);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& r : cells)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream s;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    for (std::size_t i = 0; i < cells[k].size(); ++i) s << (i ? "  " : "") << pad(cells[k][i], width[i]);
    s << '\n';
    if (k == 2) s << '\n';
  }
  return s.str();
}

std::string block_line(const Block& b) {
  std::ostringstream s;
  s << "chars {" << join(b.characters) << "}  defect " << b.defect << "  |D| " << b.defect_group.order()
    << "  heights [" << join(std::vector<std::size_t>(b.heights.begin(), b.heights.end())) << "]  d_B "
    << b.minimal_field_degree;
  return s.str();
}

Json correspondent_json(const LocalBlock& lb) {
  return Json{{"normalizer_order", lb.normalizer.order()},
              {"normalizer", group_to_json("N", lb.normalizer)},
              {"index", lb.index},
              {"block", to_json(lb.block())}};
}

// Both sides of an isometry: G with a block, and H (a file, or N_G(P)).
struct Pair {
  Loaded g;
  Block b;
  std::shared_ptr<const CharacterTable> th;
  Block c;
  std::optional<LocalBlock> local;
};

Pair make_pair(const std::string& gpath, const std::string& hpath, Int p, std::size_t bi, std::optional<std::size_t> ci,
               Int conductor) {
  Pair out{load(gpath), Block{}, nullptr, Block{}, std::nullopt};
  if (hpath.empty()) {
    out.b = pick_block(p_blocks(*out.g.table, p, conductor), bi);
    out.local = brauer_correspondent(*out.g.table, out.b);
    out.th = out.local->table;
    out.c = ci ? pick_block(out.local->blocks, *ci) : out.local->block();
  } else {
    auto h = load(hpath);
    out.th = h.table;
    const Int n = conductor ? conductor : lcm(out.g.table->exponent(), out.th->exponent());
    out.b = pick_block(p_blocks(*out.g.table, p, n), bi);
    out.c = pick_block(p_blocks(*out.th, p, n), ci.value_or(0));
  }
  return out;
}

// ---- commands ----

int cmd_chartab(const std::string& path) {
  const auto l = load(path);
  Json j = to_json(*l.table);
  j["name"] = l.name;
  return emit(j, l.name + " (order " + std::to_string(l.table->group_order()) + ")\n" + table_text(*l.table), kPass);
}

int cmd_blocks(const std::string& path, Int p, std::optional<Int> field_degree) {
  require_prime(p);
  const auto l = load(path);
  const auto& t = *l.table;
  const auto blocks = p_blocks(t, p);
  Json arr = Json::array();
  std::ostringstream s;
  s << l.name << " at p = " << p << ": " << blocks.size() << " blocks\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Json j = to_json(blocks[i]);
    s << "  B" << i << "  " << block_line(blocks[i]);
    if (blocks[i].defect > 0) {
      const auto lb = brauer_correspondent(t, blocks[i]);
      j["correspondent"] = correspondent_json(lb);
      s << "  -> N order " << lb.normalizer.order() << " block {" << join(lb.block().characters) << "}";
    } else {
      j["correspondent"] = nullptr;
    }
    s << '\n';
    arr.push_back(j);
  }
  Json out{{"group", l.name}, {"p", p}, {"blocks", arr}};
  int code = kPass;
  if (field_degree) {
    const Int d = *field_degree;
    if (d < 1) throw Error("--field-degree must be positive");
    const auto orbits = frobenius_block_orbits(t, blocks, d);
    std::vector<std::vector<FFElem>> from_orbits;
    Json oj = Json::array();
    s << "blocks of F_" << p << "^" << d << " G:\n";
    for (const auto& o : orbits) {
      from_orbits.push_back(o.idempotent);
      oj.push_back({{"blocks", o.blocks}, {"field_degree", o.field_degree}});
      s << "  {" << join(o.blocks) << "}\n";
    }
    std::sort(from_orbits.begin(), from_orbits.end(),
              [](const auto& a, const auto& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); });
    const bool agree = from_orbits == direct_block_idempotents(t.group(), p, d);
    out["frobenius_orbits"] = {{"d", d}, {"orbits", oj}, {"matches_direct", agree}};
    s << "matches direct computation over F_" << p << "^" << d << ": " << (agree ? "true" : "false") << '\n';
    code = agree ? kPass : kFail;
  }
  return emit(out, s.str(), code);
}

int cmd_correspondent(const std::string& path, Int p, std::size_t bi) {
  require_prime(p);
  const auto l = load(path);
  const Block b = pick_block(p_blocks(*l.table, p), bi);
  const auto lb = brauer_correspondent(*l.table, b);
  const auto& c = lb.block();
  std::ostringstream s;
  s << "B" << bi << ": " << block_line(b) << '\n';
  s << "N_G(P) order " << lb.normalizer.order() << ", correspondent block " << lb.index << ": " << block_line(c) << '\n';
  s << "degrees in N:";
  for (auto psi : c.characters) s << ' ' << lb.table->degree(psi);
  s << '\n';
  return emit(Json{{"group", l.name}, {"block", to_json(b)}, {"correspondent", correspondent_json(lb)}}, s.str(), kPass);
}

int cmd_tree(const std::string& path, Int p, std::size_t bi) {
  require_prime(p);
  const auto l = load(path);
  const auto& t = *l.table;
  const Block b = pick_block(p_blocks(t, p), bi);
  const auto tree = brauer_tree(t, b);
  Json autos = Json::array();
  std::ostringstream s;
  s << "vertices:";
  for (std::size_t v = 0; v < tree.vertices.size(); ++v) s << " " << v << "={" << join(tree.vertices[v]) << "}";
  s << "\nedges:";
  for (const auto& [u, w] : tree.edges) s << " " << u << "-" << w;
  s << "\nexceptional vertex " << tree.exceptional << ", multiplicity " << tree.multiplicity << '\n';
  s << "decomposition matrix:\n";
  const auto d = decomposition_matrix(tree);
  for (std::size_t i = 0; i < d.size(); ++i) {
    s << "  X." << tree.characters[i] << ":";
    for (int x : d[i]) s << ' ' << x;
    s << '\n';
  }
  s << "Galois automorphisms (r: fixed vertices):\n";
  for (Int r : full_galois_group(t.exponent()).units) {
    try {
      const auto a = galois_tree_automorphism(t, tree, r);
      autos.push_back({{"unit", r}, {"automorphism", to_json(a)}});
      s << "  " << r << ": {" << join(a.fixed_vertices) << "}\n";
    } catch (const BlockNotStable&) {
    }
  }
  Json j = to_json(tree);
  j["characters"] = tree.characters;
  j["galois"] = autos;
  return emit(j, s.str(), kPass);
}

int cmd_rouquier(const std::string& path, Int p, std::size_t bi, const std::string& convention,
                 const std::string& embedding_path) {
  require_prime(p);
  const auto l = load(path);
  const auto& t = *l.table;
  const Block b = pick_block(p_blocks(t, p), bi);
  const auto tree = brauer_tree(t, b);
  std::optional<PlanarEmbedding> emb;
  if (!embedding_path.empty())
    emb = embedding_from_json(parse_json(read_file(embedding_path), embedding_path), embedding_path);
  const auto conv = convention == "contains" ? RhoClass::kContainsV : RhoClass::kAwayFromV;
  const auto part = rouquier_partition(tree, conv, emb);
  Json j{{"tree", to_json(tree)}, {"partition", to_json(part)}};
  std::ostringstream s;
  s << "I0 image: {" << join(part.i0_image) << "}  I1 image: {" << join(part.i1_image) << "}\n";
  if (part.rho) {
    s << "I0: {" << join(part.i0) << "}  I1: {" << join(part.i1) << "}\nN' = ";
    for (std::size_t k = 0; k < part.n_prime.size(); ++k) {
      const auto& [rho, delta] = part.n_prime[k];
      s << (k ? " + " : "") << "A'" << rho << " (x) " << (delta ? std::to_string(*delta) : std::string("?")) << "B'";
    }
    s << '\n';
  }
  int code = kPass;
  try {
    const auto sh = shadow_isometry(t, b);
    j["shadow"] = to_json(sh);
    s << "shadow isometry (" << sh.strategy << "):";
    for (const auto& pr : sh.isometry.pairs) s << " " << pr.chi << "->" << (pr.sign > 0 ? "+" : "-") << pr.psi;
    s << "\nperfect: " << (sh.verdict.pass() ? "true" : "false") << "  equivariant under h_nk(" << sh.galois.modulus
      << "): " << (sh.equivariance.pass ? "true" : "false") << '\n';
  } catch (const NoShadowFound& e) {
    j["shadow"] = nullptr;
    s << "shadow isometry: none (" << e.what() << ")\n";
    code = kFail;
  }
  return emit(j, s.str(), code);
}

int cmd_navarro(const std::string& path, Int p, std::size_t bi, std::optional<Int> n_opt) {
  require_prime(p);
  const auto l = load(path);
  const auto& t = *l.table;
  const Block b = pick_block(p_blocks(t, p), bi);
  const auto lb = brauer_correspondent(t, b);
  const Int n = n_opt.value_or(lcm(t.group_order(), static_cast<Int>(lb.normalizer.order())));
  const auto rep = navarro_counts(t, b, *lb.table, lb.block(), n);
  std::ostringstream s;
  s << "Conjecture-B-consistent: " << (rep.consistent ? "true" : "false") << '\n';
  s << "n = " << n << "\n     r  fixed(B)  fixed(C)\n";
  for (const auto& row : rep.rows)
    s << pad(std::to_string(row.unit), 6) << pad(std::to_string(row.fixed_g), 10) << pad(std::to_string(row.fixed_h), 10)
      << '\n';
  return emit(to_json(rep), s.str(), rep.consistent ? kPass : kFail);
}

int cmd_isometry_verify(const std::string& gpath, const std::string& hpath, Int p, std::size_t bi,
                        std::optional<std::size_t> ci, const std::string& iso_path, std::optional<Int> n_opt,
                        bool require_equivariance) {
  require_prime(p);
  const auto iso = isometry_from_json(parse_json(read_file(iso_path), iso_path), iso_path);
  auto pr = make_pair(gpath, hpath, p, bi, ci, 0);
  const auto& tg = *pr.g.table;
  const auto& th = *pr.th;
  for (const auto& x : iso.pairs)
    if (x.chi >= tg.num_characters() || x.psi >= th.num_characters())
      throw ParseError(iso_path + ": character index out of range");
  const auto v = is_perfect_isometry(tg, th, iso, p);
  const Int n = n_opt.value_or(lcm(tg.group_order(), th.group_order()));
  const auto eq = equivariance_check(tg, th, iso, h_nk(n, p, pr.b.minimal_field_degree));
  std::ostringstream s;
  s << std::boolalpha << "perfect isometry: " << v.pass() << "  (bijection " << v.bijection << ", separation "
    << v.separation << ", integrality " << v.integrality << ")\n";
  for (std::size_t k = 0; k < v.violations.size() && k < 10; ++k)
    s << "  violation: " << v.violations[k].condition << " at classes (" << v.violations[k].g_class << ", "
      << v.violations[k].h_class << ")\n";
  s << "equivariant under h_nk(" << n << ", " << p << ", " << pr.b.minimal_field_degree << "): " << (eq.pass ? "true" : "false");
  if (eq.witness_unit) s << "  (witness r = " << *eq.witness_unit << ", chi = " << *eq.witness_chi << ")";
  s << '\n';
  const bool ok = v.pass() && (!require_equivariance || eq.pass);
  return emit(Json{{"verdict", to_json(v)}, {"equivariance", to_json(eq)}, {"modulus", n}}, s.str(), ok ? kPass : kFail);
}

int cmd_isometry_search(const std::string& gpath, const std::string& hpath, Int p, std::size_t bi,
                        std::optional<std::size_t> ci, std::size_t max_results, bool no_dedup, bool no_rationality) {
  require_prime(p);
  auto pr = make_pair(gpath, hpath, p, bi, ci, 0);
  SearchOptions opts;
  opts.max_results = max_results;
  opts.deduplicate = !no_dedup;
  opts.match_p_rationality = !no_rationality;
  const auto found = search_perfect_isometries(*pr.g.table, pr.b, *pr.th, pr.c, opts);
  Json arr = Json::array();
  std::ostringstream s;
  s << found.size() << " perfect isometries\n";
  for (const auto& iso : found) {
    arr.push_back(to_json(iso));
    for (const auto& x : iso.pairs) s << " " << x.chi << "->" << (x.sign > 0 ? "+" : "-") << x.psi;
    s << '\n';
  }
  return emit(Json{{"count", found.size()}, {"isometries", arr}}, s.str(), found.empty() ? kFail : kPass);
}

GaloisSubgroup pick_subgroup(const std::string& which, Int n, std::optional<Int> p, std::optional<Int> d) {
  if (which == "full") return full_galois_group(n);
  if (!p) throw Error("--p is required for subgroup " + which);
  require_prime(*p);
  if (which == "hn") return h_n(n, *p);
  if (which == "hnk") {
    if (!d) throw Error("--d is required for hnk");
    return h_nk(n, *p, *d);
  }
  if (which == "pfix") return p_fixing_subgroup(n, *p);
  throw Error("unknown subgroup " + which);
}

int cmd_galois_group(const std::string& which, Int n, std::optional<Int> p, std::optional<Int> d) {
  if (n < 1) throw Error("--n must be positive");
  const auto s = pick_subgroup(which, n, p, d);
  return emit(to_json(s), join_int(s.units) + "\n", kPass);
}

int cmd_galois_orbits(const std::string& path, const std::string& which, std::optional<Int> n_opt, std::optional<Int> p,
                      std::optional<Int> d) {
  const auto l = load(path);
  const auto& t = *l.table;
  const Int n = n_opt.value_or(t.exponent());
  if (n % t.exponent() != 0) throw ModulusIncompatible("--n must be a multiple of exp(G) = " + std::to_string(t.exponent()));
  const auto s = pick_subgroup(which, n, p, d);
  std::vector<bool> seen(t.num_characters());
  Json arr = Json::array();
  std::ostringstream out;
  for (std::size_t chi = 0; chi < t.num_characters(); ++chi) {
    if (seen[chi]) continue;
    std::vector<std::size_t> orbit;
    for (Int r : s.units) {
      const std::size_t x = t.galois_conjugate(chi, r);
      if (!seen[x]) {
        seen[x] = true;
        orbit.push_back(x);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    arr.push_back(orbit);
    out << "{" << join(orbit) << "}\n";
  }
  return emit(Json{{"subgroup", to_json(s)}, {"orbits", arr}}, out.str(), kPass);
}

int cmd_galois_prational(const std::string& path, Int p, std::size_t bi) {
  require_prime(p);
  const auto l = load(path);
  const Block b = pick_block(p_blocks(*l.table, p), bi);
  const auto r = p_rational_characters(*l.table, b);
  return emit(Json{{"block", b.characters}, {"p_rational", r}}, "{" + join(r) + "}\n", kPass);
}

AlgebraPtr load_algebra(const std::string& path) {
  return std::make_shared<const FDAlgebra>(algebra_from_json(parse_json(read_file(path), path), path));
}

int cmd_symalg_transfer(const std::string& apath, const std::string& bpath, const std::string& mpath) {
  const auto a = load_algebra(apath);
  const auto b = bpath.empty() ? a : load_algebra(bpath);
  const auto m = bimodule_from_json(parse_json(read_file(mpath), mpath), a, b, mpath);
  const Mat t = transfer_map(m);
  Json rows = Json::array();
  std::ostringstream s;
  s << "tr_M on a basis of Z(B):\n";
  for (const auto& z : b->center_basis()) {
    const Vec img = t * z;
    rows.push_back({{"z", to_json(z)}, {"image", to_json(img)}});
    s << "  " << to_json(z).dump() << " -> " << to_json(img).dump() << '\n';
  }
  return emit(Json{{"transfer", to_json(t)}, {"center", rows}}, s.str(), kPass);
}

int cmd_symalg_virtual_morita(const std::string& path) {
  const Json j = parse_json(read_file(path), path);
  VirtualBimoduleMatrix a;
  try {
    a = (j.is_object() ? j.at("matrix") : j).get<VirtualBimoduleMatrix>();
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  for (const auto& row : a)
    if (row.size() != (a.empty() ? 0 : a[0].size())) throw ParseError(path + ": ragged matrix");
  const auto r = is_virtual_morita(a);
  Json out{{"pass", r.pass}, {"left_identity", r.left_identity}, {"right_identity", r.right_identity}};
  std::ostringstream s;
  s << "virtual Morita: " << (r.pass ? "true" : "false") << '\n';
  if (r.pass) {
    out["bijection"] = r.bijection;
    out["signs"] = r.signs;
    for (std::size_t i = 0; i < r.bijection.size(); ++i)
      s << "  " << i << " -> " << (r.signs[i] > 0 ? "+" : "-") << r.bijection[i] << '\n';
  } else {
    if (!r.left_identity) s << "  a a^T != Id\n";
    if (!r.right_identity) s << "  a^T a != Id\n";
  }
  return emit(out, s.str(), r.pass ? kPass : kFail);
}

int cmd_symalg_center_iso(const std::string& gpath, Int p, std::size_t bi, const std::string& iso_path) {
  require_prime(p);
  auto pr = make_pair(gpath, "", p, bi, std::nullopt, 0);
  const auto& tg = *pr.g.table;
  const auto& th = *pr.th;
  SignedBijection iso({}, {}, {});
  std::string source;
  if (!iso_path.empty()) {
    iso = isometry_from_json(parse_json(read_file(iso_path), iso_path), iso_path);
    source = "file";
  } else if (pr.b.defect > 0 && is_cyclic(pr.b.defect_group)) {
    iso = shadow_isometry(tg, pr.b).isometry;
    source = "shadow";
  } else {
    SearchOptions o;
    o.max_results = 1;
    const auto found = search_perfect_isometries(tg, pr.b, th, pr.c, o);
    if (found.empty()) throw NormalizationUnsolvable("no perfect isometry found for this block");
    iso = found[0];
    source = "search";
  }
  const bool perfect = is_perfect_isometry(tg, th, iso, p).pass();
  const Int n = lcm(tg.exponent(), th.exponent());
  const auto sa = group_algebra_split(tg, pr.b.characters, n);
  const auto sb = group_algebra_split(th, pr.c.characters, n);
  VirtualBimoduleMatrix m(pr.b.size(), std::vector<Int>(pr.c.size(), 0));
  for (const auto& x : iso.pairs) {
    const auto i = std::find(pr.b.characters.begin(), pr.b.characters.end(), x.chi) - pr.b.characters.begin();
    const auto j = std::find(pr.c.characters.begin(), pr.c.characters.end(), x.psi) - pr.c.characters.begin();
    if (i >= static_cast<long>(m.size()) || j >= static_cast<long>(pr.c.size()))
      throw ParseError("isometry pairs characters outside the blocks");
    m[i][j] = x.sign;
  }
  const auto ci = center_isomorphism(sa, sb, m);

  // alpha(C^ e_B) in class sums of H.
  const auto& gg = tg.group();
  const auto& gh = th.group();
  Vec eb = sa.algebra->zero_vector();
  for (const auto& e : sa.idempotents)
    for (std::size_t i = 0; i < e.size(); ++i) eb[i] += e[i];
  Json mat = Json::array();
  bool integral = true;
  std::ostringstream s;
  s << "isometry (" << source << "):";
  for (const auto& x : iso.pairs) s << " " << x.chi << "->" << (x.sign > 0 ? "+" : "-") << x.psi;
  s << "\nperfect: " << (perfect ? "true" : "false") << "\nalpha on class sums (rows: classes of G, columns: classes of H):\n";
  for (std::size_t k = 0; k < gg.num_classes(); ++k) {
    Vec cs = sa.algebra->zero_vector();
    for (std::size_t i = 0; i < gg.order(); ++i)
      if (gg.class_of(i) == k) cs[i] = CycloNum(1L, n);
    const Vec img = ci.alpha_full * sa.algebra->mul(cs, eb);
    Json row = Json::array();
    s << "  C" << k << ":";
    for (std::size_t d = 0; d < gh.num_classes(); ++d) {
      const CycloNum& x = img[gh.classes()[d].representative];
      integral = integral && is_p_integral(x, p);
      row.push_back(to_json(x));
      s << ' ' << x.to_string();
    }
    s << '\n';
    mat.push_back(row);
  }
  s << p << "-integral: " << (integral ? "true" : "false") << '\n';
  Json out{{"isometry", to_json(iso)}, {"source", source}, {"perfect", perfect}, {"bijection", ci.bijection},
           {"signs", ci.signs}, {"alpha_class_sums", mat}, {"p_integral", integral}};
  return emit(out, s.str(), perfect && integral ? kPass : kFail);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mbl: p-blocks, perfect isometries, Brauer trees and transfer maps"};
  app.require_subcommand(1);
  app.add_flag("--json", g_opts.json, "JSON output");
  app.add_flag("--no-cache", g_opts.no_cache, "Do not read or write the character-table cache");

  std::string group, group_h, iso_path, embedding, convention = "away", alg_a, alg_b, bimod, matrix;
  Int prime = 0;
  std::size_t block = 0, max_results = 0;
  std::optional<std::size_t> block_h;
  std::optional<Int> field_degree, modulus, gp, gd;
  Int gn = 0;
  std::string subgroup = "full";
  bool no_dedup = false, no_rationality = false, require_eq = false;

  auto add_group = [&](CLI::App* c) { c->add_option("--group", group, "Group file (JSON)")->required()->check(CLI::ExistingFile); };
  auto add_prime = [&](CLI::App* c) { c->add_option("--prime,-p", prime, "The prime p")->required(); };
  auto add_block = [&](CLI::App* c) { c->add_option("--block", block, "Block index (0 = principal)"); };

  int code = kPass;
  auto* chartab = app.add_subcommand("chartab", "Character table");
  add_group(chartab);
  chartab->callback([&] { code = cmd_chartab(group); });

  auto* blocks = app.add_subcommand("blocks", "p-blocks with defect data and Brauer correspondents");
  add_group(blocks);
  add_prime(blocks);
  blocks->add_option("--field-degree", field_degree, "Also compare Frobenius orbits with blocks over F_{p^d}");
  blocks->callback([&] { code = cmd_blocks(group, prime, field_degree); });

  auto* corr = app.add_subcommand("correspondent", "Brauer correspondent in N_G(P)");
  add_group(corr);
  add_prime(corr);
  add_block(corr);
  corr->callback([&] { code = cmd_correspondent(group, prime, block); });

  auto* tree = app.add_subcommand("tree", "Brauer tree of a cyclic-defect block");
  add_group(tree);
  add_prime(tree);
  add_block(tree);
  tree->callback([&] { code = cmd_tree(group, prime, block); });

  auto* rouq = app.add_subcommand("rouquier", "Rouquier edge partition and the verified character shadow");
  add_group(rouq);
  add_prime(rouq);
  add_block(rouq);
  rouq->add_option("--convention", convention, "Which bipartition class carries rho: away|contains")
      ->check(CLI::IsMember({"away", "contains"}));
  rouq->add_option("--embedding", embedding, "Planar embedding file")->check(CLI::ExistingFile);
  rouq->callback([&] { code = cmd_rouquier(group, prime, block, convention, embedding); });

  auto* nav = app.add_subcommand("navarro", "Height-zero Galois fixed counts, B against its correspondent");
  add_group(nav);
  add_prime(nav);
  add_block(nav);
  nav->add_option("--n", modulus, "Modulus (default lcm(|G|, |N|))");
  nav->callback([&] { code = cmd_navarro(group, prime, block, modulus); });

  auto* iso = app.add_subcommand("isometry", "Perfect isometries");
  iso->require_subcommand(1);
  auto* verify = iso->add_subcommand("verify", "Check a signed bijection");
  auto* search = iso->add_subcommand("search", "Search for perfect isometries");
  for (auto* c : {verify, search}) {
    add_group(c);
    add_prime(c);
    add_block(c);
    c->add_option("--group-h", group_h, "Second group file (default: N_G(P))")->check(CLI::ExistingFile);
    c->add_option("--block-h", block_h, "Block of H (default: the correspondent, or block 0)");
  }
  verify->add_option("--isometry", iso_path, "Isometry file")->required()->check(CLI::ExistingFile);
  verify->add_option("--n", modulus, "Galois modulus (default lcm(|G|, |H|))");
  verify->add_flag("--require-equivariance", require_eq, "Fail unless also h_nk-equivariant");
  verify->callback([&] { code = cmd_isometry_verify(group, group_h, prime, block, block_h, iso_path, modulus, require_eq); });
  search->add_option("--max", max_results, "Stop after this many (0 = all)");
  search->add_flag("--no-dedup", no_dedup, "Report every member of equal-restriction families");
  search->add_flag("--no-rationality", no_rationality, "Do not prune by p-rationality");
  search->callback([&] { code = cmd_isometry_search(group, group_h, prime, block, block_h, max_results, no_dedup, no_rationality); });

  auto* gal = app.add_subcommand("galois", "Galois subgroups and actions on characters");
  gal->require_subcommand(1);
  auto* hn = gal->add_subcommand("hn", "H_n for the prime p");
  auto* hnk = gal->add_subcommand("hnk", "H_{n,k} for p and d");
  for (auto* c : {hn, hnk}) {
    c->add_option("--n", gn, "Modulus")->required();
    c->add_option("--p", gp, "The prime p")->required();
  }
  hnk->add_option("--d", gd, "Field degree d")->required();
  hn->callback([&] { code = cmd_galois_group("hn", gn, gp, gd); });
  hnk->callback([&] { code = cmd_galois_group("hnk", gn, gp, gd); });
  auto* orbits = gal->add_subcommand("orbits", "Orbits on Irr(G)");
  add_group(orbits);
  orbits->add_option("--subgroup", subgroup, "full|hn|hnk|pfix")->check(CLI::IsMember({"full", "hn", "hnk", "pfix"}));
  orbits->add_option("--n", modulus, "Modulus (default exp(G))");
  orbits->add_option("--p", gp, "The prime p");
  orbits->add_option("--d", gd, "Field degree d");
  orbits->callback([&] { code = cmd_galois_orbits(group, subgroup, modulus, gp, gd); });
  auto* prat = gal->add_subcommand("prational", "p-rational characters of a block");
  add_group(prat);
  add_prime(prat);
  add_block(prat);
  prat->callback([&] { code = cmd_galois_prational(group, prime, block); });

  auto* sym = app.add_subcommand("symalg", "Symmetric algebras");
  sym->require_subcommand(1);
  auto* tr = sym->add_subcommand("transfer", "Degree-0 transfer map of a bimodule");
  tr->add_option("--left", alg_a, "Algebra A file")->required()->check(CLI::ExistingFile);
  tr->add_option("--right", alg_b, "Algebra B file (default A)")->check(CLI::ExistingFile);
  tr->add_option("--bimodule", bimod, "Bimodule file")->required()->check(CLI::ExistingFile);
  tr->callback([&] { code = cmd_symalg_transfer(alg_a, alg_b, bimod); });
  auto* vm = sym->add_subcommand("virtual-morita", "Signed-permutation test of a virtual bimodule matrix");
  vm->add_option("--matrix", matrix, "Matrix file")->required()->check(CLI::ExistingFile);
  vm->callback([&] { code = cmd_symalg_virtual_morita(matrix); });
  auto* ci = sym->add_subcommand("center-iso", "Center isomorphism of a block and its correspondent");
  add_group(ci);
  add_prime(ci);
  add_block(ci);
  ci->add_option("--isometry", iso_path, "Isometry to the correspondent (default: shadow or search)")
      ->check(CLI::ExistingFile);
  ci->callback([&] { code = cmd_symalg_center_iso(group, prime, block, iso_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
