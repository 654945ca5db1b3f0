#include "mbl/blocks.hpp"

#include <algorithm>
#include <numeric>

#include "mbl/errors.hpp"

namespace mbl {

namespace {

Int field_degree_of(const std::vector<FFElem>& v) {
  Int d = 1;
  for (const auto& x : v) d = std::lcm(d, x.field_degree());
  return d;
}

bool commutes_with_all(const Perm& x, const std::vector<Perm>& gens) {
  for (const auto& s : gens)
    if (perm::mul(x, s) != perm::mul(s, x)) return false;
  return true;
}

std::shared_ptr<const ReductionMap> map_for(const CharacterTable& t, Int p, Int conductor) {
  const Int n = conductor == 0 ? t.exponent() : conductor;
  if (n % t.exponent() != 0) throw ConductorMismatch("reduction conductor must be a multiple of exp(G)");
  return reduction_map(n, p);
}

// Crt solution of r = a mod m1, r = b mod m2 (coprime moduli).
Int crt(Int a, Int m1, Int b, Int m2) {
  Int u, v;
  extended_gcd(m1, m2, u, v);
  const Int m = m1 * m2;
  return mod(mod(a, m) + mod(mod(b - a, m) * mod(u, m) % m * m1, m), m);
}

}  // namespace

bool Block::contains(std::size_t chi) const {
  return std::binary_search(characters.begin(), characters.end(), chi);
}

std::vector<std::size_t> Block::height_zero() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < characters.size(); ++i)
    if (heights[i] == 0) out.push_back(characters[i]);
  return out;
}

CycloNum central_character_value(const CharacterTable& t, std::size_t chi, std::size_t c) {
  return t.value(chi, c) * make_rational(t.class_size(c), t.degree(chi));
}

CycloNum idempotent_coefficient(const CharacterTable& t, const std::vector<std::size_t>& chars, std::size_t c) {
  CycloNum s(0L, t.exponent());
  const std::size_t inv = t.group().inverse_class(c);
  for (std::size_t chi : chars) s += t.value(chi, inv) * Rational(t.degree(chi));
  return s / Rational(t.group_order());
}

std::vector<Block> p_blocks(const CharacterTable& t, Int p, Int conductor) {
  if (!is_prime(p)) throw Error("p must be prime");
  const auto map = map_for(t, p, conductor);
  const std::size_t r = t.num_classes();
  const PermGroup& g = t.group();

  std::vector<std::vector<FFElem>> lambdas;
  std::vector<Block> blocks;
  for (std::size_t chi = 0; chi < t.num_characters(); ++chi) {
    std::vector<FFElem> lam;
    try {
      for (std::size_t c = 0; c < r; ++c) lam.push_back((*map)(central_character_value(t, chi, c)));
    } catch (const NotPIntegral& e) {
      throw InternalError(std::string("central character not integral: ") + e.what());
    }
    std::size_t k = 0;
    while (k < lambdas.size() && lambdas[k] != lam) ++k;
    if (k == lambdas.size()) {
      lambdas.push_back(lam);
      Block b;
      b.p = p;
      b.conductor = map->conductor();
      b.central_character = lam;
      blocks.push_back(std::move(b));
    }
    blocks[k].characters.push_back(chi);
  }

  const int a = valuation(t.group_order(), p);
  for (auto& b : blocks) {
    int min_v = a;
    for (std::size_t chi : b.characters) min_v = std::min(min_v, valuation(t.degree(chi), p));
    b.defect = a - min_v;
    for (std::size_t chi : b.characters) b.heights.push_back(valuation(t.degree(chi), p) - min_v);

    for (std::size_t c = 0; c < r; ++c) b.idempotent.push_back((*map)(idempotent_coefficient(t, b.characters, c)));
    b.minimal_field_degree = field_degree_of(b.idempotent);

    int best = a + 1;
    for (std::size_t c = 0; c < r; ++c) {
      if (!g.classes()[c].is_p_regular(p) || b.central_character[c].is_zero()) continue;
      const int v = valuation(g.centralizer_order(c), p);
      if (v < best) {
        best = v;
        b.defect_class = c;
      }
    }
    if (best != b.defect) throw InternalError("defect class does not realise the block defect");
    b.defect_group = sylow_subgroup(centralizer(g, g.class_representative(b.defect_class)), p);
  }
  return blocks;
}

std::size_t block_of(const std::vector<Block>& blocks, std::size_t chi) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].contains(chi)) return i;
  throw NotMember("character index " + std::to_string(chi) + " lies in no block");
}

bool BrauerImage::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const FFElem& x) { return x.is_zero(); });
}

BrauerImage brauer_image(const CharacterTable& t, const Block& b, const PermGroup& p_subgroup) {
  const PermGroup& g = t.group();
  BrauerImage out{centralizer(g, p_subgroup), {}};
  for (std::size_t c = 0; c < out.centralizer.num_classes(); ++c)
    out.coefficients.push_back(b.idempotent[g.class_of_perm(out.centralizer.class_representative(c))]);
  return out;
}

bool verify_defect_group(const CharacterTable& t, const Block& b, const PermGroup& p_subgroup) {
  const PermGroup& g = t.group();
  if (brauer_image(t, b, p_subgroup).is_zero()) return false;
  const PermGroup n = normalizer(g, p_subgroup);
  for (const auto& x : n.elements()) {
    if (p_subgroup.contains(x) || !p_subgroup.contains(perm::power(x, b.p))) continue;
    std::vector<Perm> gens = p_subgroup.generators();
    gens.push_back(x);
    for (std::size_t i = 0; i < g.order(); ++i)
      if (commutes_with_all(g.element(i), gens) && !b.idempotent[g.class_of(i)].is_zero()) return false;
  }
  return true;
}

Int minimal_field_degree(const Block& b) { return field_degree_of(b.idempotent); }

std::size_t brauer_correspondent(const CharacterTable& tg, const Block& b, const PermGroup& p_subgroup,
                                 const CharacterTable& tn, const std::vector<Block>& blocks_n) {
  const PermGroup& g = tg.group();
  const PermGroup& n = tn.group();
  // N-classes inside C_G(P), with their fusion into G.
  std::vector<std::pair<std::size_t, std::size_t>> fused;
  for (std::size_t d = 0; d < n.num_classes(); ++d) {
    const Perm& x = n.class_representative(d);
    if (commutes_with_all(x, p_subgroup.generators())) fused.emplace_back(d, g.class_of_perm(x));
  }
  std::vector<std::size_t> matches;
  for (std::size_t k = 0; k < blocks_n.size(); ++k) {
    const Block& c = blocks_n[k];
    if (c.conductor != b.conductor) throw ConductorMismatch("blocks reduced at different conductors");
    bool ok = true;
    for (std::size_t cls = 0; cls < g.num_classes() && ok; ++cls) {
      FFElem s = zero_like(b.central_character[cls]);
      for (const auto& [d, gc] : fused)
        if (gc == cls) s += c.central_character[d];
      ok = s == b.central_character[cls];
    }
    if (ok) matches.push_back(k);
  }
  if (matches.empty()) throw NoCorrespondent("no block of N_G(P) matches");
  if (matches.size() > 1) throw MultipleCorrespondents("several blocks of N_G(P) match");
  return matches[0];
}

LocalBlock brauer_correspondent(const CharacterTable& tg, const Block& b) {
  LocalBlock out{normalizer(tg.group(), b.defect_group), nullptr, {}, 0};
  out.table = std::make_shared<const CharacterTable>(character_table(out.normalizer));
  out.blocks = p_blocks(*out.table, b.p, b.conductor);
  out.index = brauer_correspondent(tg, b, b.defect_group, *out.table, out.blocks);
  return out;
}

std::vector<FrobeniusOrbit> frobenius_block_orbits(const CharacterTable& t, const std::vector<Block>& blocks, Int d) {
  if (blocks.empty()) return {};
  const Int p = blocks[0].p;
  const Int n = t.exponent();
  const Int np = p_prime_part(n, p);
  const Int r = crt(pow_mod(p, d, np), np, 1, n / np);
  std::vector<bool> seen(blocks.size());
  std::vector<FrobeniusOrbit> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (seen[i]) continue;
    FrobeniusOrbit orb;
    for (std::size_t k = i; !seen[k];) {
      seen[k] = true;
      orb.blocks.push_back(k);
      k = block_of(blocks, t.galois_conjugate(blocks[k].characters[0], r));
    }
    std::sort(orb.blocks.begin(), orb.blocks.end());
    orb.idempotent = blocks[orb.blocks[0]].idempotent;
    for (std::size_t j = 1; j < orb.blocks.size(); ++j)
      for (std::size_t c = 0; c < orb.idempotent.size(); ++c) orb.idempotent[c] += blocks[orb.blocks[j]].idempotent[c];
    orb.field_degree = field_degree_of(orb.idempotent);
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<FFElem> class_algebra_product(const std::vector<std::vector<std::vector<Int>>>& c,
                                          const std::vector<FFElem>& a, const std::vector<FFElem>& b) {
  const std::size_t r = a.size();
  std::vector<Int> coef(r);
  std::vector<FFElem> out(r, zero_like(a[0]));
  for (std::size_t j = 0; j < r; ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t k = 0; k < r; ++k) {
      if (b[k].is_zero()) continue;
      const FFElem ab = a[j] * b[k];
      for (std::size_t l = 0; l < r; ++l)
        if (c[j][k][l] != 0) out[l] += ab * FFElem::from_int(ab.field(), mod(c[j][k][l], ab.prime()));
    }
  }
  return out;
}

std::vector<std::vector<FFElem>> direct_block_idempotents(const PermGroup& g, Int p, Int d, Int conductor) {
  const Int n = conductor == 0 ? g.exponent() : conductor;
  if (n % g.exponent() != 0) throw ConductorMismatch("reduction conductor must be a multiple of exp(G)");
  const auto field = reduction_map(n, p)->field();
  const Int m = field->degree();
  const Int gd = std::gcd(d, m);
  Int q = 1;
  for (Int i = 0; i < gd; ++i) q *= p;

  const auto c = class_structure_constants(g);
  const std::size_t r = g.num_classes();

  // Class algebra over F_p.
  auto mul_p = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
    std::vector<Int> z(r);
    for (std::size_t j = 0; j < r; ++j) {
      if (x[j] == 0) continue;
      for (std::size_t k = 0; k < r; ++k) {
        if (y[k] == 0) continue;
        const Int xy = x[j] * y[k] % p;
        for (std::size_t l = 0; l < r; ++l) z[l] = (z[l] + xy * (c[j][k][l] % p)) % p;
      }
    }
    return z;
  };
  auto pow_p = [&](std::vector<Int> x, Int e) {
    std::vector<Int> acc(r);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = mul_p(acc, x);
      x = mul_p(x, x);
      e >>= 1;
    }
    return acc;
  };

  // x -> x^q - x is F_q-linear on Z(F_q G) with matrix over F_p; its kernel is
  // spanned by the F_q-block idempotents.
  std::vector<std::vector<Int>> mat(r, std::vector<Int>(r));
  for (std::size_t col = 0; col < r; ++col) {
    std::vector<Int> e(r);
    e[col] = 1;
    const auto img = pow_p(e, q);
    for (std::size_t row = 0; row < r; ++row) mat[row][col] = mod(img[row] - e[row], p);
  }
  const auto kernel = nullspace_mod(mat, r, p);

  auto to_ff = [&](const std::vector<Int>& v) {
    std::vector<FFElem> out;
    for (Int x : v) out.push_back(FFElem::from_int(field, x));
    return out;
  };

  // Elements of F_q inside the big field: kernel of Frob^g - 1 on coordinates.
  std::vector<FFElem> fq;
  {
    std::vector<std::vector<Int>> fm(static_cast<std::size_t>(m), std::vector<Int>(static_cast<std::size_t>(m)));
    for (Int i = 0; i < m; ++i) {
      std::vector<Int> basis(static_cast<std::size_t>(m));
      basis[static_cast<std::size_t>(i)] = 1;
      const FFElem b(field, basis);
      const FFElem img = b.frobenius(gd) - b;
      for (Int k = 0; k < m; ++k) fm[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = img.coords()[static_cast<std::size_t>(k)];
    }
    const auto sub = nullspace_mod(fm, static_cast<std::size_t>(m), p);
    std::vector<Int> digits(sub.size());
    for (;;) {
      std::vector<Int> v(static_cast<std::size_t>(m));
      for (std::size_t s = 0; s < sub.size(); ++s)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] + digits[s] * sub[s][k]) % p;
      fq.emplace_back(field, v);
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }

  const FFElem zero = FFElem::from_int(field, 0);
  std::vector<FFElem> one(r, zero);
  one[0] = FFElem::from_int(field, 1);
  auto pow_ff = [&](std::vector<FFElem> x, Int e) {
    std::vector<FFElem> acc = one;
    while (e > 0) {
      if (e & 1) acc = class_algebra_product(c, acc, x);
      x = class_algebra_product(c, x, x);
      e >>= 1;
    }
    return acc;
  };
  auto is_zero_vec = [](const std::vector<FFElem>& v) {
    return std::all_of(v.begin(), v.end(), [](const FFElem& x) { return x.is_zero(); });
  };

  std::vector<std::vector<FFElem>> idems{one};
  for (const auto& kv : kernel) {
    const auto x = to_ff(kv);
    std::vector<std::vector<FFElem>> next;
    for (const auto& e : idems) {
      for (const auto& lambda : fq) {
        auto shifted = x;
        shifted[0] -= lambda;
        const auto pw = pow_ff(shifted, q - 1);
        auto proj = one;
        for (std::size_t i = 0; i < r; ++i) proj[i] -= pw[i];
        auto f = class_algebra_product(c, e, proj);
        if (!is_zero_vec(f)) next.push_back(std::move(f));
      }
    }
    idems = std::move(next);
  }
  if (idems.size() != kernel.size()) throw InternalError("Berlekamp splitting did not reach primitive idempotents");
  std::sort(idems.begin(), idems.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return idems;
}

}  // namespace mbl
