#include "mbl/isometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mbl/errors.hpp"

namespace mbl {

SignedBijection::SignedBijection(std::vector<std::size_t> src, std::vector<std::size_t> tgt, std::vector<Pairing> ps)
    : source(std::move(src)), target(std::move(tgt)), pairs(std::move(ps)) {
  std::sort(source.begin(), source.end());
  std::sort(target.begin(), target.end());
  std::sort(pairs.begin(), pairs.end(), [](const Pairing& a, const Pairing& b) { return a.chi < b.chi; });
}

const Pairing* SignedBijection::find(std::size_t chi) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), chi, [](const Pairing& a, std::size_t c) { return a.chi < c; });
  return it != pairs.end() && it->chi == chi ? &*it : nullptr;
}

bool SignedBijection::is_bijection() const {
  if (pairs.size() != source.size() || source.size() != target.size()) return false;
  std::vector<std::size_t> chis, psis;
  for (const auto& pr : pairs) {
    if (pr.sign != 1 && pr.sign != -1) return false;
    chis.push_back(pr.chi);
    psis.push_back(pr.psi);
  }
  std::sort(chis.begin(), chis.end());
  std::sort(psis.begin(), psis.end());
  return chis == source && psis == target;
}

SignedBijection identity_bijection(const Block& b) {
  std::vector<Pairing> ps;
  for (auto chi : b.characters) ps.push_back({chi, chi, 1});
  return SignedBijection(b.characters, b.characters, ps);
}

Bicharacter mu_bicharacter(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso) {
  const Int n = lcm(tg.exponent(), th.exponent());
  Bicharacter mu(tg.num_classes(), std::vector<CycloNum>(th.num_classes(), CycloNum(0L, n)));
  for (const auto& pr : iso.pairs)
    for (std::size_t a = 0; a < tg.num_classes(); ++a) {
      const CycloNum x = tg.value(pr.chi, a) * Rational(pr.sign);
      for (std::size_t b = 0; b < th.num_classes(); ++b) mu[a][b] += x * th.value(pr.psi, b);
    }
  return mu;
}

IsometryVerdict is_perfect_isometry(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso, Int p) {
  IsometryVerdict v;
  v.bijection = iso.is_bijection();
  const auto mu = mu_bicharacter(tg, th, iso);
  const auto& gc = tg.group().classes();
  const auto& hc = th.group().classes();
  for (std::size_t a = 0; a < gc.size(); ++a)
    for (std::size_t b = 0; b < hc.size(); ++b) {
      const CycloNum& x = mu[a][b];
      if (gc[a].is_p_regular(p) != hc[b].is_p_regular(p) && !x.is_zero()) {
        v.separation = false;
        v.violations.push_back({a, b, "separation"});
      }
      if (!is_p_integral(x / Rational(tg.centralizer_order(a)), p)) {
        v.integrality = false;
        v.violations.push_back({a, b, "integrality-G"});
      }
      if (!is_p_integral(x / Rational(th.centralizer_order(b)), p)) {
        v.integrality = false;
        v.violations.push_back({a, b, "integrality-H"});
      }
    }
  return v;
}

EquivarianceVerdict equivariance_check(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso,
                                       const GaloisSubgroup& s) {
  const Int n = s.modulus;
  if (n % tg.exponent() != 0 || n % th.exponent() != 0)
    throw ModulusIncompatible("Galois modulus " + std::to_string(n) + " is not a multiple of exp(G) and exp(H)");
  EquivarianceVerdict v;
  for (Int r : s.units) {
    if (n == 1) break;
    for (const auto& pr : iso.pairs) {
      const std::size_t schi = tg.galois_conjugate(pr.chi, r);
      const std::size_t spsi = th.galois_conjugate(pr.psi, r);
      const Pairing* img = iso.find(schi);
      auto fail = [&] {
        if (!v.witness_unit) {
          v.witness_unit = r;
          v.witness_chi = pr.chi;
        }
      };
      if (img == nullptr) {
        v.block_stable = false;
        v.pass = false;
        fail();
        continue;
      }
      if (img->psi != spsi) {
        v.pass = false;
        fail();
      }
      if (img->sign != pr.sign) v.signs_equivariant = false;
    }
  }
  return v;
}

SignedBijection galois_twist(const CharacterTable& tg, const CharacterTable& th, const SignedBijection& iso, Int r,
                             Int modulus) {
  if (modulus % tg.exponent() != 0 || modulus % th.exponent() != 0)
    throw ModulusIncompatible("twist modulus is not a multiple of exp(G) and exp(H)");
  std::vector<Pairing> ps;
  std::vector<std::size_t> src, tgt;
  for (const auto& pr : iso.pairs)
    ps.push_back({tg.galois_conjugate(pr.chi, r), th.galois_conjugate(pr.psi, r), pr.sign});
  for (auto chi : iso.source) src.push_back(tg.galois_conjugate(chi, r));
  for (auto psi : iso.target) tgt.push_back(th.galois_conjugate(psi, r));
  return SignedBijection(src, tgt, ps);
}

std::vector<std::size_t> p_rational_characters(const CharacterTable& t, const Block& b) {
  const GaloisSubgroup s = p_fixing_subgroup(t.exponent(), b.p);
  std::vector<std::size_t> out;
  for (auto chi : b.characters) {
    bool fixed = true;
    for (Int r : s.units)
      if (t.exponent() > 1 && t.galois_conjugate(chi, r) != chi) fixed = false;
    if (fixed) out.push_back(chi);
  }
  return out;
}

NavarroReport navarro_counts(const CharacterTable& tg, const Block& b, const CharacterTable& th, const Block& c, Int n) {
  if (n % tg.exponent() != 0 || n % th.exponent() != 0)
    throw ModulusIncompatible("modulus " + std::to_string(n) + " is not a multiple of exp(G) and exp(H)");
  if (b.p != c.p || b.defect != c.defect) throw Error("blocks are not in Brauer correspondence");
  NavarroReport rep;
  rep.modulus = n;
  const auto hz_b = b.height_zero(), hz_c = c.height_zero();
  for (Int r : h_n(n, b.p).units) {
    NavarroRow row{r, 0, 0};
    for (auto chi : hz_b) row.fixed_g += n == 1 || tg.galois_conjugate(chi, r) == chi;
    for (auto psi : hz_c) row.fixed_h += n == 1 || th.galois_conjugate(psi, r) == psi;
    rep.consistent = rep.consistent && row.fixed_g == row.fixed_h;
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

Int search_prime(Int n) {
  for (Int ell = n * ((1000 / n) + 1) + 1;; ell += n)
    if (is_prime(ell)) return ell;
}

}  // namespace

std::vector<SignedBijection> search_perfect_isometries(const CharacterTable& tg, const Block& b,
                                                       const CharacterTable& th, const Block& c,
                                                       const SearchOptions& opts) {
  std::vector<SignedBijection> results;
  if (b.size() != c.size() || b.p != c.p) return results;
  const Int p = b.p;
  const std::size_t k = b.size();
  const int shift = valuation(th.group_order(), p) - valuation(tg.group_order(), p);

  const auto rat_g = p_rational_characters(tg, b), rat_h = p_rational_characters(th, c);
  auto is_in = [](const std::vector<std::size_t>& v, std::size_t x) { return std::find(v.begin(), v.end(), x) != v.end(); };

  std::vector<std::vector<std::size_t>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t chi = b.characters[i];
    for (auto psi : c.characters) {
      if (valuation(th.degree(psi), p) - valuation(tg.degree(chi), p) != shift) continue;
      if (opts.match_p_rationality && is_in(rat_g, chi) != is_in(rat_h, psi)) continue;
      candidates[i].push_back(psi);
    }
    if (candidates[i].empty()) return results;
  }

  // Class pairs where separation demands mu = 0, and values mod ell.
  const Int n = lcm(tg.exponent(), th.exponent());
  const Int ell = search_prime(n);
  const Int z = pow_mod(primitive_root(ell), (ell - 1) / n, ell);
  std::vector<std::pair<std::size_t, std::size_t>> sep;
  for (std::size_t a = 0; a < tg.num_classes(); ++a)
    for (std::size_t bb = 0; bb < th.num_classes(); ++bb)
      if (tg.group().classes()[a].is_p_regular(p) != th.group().classes()[bb].is_p_regular(p)) sep.emplace_back(a, bb);
  std::map<std::size_t, std::vector<Int>> gv, hv;
  for (auto chi : b.characters)
    for (auto [a, bb] : sep) {
      (void)bb;
      gv[chi].push_back(evaluate_mod(tg.value(chi, a).lifted(n), ell, z));
    }
  for (auto psi : c.characters)
    for (auto [a, bb] : sep) {
      (void)a;
      hv[psi].push_back(evaluate_mod(th.value(psi, bb).lifted(n), ell, z));
    }

  // Families of B with equal p-regular restriction, for deduplication.
  std::vector<std::size_t> family(k);
  for (std::size_t i = 0; i < k; ++i) {
    family[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      bool same = tg.degree(b.characters[i]) == tg.degree(b.characters[j]);
      for (std::size_t a = 0; a < tg.num_classes() && same; ++a)
        if (tg.group().classes()[a].is_p_regular(p)) same = tg.value(b.characters[i], a) == tg.value(b.characters[j], a);
      if (same) {
        family[i] = family[j];
        break;
      }
    }
  }
  std::set<std::vector<std::vector<std::pair<std::size_t, int>>>> seen_keys;

  std::vector<Pairing> current;
  std::vector<bool> used_psi(th.num_characters());
  std::vector<Int> acc(sep.size(), 0);
  bool done = false;

  auto leaf = [&] {
    for (Int x : acc)
      if (x != 0) return;
    SignedBijection iso(b.characters, c.characters, current);
    if (!is_perfect_isometry(tg, th, iso, p).pass()) return;
    if (opts.deduplicate) {
      std::vector<std::vector<std::pair<std::size_t, int>>> key(k);
      for (std::size_t i = 0; i < k; ++i) key[family[i]].emplace_back(current[i].psi, current[i].sign);
      for (auto& v : key) std::sort(v.begin(), v.end());
      if (!seen_keys.insert(key).second) return;
    }
    results.push_back(std::move(iso));
    if (opts.max_results != 0 && results.size() >= opts.max_results) done = true;
  };

  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (done) return;
    if (i == k) {
      leaf();
      return;
    }
    const std::size_t chi = b.characters[i];
    for (auto psi : candidates[i]) {
      if (used_psi[psi]) continue;
      for (int sign : {1, -1}) {
        used_psi[psi] = true;
        current.push_back({chi, psi, sign});
        const auto& g = gv[chi];
        const auto& h = hv[psi];
        for (std::size_t s = 0; s < sep.size(); ++s) acc[s] = mod(acc[s] + sign * (g[s] * h[s] % ell), ell);
        self(self, i + 1);
        for (std::size_t s = 0; s < sep.size(); ++s) acc[s] = mod(acc[s] - sign * (g[s] * h[s] % ell), ell);
        current.pop_back();
        used_psi[psi] = false;
        if (done) return;
      }
    }
  };
  dfs(dfs, 0);
  return results;
}

}  // namespace mbl
