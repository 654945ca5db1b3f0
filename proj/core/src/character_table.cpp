#include "mbl/character_table.hpp"

#include <algorithm>
#include <numeric>

#include "mbl/errors.hpp"

namespace mbl {

namespace {

using VecL = std::vector<Int>;

Int isqrt(Int n) {
  Int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

Int dixon_prime(Int group_order, Int exponent) {
  for (Int ell = exponent + 1;; ell += exponent)
    if (ell * ell > 4 * group_order && is_prime(ell)) return ell;
}

std::vector<std::vector<std::vector<Int>>> class_structure_constants(const PermGroup& g) {
  const std::size_t r = g.num_classes();
  std::vector<std::vector<std::vector<Int>>> c(r, std::vector<std::vector<Int>>(r, std::vector<Int>(r)));
  for (std::size_t l = 0; l < r; ++l) {
    const Perm& gl = g.class_representative(l);
    for (std::size_t i = 0; i < g.order(); ++i) {
      const Perm& x = g.element(i);
      const std::size_t k = g.class_of_perm(perm::mul(perm::inverse(x), gl));
      ++c[g.class_of(i)][k][l];
    }
  }
  return c;
}

CharacterTable::CharacterTable(PermGroup group, std::vector<std::vector<CycloNum>> values)
    : group_(std::move(group)), values_(std::move(values)) {
  for (const auto& row : values_) {
    if (row.size() != group_.num_classes()) throw Error("character row has wrong length");
    const CycloNum& d = row[0];
    if (!d.is_rational() || d.rational_value().get_den() != 1) throw Error("degree is not an integer");
    degrees_.push_back(d.rational_value().get_num().get_si());
  }
}

std::size_t CharacterTable::find_row(const std::vector<CycloNum>& values) const {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] == values) return i;
  return npos;
}

std::size_t CharacterTable::galois_conjugate(std::size_t chi, Int r) const {
  const GaloisAut sigma{exponent(), mod(r, exponent())};
  std::vector<CycloNum> row;
  for (const auto& x : values_[chi]) row.push_back(galois_apply(sigma, x));
  const std::size_t i = find_row(row);
  if (i == npos) throw InternalError("Galois conjugate is not a row of the table");
  return i;
}

CycloNum CharacterTable::inner_product(const std::vector<CycloNum>& a, const std::vector<CycloNum>& b) const {
  CycloNum s(0L, exponent());
  for (std::size_t c = 0; c < num_classes(); ++c)
    s += a[c] * b[group_.inverse_class(c)] * Rational(class_size(c));
  return s / Rational(group_order());
}

CharacterTable character_table(const PermGroup& g) {
  const std::size_t r = g.num_classes();
  const Int order = static_cast<Int>(g.order());
  const Int e = g.exponent();
  const Int ell = dixon_prime(order, e);
  const auto c = class_structure_constants(g);

  // Common eigenvectors of the matrices M_j[k][l] = c[j][k][l].
  std::vector<std::vector<VecL>> spaces;
  {
    std::vector<VecL> full;
    for (std::size_t i = 0; i < r; ++i) {
      VecL v(r);
      v[i] = 1;
      full.push_back(v);
    }
    spaces.push_back(std::move(full));
  }
  for (std::size_t j = 1; j < r; ++j) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; })) break;
    std::vector<std::vector<VecL>> next;
    for (auto& basis : spaces) {
      if (basis.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      const std::size_t d = basis.size();
      std::vector<VecL> images;  // M_j b_i
      for (const auto& b : basis) {
        VecL y(r);
        for (std::size_t k = 0; k < r; ++k) {
          Int s = 0;
          for (std::size_t l = 0; l < r; ++l) s = (s + c[j][k][l] % ell * b[l]) % ell;
          y[k] = s;
        }
        images.push_back(std::move(y));
      }
      std::size_t found = 0;
      for (Int lambda = 0; lambda < ell && found < d; ++lambda) {
        std::vector<VecL> a(r, VecL(d));
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t i = 0; i < d; ++i) a[k][i] = mod(images[i][k] - lambda * basis[i][k], ell);
        const auto ker = nullspace_mod(std::move(a), d, ell);
        if (ker.empty()) continue;
        std::vector<VecL> sub;
        for (const auto& coef : ker) {
          VecL v(r);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < r; ++k) v[k] = (v[k] + coef[i] * basis[i][k]) % ell;
          sub.push_back(std::move(v));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != d) throw InternalError("class matrix is not diagonalizable over F_l");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw InternalError("eigenspaces did not split into lines");

  const Int root = primitive_root(ell);
  const Int big_z = pow_mod(root, (ell - 1) / e, ell);  // image of zeta_e
  const auto& cls = g.classes();

  std::vector<std::vector<CycloNum>> rows;
  for (const auto& sp : spaces) {
    VecL w = sp[0];
    const Int inv0 = inv_mod(w[0], ell);
    for (auto& x : w) x = x * inv0 % ell;
    Int s = 0;
    for (std::size_t k = 0; k < r; ++k)
      s = (s + w[k] * w[g.inverse_class(k)] % ell * inv_mod(static_cast<Int>(cls[k].size) % ell, ell)) % ell;
    const Int deg_sq = order % ell * inv_mod(s, ell) % ell;
    Int deg = 0;
    for (Int t = 1; t <= isqrt(order); ++t)
      if (t * t % ell == deg_sq) {
        deg = t;
        break;
      }
    if (deg == 0) throw InternalError("no admissible degree");
    VecL val(r);
    for (std::size_t k = 0; k < r; ++k)
      val[k] = w[k] * deg % ell * inv_mod(static_cast<Int>(cls[k].size) % ell, ell) % ell;

    std::vector<CycloNum> row;
    for (std::size_t k = 0; k < r; ++k) {
      const Int o = cls[k].element_order;
      const Int z = pow_mod(big_z, e / o, ell);
      const Int inv_o = inv_mod(o % ell, ell);
      std::vector<Rational> coeffs(static_cast<std::size_t>(e));
      for (Int i = 0; i < o; ++i) {
        Int m = 0;
        const Int zi = pow_mod(z, mod(-i, o), ell);
        Int zij = 1;
        for (Int j = 0; j < o; ++j) {
          m = (m + val[g.power_class(k, j)] * zij) % ell;
          zij = zij * zi % ell;
        }
        m = m * inv_o % ell;
        if (m > deg) throw InternalError("eigenvalue multiplicity out of range");
        coeffs[static_cast<std::size_t>(i * (e / o))] = m;
      }
      row.push_back(CycloNum::from_power_coeffs(e, std::move(coeffs)));
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    const bool ta = std::all_of(a.begin(), a.end(), [](const CycloNum& x) { return x == CycloNum(1L); });
    const bool tb = std::all_of(b.begin(), b.end(), [](const CycloNum& x) { return x == CycloNum(1L); });
    if (ta != tb) return ta;
    const auto da = a[0].rational_value(), db = b[0].rational_value();
    if (da != db) return da < db;
    for (std::size_t k = 1; k < a.size(); ++k) {
      const auto cmp = canonical_compare(a[k], b[k]);
      if (cmp != 0) return cmp > 0;
    }
    return false;
  });
  return CharacterTable(g, std::move(rows));
}

}  // namespace mbl
