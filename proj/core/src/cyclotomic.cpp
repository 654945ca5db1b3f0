#include "mbl/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include "mbl/errors.hpp"

namespace mbl {

namespace {

std::atomic<Int> g_conductor_bound{Int{1} << 20};

struct PhiCache {
  std::shared_mutex mutex;
  std::map<Int, std::unique_ptr<const std::vector<Int>>> polys;
};

PhiCache& phi_cache() {
  static PhiCache cache;
  return cache;
}

// Exact division of a by the monic polynomial b over Z.
std::vector<Int> divide_monic(std::vector<Int> a, const std::vector<Int>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Int> q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    const Int c = a[k];
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw InternalError("cyclotomic polynomial division not exact");
  return q;
}

std::vector<Int> compute_phi(Int n) {
  std::vector<Int> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (Int d = 1; d < n; ++d)
    if (n % d == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  return poly;
}

void check_conductor(Int n) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  if (n > g_conductor_bound.load()) throw ConductorMismatch("conductor " + std::to_string(n) + " exceeds bound");
}

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

Int conductor_bound() { return g_conductor_bound.load(); }
void set_conductor_bound(Int bound) { g_conductor_bound.store(bound); }

const std::vector<Int>& cyclotomic_polynomial(Int n) {
  check_conductor(n);
  auto& cache = phi_cache();
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.polys.find(n);
    if (it != cache.polys.end()) return *it->second;
  }
  // Computed outside the lock: the recursion re-enters this function.
  auto poly = std::make_unique<const std::vector<Int>>(n == 1 ? std::vector<Int>{-1, 1} : compute_phi(n));
  std::unique_lock lock(cache.mutex);
  auto [it, inserted] = cache.polys.emplace(n, std::move(poly));
  return *it->second;
}

void CycloNum::reduce_in_place(Int n, std::vector<Rational>& poly) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (sgn(poly[k]) == 0) continue;
    const Rational c = poly[k];
    for (std::size_t i = 0; i < deg; ++i)
      if (phi[i] != 0) poly[k - deg + i] -= c * phi[i];
    poly[k] = 0;
  }
  poly.resize(deg);
}

CycloNum::CycloNum(const Rational& q, Int conductor) : conductor_(conductor) {
  check_conductor(conductor);
  coeffs_.assign(static_cast<std::size_t>(euler_phi(conductor)), Rational(0));
  coeffs_[0] = q;
}

CycloNum CycloNum::zeta(Int n, Int k) {
  std::vector<Rational> c(static_cast<std::size_t>(n), Rational(0));
  c[static_cast<std::size_t>(mod(k, n))] = 1;
  return from_power_coeffs(n, std::move(c));
}

CycloNum CycloNum::from_power_coeffs(Int n, std::vector<Rational> c) {
  check_conductor(n);
  // Fold exponents mod n first so reduction only ever sees degree < n.
  if (c.size() > static_cast<std::size_t>(n)) {
    for (std::size_t i = static_cast<std::size_t>(n); i < c.size(); ++i) c[i % n] += c[i];
    c.resize(static_cast<std::size_t>(n));
  }
  const std::size_t phi = static_cast<std::size_t>(euler_phi(n));
  if (c.size() < phi) c.resize(phi, Rational(0));
  reduce_in_place(n, c);
  return CycloNum(n, std::move(c));
}

CycloNum CycloNum::lifted(Int m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0) throw ConductorMismatch("cannot lift conductor " + std::to_string(conductor_) + " to " + std::to_string(m));
  check_conductor(m);
  const Int step = m / conductor_;
  std::vector<Rational> c(static_cast<std::size_t>(m), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * step] = coeffs_[i];
  return from_power_coeffs(m, std::move(c));
}

bool CycloNum::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool CycloNum::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational CycloNum::rational_value() const {
  if (!is_rational()) throw std::domain_error("CycloNum is not rational");
  return coeffs_[0];
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& q : r.coeffs_) q = -q;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (o.conductor_ != conductor_) {
    const Int m = lcm(conductor_, o.conductor_);
    *this = lifted(m);
    return *this += o.lifted(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  if (o.conductor_ != conductor_) {
    const Int m = lcm(conductor_, o.conductor_);
    *this = lifted(m);
    return *this -= o.lifted(m);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  if (o.conductor_ != conductor_) {
    const Int m = lcm(conductor_, o.conductor_);
    *this = lifted(m);
    return *this *= o.lifted(m);
  }
  const std::size_t d = coeffs_.size();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(o.coeffs_[j]) != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  reduce_in_place(conductor_, prod);
  coeffs_ = std::move(prod);
  return *this;
}

CycloNum& CycloNum::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

CycloNum& CycloNum::operator/=(const Rational& q) {
  if (sgn(q) == 0) throw std::domain_error("CycloNum division by zero");
  for (auto& c : coeffs_) c /= q;
  return *this;
}

CycloNum& CycloNum::operator/=(const CycloNum& o) {
  if (o.is_rational()) return *this /= o.coeffs_[0];
  return *this *= o.inverse();
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw std::domain_error("CycloNum inverse of zero");
  if (is_rational()) return CycloNum(Rational(1) / coeffs_[0], conductor_);
  // Solve x * y = 1 using the multiplication-by-x matrix on the power basis.
  const std::size_t d = coeffs_.size();
  Matrix<Rational> m(d, d, Rational(0));
  for (std::size_t j = 0; j < d; ++j) {
    const CycloNum col = *this * CycloNum::from_power_coeffs(conductor_, [&] {
      std::vector<Rational> e(d, Rational(0));
      e[j] = 1;
      return e;
    }());
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col.coeffs_[i];
  }
  std::vector<Rational> rhs(d, Rational(0));
  rhs[0] = 1;
  auto y = solve(m, rhs);
  if (!y) throw InternalError("CycloNum inverse: singular multiplication matrix");
  return CycloNum(conductor_, std::move(*y));
}

bool CycloNum::operator==(const CycloNum& o) const {
  if (o.conductor_ == conductor_) return coeffs_ == o.coeffs_;
  const Int m = lcm(conductor_, o.conductor_);
  return lifted(m).coeffs_ == o.lifted(m).coeffs_;
}

std::strong_ordering canonical_compare(const CycloNum& a, const CycloNum& b) {
  if (a.conductor_ != b.conductor_) {
    const Int m = lcm(a.conductor_, b.conductor_);
    return canonical_compare(a.lifted(m), b.lifted(m));
  }
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

mpz_class CycloNum::denominator() const {
  mpz_class den = 1;
  for (const auto& q : coeffs_) den = lcm(den, mpz_class(q.get_den()));
  return den;
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << rational_string(mag);
      continue;
    }
    if (mag != 1) os << rational_string(mag) << "*";
    os << "z" << conductor_;
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

bool is_algebraic_integer(const CycloNum& x) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(), [](const Rational& q) { return q.get_den() == 1; });
}

bool is_p_integral(const CycloNum& x, Int p) {
  return std::all_of(x.coeffs().begin(), x.coeffs().end(),
                     [p](const Rational& q) { return mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0; });
}

Int evaluate_mod(const CycloNum& x, Int ell, Int zeta_image) {
  Int acc = 0;
  Int power = 1;
  const mpz_class l(static_cast<long>(ell));
  for (const auto& c : x.coeffs()) {
    if (sgn(c) != 0) {
      mpz_class num = c.get_num() % l;
      mpz_class den = c.get_den() % l;
      if (den == 0) throw NotPIntegral("evaluate_mod: denominator divisible by the modulus");
      const Int v = mod(num.get_si(), ell) * inv_mod(den.get_si(), ell) % ell;
      acc = static_cast<Int>((static_cast<__int128>(v) * power + acc) % ell);
    }
    power = static_cast<Int>(static_cast<__int128>(power) * zeta_image % ell);
  }
  return acc;
}

GaloisAut GaloisAut::compose(const GaloisAut& o) const {
  if (o.modulus != modulus) throw ModulusIncompatible("GaloisAut compose: modulus mismatch");
  return {modulus, mod(unit * o.unit, modulus)};
}

GaloisAut GaloisAut::inverse() const { return {modulus, modulus == 1 ? 0 : inv_mod(unit, modulus)}; }

bool GaloisSubgroup::contains(Int r) const {
  return std::binary_search(units.begin(), units.end(), mod(r, modulus));
}

bool GaloisSubgroup::is_subgroup_of(const GaloisSubgroup& other) const {
  if (other.modulus != modulus) return false;
  return std::all_of(units.begin(), units.end(), [&](Int r) { return other.contains(r); });
}

namespace {

GaloisSubgroup filter_units(Int n, auto&& pred) {
  GaloisSubgroup s{n, {}};
  for (Int r : units_mod(n))
    if (pred(r)) s.units.push_back(r);
  return s;
}

// The cyclic subgroup <g> of (Z/m)^x as a membership table.
std::vector<bool> cyclic_subgroup_mask(Int g, Int m) {
  std::vector<bool> mask(static_cast<std::size_t>(m), false);
  Int x = mod(1, m);
  do {
    mask[static_cast<std::size_t>(x)] = true;
    x = mod(x * g, m);
  } while (!mask[static_cast<std::size_t>(x)]);
  return mask;
}

}  // namespace

GaloisSubgroup h_n(Int n, Int p) { return h_nk(n, p, 1); }

GaloisSubgroup h_nk(Int n, Int p, Int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("h_nk: n and d must be positive");
  const Int np = p_prime_part(n, p);
  const auto mask = cyclic_subgroup_mask(pow_mod(p, d, np), np);
  return filter_units(n, [&](Int r) { return mask[static_cast<std::size_t>(mod(r, np))]; });
}

GaloisSubgroup p_fixing_subgroup(Int n, Int p) {
  if (n < 1) throw std::invalid_argument("p_fixing_subgroup: n must be positive");
  const Int np = p_prime_part(n, p);
  return filter_units(n, [&](Int r) { return mod(r, np) == mod(1, np); });
}

GaloisSubgroup full_galois_group(Int n) {
  return filter_units(n, [](Int) { return true; });
}

CycloNum galois_apply(const GaloisAut& sigma, const CycloNum& x) {
  const Int n = x.conductor();
  if (sigma.modulus % n != 0)
    throw ConductorMismatch("galois_apply: conductor " + std::to_string(n) + " does not divide modulus " +
                            std::to_string(sigma.modulus));
  const Int r = mod(sigma.unit, n);
  std::vector<Rational> c(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < x.coeffs().size(); ++i)
    c[static_cast<std::size_t>(mod(static_cast<Int>(i) * r, n))] += x.coeffs()[i];
  return CycloNum::from_power_coeffs(n, std::move(c));
}

}  // namespace mbl
