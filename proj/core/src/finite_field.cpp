#include "mbl/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "mbl/errors.hpp"

namespace mbl {

namespace polyfp {

void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyFp mul(const PolyFp& a, const PolyFp& b, Int p) {
  if (a.empty() || b.empty()) return {};
  PolyFp c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  trim(c);
  return c;
}

PolyFp rem(PolyFp a, const PolyFp& m, Int p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Int lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const Int c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

PolyFp sub(PolyFp a, const PolyFp& b, Int p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
  trim(a);
  return a;
}

PolyFp gcd(PolyFp a, PolyFp b, Int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Int inv = inv_mod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

PolyFp powmod(PolyFp base, const mpz_class& exp, const PolyFp& m, Int p) {
  PolyFp result{1};
  base = rem(std::move(base), m, p);
  const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return rem(std::move(result), m, p);
}

bool is_irreducible(const PolyFp& f, Int p) {
  const Int m = static_cast<Int>(f.size()) - 1;
  if (m < 1) return false;
  if (m == 1) return true;
  const PolyFp x{0, 1};
  const mpz_class pz(static_cast<long>(p));
  auto frob_power = [&](Int k) {
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k));
    return powmod(x, e, f, p);
  };
  if (sub(frob_power(m), x, p) != PolyFp{}) return false;
  for (auto [q, e] : factorize(m)) {
    const PolyFp g = gcd(f, sub(frob_power(m / q), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace polyfp

GaloisField::GaloisField(Int p, PolyFp modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw std::invalid_argument("GaloisField: characteristic must be prime");
  polyfp::trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1) throw std::invalid_argument("GaloisField: modulus must be monic of degree >= 1");
  m_ = static_cast<Int>(modulus_.size()) - 1;
  mpz_pow_ui(size_.get_mpz_t(), mpz_class(static_cast<long>(p)).get_mpz_t(), static_cast<unsigned long>(m_));
}

FFElem::FFElem(std::shared_ptr<const GaloisField> field, std::vector<Int> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  const auto m = static_cast<std::size_t>(field_->degree());
  if (coords_.size() > m) coords_ = polyfp::rem(coords_, field_->modulus(), field_->characteristic());
  coords_.resize(m, 0);
  for (auto& c : coords_) c = mod(c, field_->characteristic());
}

FFElem FFElem::from_int(std::shared_ptr<const GaloisField> field, Int c) {
  return FFElem(std::move(field), std::vector<Int>{c});
}

FFElem FFElem::generator(std::shared_ptr<const GaloisField> field) {
  return FFElem(std::move(field), std::vector<Int>{0, 1});
}

void FFElem::check_same_field(const FFElem& o) const {
  if (field_ != o.field_ &&
      (field_->characteristic() != o.field_->characteristic() || field_->modulus() != o.field_->modulus()))
    throw std::invalid_argument("FFElem: operands from different fields");
}

bool FFElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Int c) { return c == 0; });
}

bool FFElem::is_one() const {
  if (coords_.empty() || coords_[0] != 1) return false;
  return std::all_of(coords_.begin() + 1, coords_.end(), [](Int c) { return c == 0; });
}

FFElem FFElem::operator-() const {
  FFElem r = *this;
  for (auto& c : r.coords_) c = mod(-c, prime());
  return r;
}

FFElem& FFElem::operator+=(const FFElem& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = (coords_[i] + o.coords_[i]) % prime();
  return *this;
}

FFElem& FFElem::operator-=(const FFElem& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = mod(coords_[i] - o.coords_[i], prime());
  return *this;
}

FFElem& FFElem::operator*=(const FFElem& o) {
  check_same_field(o);
  const Int p = prime();
  PolyFp prod = polyfp::rem(polyfp::mul(coords_, o.coords_, p), field_->modulus(), p);
  prod.resize(coords_.size(), 0);
  coords_ = std::move(prod);
  return *this;
}

FFElem FFElem::pow(const mpz_class& e) const {
  if (sgn(e) < 0) return inverse().pow(-e);
  FFElem result = one_like(*this);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result *= result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= *this;
  }
  return result;
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw std::domain_error("FFElem: inverse of zero");
  return pow(field_->size() - 2);
}

FFElem FFElem::frobenius(Int k) const {
  k = mod(k, extension_degree());
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), mpz_class(static_cast<long>(prime())).get_mpz_t(), static_cast<unsigned long>(k));
  return pow(e);
}

Int FFElem::field_degree() const {
  const Int m = extension_degree();
  for (Int d = 1; d <= m; ++d)
    if (m % d == 0 && frobenius(d) == *this) return d;
  throw InternalError("FFElem::field_degree: no fixed Frobenius power");
}

bool FFElem::operator==(const FFElem& o) const {
  check_same_field(o);
  return coords_ == o.coords_;
}

std::string FFElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || coords_[i] != 1) os << coords_[i];
    if (i > 0) os << (coords_[i] != 1 ? "*t" : "t");
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Monic polynomials of degree m in ReductionMap order: the counter's base-p
// digits, most significant first, are the coefficients c_{m-1}, ..., c_0.
PolyFp monic_from_counter(Int counter, Int m, Int p) {
  PolyFp f(static_cast<std::size_t>(m) + 1, 0);
  f[static_cast<std::size_t>(m)] = 1;
  for (Int i = 0; i < m; ++i) {
    f[static_cast<std::size_t>(i)] = counter % p;
    counter /= p;
  }
  return f;
}

bool factor_less(const PolyFp& a, const PolyFp& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::vector<PolyFp> cyclotomic_factors_mod_p(Int n, Int p) {
  if (n % p == 0) throw std::invalid_argument("cyclotomic_factors_mod_p: p divides n");
  if (n == 1) return {PolyFp{mod(-1, p), 1}};
  const Int m = multiplicative_order(p, n);

  // Any irreducible polynomial of degree m gives a model of F_{p^m}.
  PolyFp g;
  for (Int counter = 0;; ++counter) {
    g = monic_from_counter(counter, m, p);
    if (polyfp::is_irreducible(g, p)) break;
  }
  auto field = std::make_shared<const GaloisField>(p, g);

  // First element (in coordinate-counter order) whose ((p^m-1)/n)-th power has order n.
  const mpz_class cofactor = (field->size() - 1) / n;
  const auto n_primes = factorize(n);
  FFElem root;
  for (Int counter = 1;; ++counter) {
    std::vector<Int> coords(static_cast<std::size_t>(m), 0);
    Int c = counter;
    for (Int i = 0; i < m; ++i) {
      coords[static_cast<std::size_t>(i)] = c % p;
      c /= p;
    }
    const FFElem y = FFElem(field, coords).pow(cofactor);
    bool primitive = !y.is_zero();
    for (auto [q, e] : n_primes)
      if (primitive && y.pow(mpz_class(static_cast<long>(n / q))).is_one()) primitive = false;
    if (primitive) {
      root = y;
      break;
    }
  }

  std::vector<PolyFp> factors;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Int k = 1; k < n; ++k) {
    if (std::gcd(k, n) != 1 || seen[static_cast<std::size_t>(k)]) continue;
    // Minimal polynomial of root^k: product over its Frobenius orbit.
    std::vector<FFElem> poly{one_like(root)};
    Int j = k;
    do {
      seen[static_cast<std::size_t>(j)] = true;
      const FFElem r = root.pow(mpz_class(static_cast<long>(j)));
      std::vector<FFElem> next(poly.size() + 1, zero_like(root));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= poly[i] * r;
      }
      poly = std::move(next);
      j = mod(j * p, n);
    } while (j != k);
    PolyFp f;
    for (const auto& c : poly) {
      for (std::size_t i = 1; i < c.coords().size(); ++i)
        if (c.coords()[i] != 0) throw InternalError("minimal polynomial not over the prime field");
      f.push_back(c.coords()[0]);
    }
    factors.push_back(std::move(f));
  }
  std::sort(factors.begin(), factors.end(), factor_less);
  return factors;
}

ReductionMap::ReductionMap(Int conductor, Int p) : n_(conductor), p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("ReductionMap: p must be prime");
  if (conductor < 1) throw std::invalid_argument("ReductionMap: conductor must be positive");
  const Int np = p_prime_part(conductor, p);
  const Int npp = conductor / np;
  field_ = std::make_shared<const GaloisField>(p, cyclotomic_factors_mod_p(np, p).front());
  // zeta_n -> omega with omega^(n_p) = t, so zeta_{n_{p'}} = zeta_n^(n_p) -> t
  // and zeta_{n_p} = zeta_n^(n_{p'}) -> t^(n_{p'}) = 1.
  const FFElem t = FFElem::generator(field_);
  const FFElem omega = np == 1 ? one_like(t) : t.pow(mpz_class(static_cast<long>(inv_mod(npp, np))));
  powers_.reserve(static_cast<std::size_t>(conductor));
  FFElem acc = one_like(t);
  for (Int i = 0; i < conductor; ++i) {
    powers_.push_back(acc);
    acc *= omega;
  }
}

FFElem ReductionMap::operator()(const CycloNum& x) const {
  const Int c = x.conductor();
  if (n_ % c != 0) throw ConductorMismatch("reduce_mod_p: conductor does not divide the map's conductor");
  const Int step = n_ / c;
  FFElem acc = zero_like(powers_[0]);
  const mpz_class pz(static_cast<long>(p_));
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const Rational& q = x.coeffs()[i];
    if (sgn(q) == 0) continue;
    const mpz_class den = q.get_den() % pz;
    if (den == 0) throw NotPIntegral("reduce_mod_p: " + x.to_string() + " is not p-integral for p = " + std::to_string(p_));
    const mpz_class num = q.get_num() % pz;
    const Int v = mod(num.get_si(), p_) * inv_mod(den.get_si(), p_) % p_;
    acc += FFElem::from_int(field_, v) * powers_[static_cast<std::size_t>(static_cast<Int>(i) * step % n_)];
  }
  return acc;
}

std::shared_ptr<const ReductionMap> reduction_map(Int conductor, Int p) {
  static std::mutex mu;
  static std::map<std::pair<Int, Int>, std::shared_ptr<const ReductionMap>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{conductor, p}];
  if (!slot) slot = std::make_shared<const ReductionMap>(conductor, p);
  return slot;
}

}  // namespace mbl
