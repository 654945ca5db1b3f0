#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mbl/cyclotomic.hpp"
#include "mbl/numtheory.hpp"

namespace mbl {

// Polynomials over F_p, lowest degree first, no trailing zeros (zero is empty).
using PolyFp = std::vector<Int>;

namespace polyfp {
void trim(PolyFp& a);
PolyFp mul(const PolyFp& a, const PolyFp& b, Int p);
PolyFp rem(PolyFp a, const PolyFp& m, Int p);
PolyFp sub(PolyFp a, const PolyFp& b, Int p);
PolyFp gcd(PolyFp a, PolyFp b, Int p);
PolyFp powmod(PolyFp base, const mpz_class& exp, const PolyFp& m, Int p);
// Rabin's test for monic f of degree >= 1.
bool is_irreducible(const PolyFp& f, Int p);
}  // namespace polyfp

/// F_{p^m} presented as F_p[t]/(f) with f monic irreducible of degree m.
class GaloisField {
 public:
  GaloisField(Int p, PolyFp modulus);

  Int characteristic() const { return p_; }
  Int degree() const { return m_; }
  const PolyFp& modulus() const { return modulus_; }
  // p^m
  const mpz_class& size() const { return size_; }

 private:
  Int p_;
  Int m_;
  PolyFp modulus_;
  mpz_class size_;
};

/// Element of a GaloisField, coordinates over F_p in the basis 1, t, ..., t^(m-1).
class FFElem {
 public:
  FFElem() = default;
  FFElem(std::shared_ptr<const GaloisField> field, std::vector<Int> coords);
  static FFElem from_int(std::shared_ptr<const GaloisField> field, Int c);
  static FFElem generator(std::shared_ptr<const GaloisField> field);  // t

  const std::shared_ptr<const GaloisField>& field() const { return field_; }
  const std::vector<Int>& coords() const { return coords_; }
  Int prime() const { return field_->characteristic(); }
  Int extension_degree() const { return field_->degree(); }

  bool is_zero() const;
  bool is_one() const;

  FFElem operator-() const;
  FFElem& operator+=(const FFElem& o);
  FFElem& operator-=(const FFElem& o);
  FFElem& operator*=(const FFElem& o);
  FFElem& operator/=(const FFElem& o) { return *this *= o.inverse(); }
  friend FFElem operator+(FFElem a, const FFElem& b) { return a += b; }
  friend FFElem operator-(FFElem a, const FFElem& b) { return a -= b; }
  friend FFElem operator*(FFElem a, const FFElem& b) { return a *= b; }
  friend FFElem operator/(FFElem a, const FFElem& b) { return a /= b; }

  FFElem pow(const mpz_class& e) const;
  FFElem inverse() const;
  // x -> x^(p^k)
  FFElem frobenius(Int k = 1) const;
  // Smallest d with x^(p^d) = x.
  Int field_degree() const;

  bool operator==(const FFElem& o) const;
  bool operator<(const FFElem& o) const { return coords_ < o.coords_; }

  std::string to_string() const;

 private:
  void check_same_field(const FFElem& o) const;

  std::shared_ptr<const GaloisField> field_;
  std::vector<Int> coords_;
};

inline FFElem zero_like(const FFElem& x) { return FFElem::from_int(x.field(), 0); }
inline FFElem one_like(const FFElem& x) { return FFElem::from_int(x.field(), 1); }
inline bool is_zero(const FFElem& x) { return x.is_zero(); }

/// The ring homomorphism Z_(p)[zeta_n] -> F_{p^m}, m = ord_{n_{p'}}(p), with
/// zeta_{n_{p'}} sent to the class of t in F_p[t]/(f), where f is the
/// lexicographically smallest monic irreducible factor of Phi_{n_{p'}} over F_p
/// (coefficients compared from degree m-1 down to 0), and p-power roots of
/// unity sent to 1.
class ReductionMap {
 public:
  ReductionMap(Int conductor, Int p);

  Int conductor() const { return n_; }
  Int prime() const { return p_; }
  const std::shared_ptr<const GaloisField>& field() const { return field_; }
  // Image of zeta_n.
  const FFElem& zeta_image() const { return powers_[n_ == 1 ? 0 : 1]; }

  // Throws NotPIntegral if some coefficient has p in its denominator and
  // ConductorMismatch if the conductor of x does not divide n.
  FFElem operator()(const CycloNum& x) const;

 private:
  Int n_;
  Int p_;
  std::shared_ptr<const GaloisField> field_;
  std::vector<FFElem> powers_;  // zeta image^i, i < n
};

/// Shared map for (n, p), built once per pair; maps with equal n_{p'} share a
/// field modulus, so their images are directly comparable.
std::shared_ptr<const ReductionMap> reduction_map(Int conductor, Int p);

/// Applies the reduction map; named entry point for the library operation.
inline FFElem reduce_mod_p(const ReductionMap& map, const CycloNum& x) { return map(x); }

/// All monic irreducible factors of Phi_n over F_p (p not dividing n), sorted
/// by the ReductionMap order.
std::vector<PolyFp> cyclotomic_factors_mod_p(Int n, Int p);

}  // namespace mbl
