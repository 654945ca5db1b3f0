#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "mbl/linalg.hpp"
#include "mbl/numtheory.hpp"

namespace mbl {

// Upper bound on conductors (default 2^20). Lifting beyond it throws
// ConductorMismatch.
Int conductor_bound();
void set_conductor_bound(Int bound);

// Integer coefficients of the n-th cyclotomic polynomial, lowest degree
// first. Computed once per n and cached; safe to call concurrently.
const std::vector<Int>& cyclotomic_polynomial(Int n);

/// Exact element of Q(zeta_n), stored as its remainder modulo Phi_n in the
/// power basis 1, zeta, ..., zeta^(phi(n)-1). The representation is unique,
/// so equality at a common conductor is coefficient equality.
class CycloNum {
 public:
  CycloNum() : conductor_(1), coeffs_(1) {}
  explicit CycloNum(const Rational& q, Int conductor = 1);
  explicit CycloNum(long q, Int conductor = 1) : CycloNum(Rational(q), conductor) {}

  // zeta_n^k.
  static CycloNum zeta(Int n, Int k = 1);
  // sum_i c[i] * zeta_n^i for coefficient vectors of any length.
  static CycloNum from_power_coeffs(Int n, std::vector<Rational> c);

  Int conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  // Same number written at conductor m (a multiple of conductor()).
  CycloNum lifted(Int m) const;

  bool is_zero() const;
  bool is_rational() const;
  // Requires is_rational().
  Rational rational_value() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o);
  CycloNum& operator*=(const Rational& q);
  CycloNum& operator/=(const Rational& q);
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend CycloNum operator*(CycloNum a, const Rational& q) { return a *= q; }
  friend CycloNum operator*(const Rational& q, CycloNum a) { return a *= q; }
  friend CycloNum operator/(CycloNum a, const Rational& q) { return a /= q; }

  // Throws std::domain_error on zero.
  CycloNum inverse() const;

  bool operator==(const CycloNum& o) const;

  // Total order used only for canonical sorting: compares at the lcm
  // conductor, coefficient vectors lexicographically.
  friend std::strong_ordering canonical_compare(const CycloNum& a, const CycloNum& b);

  // Least common denominator of the coefficients.
  mpz_class denominator() const;

  // Human-readable form, e.g. "-1 - z3" for zeta_3^2.
  std::string to_string() const;

 private:
  CycloNum(Int conductor, std::vector<Rational> coeffs)
      : conductor_(conductor), coeffs_(std::move(coeffs)) {}
  static void reduce_in_place(Int n, std::vector<Rational>& poly);

  Int conductor_;
  std::vector<Rational> coeffs_;
};

inline CycloNum zero_like(const CycloNum& x) { return CycloNum(Rational(0), x.conductor()); }
inline CycloNum one_like(const CycloNum& x) { return CycloNum(Rational(1), x.conductor()); }
inline bool is_zero(const CycloNum& x) { return x.is_zero(); }

/// True iff all canonical coefficients are integers, i.e. x lies in Z[zeta_n],
/// the full ring of integers of Q(zeta_n).
bool is_algebraic_integer(const CycloNum& x);

/// True iff the canonical coefficients have denominators prime to p, i.e. x is
/// integral at every prime of Q(zeta_n) above p.
bool is_p_integral(const CycloNum& x, Int p);

/// Image of x under Z_(l)[zeta_n] -> F_l, zeta_n -> zeta_image, where
/// zeta_image has multiplicative order n modulo the prime l.
Int evaluate_mod(const CycloNum& x, Int ell, Int zeta_image);

/// The automorphism zeta_n -> zeta_n^unit of Q(zeta_n).
struct GaloisAut {
  Int modulus = 1;
  Int unit = 1;

  GaloisAut compose(const GaloisAut& o) const;  // (this o other)
  GaloisAut inverse() const;
  bool operator==(const GaloisAut&) const = default;
};

/// A subgroup of (Z/n)^x given by its elements (sorted).
struct GaloisSubgroup {
  Int modulus = 1;
  std::vector<Int> units;

  std::size_t order() const { return units.size(); }
  bool contains(Int r) const;
  bool is_subgroup_of(const GaloisSubgroup& other) const;
  bool operator==(const GaloisSubgroup&) const = default;
};

/// Units r mod n with r = p^u (mod n_{p'}) for some u >= 0.
GaloisSubgroup h_n(Int n, Int p);

/// Units r mod n whose residue mod n_{p'} lies in <p^d mod n_{p'}>.
GaloisSubgroup h_nk(Int n, Int p, Int d);

/// Units r mod n with r = 1 (mod n_{p'}): the automorphisms fixing every
/// p'-root of unity.
GaloisSubgroup p_fixing_subgroup(Int n, Int p);

/// All of (Z/n)^x.
GaloisSubgroup full_galois_group(Int n);

/// zeta -> zeta^r applied to x; the conductor of x must divide sigma.modulus.
CycloNum galois_apply(const GaloisAut& sigma, const CycloNum& x);

}  // namespace mbl
