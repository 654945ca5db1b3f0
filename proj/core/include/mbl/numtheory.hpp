#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace mbl {

using Int = std::int64_t;

// Prime factorisation by trial division; returns (prime, exponent) pairs in
// increasing order. Intended for the small integers (orders, conductors) that
// show up in desk-scale group computations.
std::vector<std::pair<Int, int>> factorize(Int n);

bool is_prime(Int n);

Int euler_phi(Int n);

// p-part and p'-part of n: n = p_part(n, p) * p_prime_part(n, p).
Int p_part(Int n, Int p);
Int p_prime_part(Int n, Int p);

// Exponent of p in n (n != 0).
int valuation(Int n, Int p);

Int mod(Int a, Int m);

// Modular exponentiation with 128-bit intermediates.
Int pow_mod(Int base, Int exp, Int m);

// Inverse of a modulo m; requires gcd(a, m) == 1.
Int inv_mod(Int a, Int m);

// Multiplicative order of a modulo m (m >= 1, gcd(a, m) == 1). ord mod 1 is 1.
Int multiplicative_order(Int a, Int m);

// Units of Z/m in increasing order (m == 1 gives {0}, representing the trivial group).
std::vector<Int> units_mod(Int m);

// Solves a*x + b*y = gcd(a, b).
Int extended_gcd(Int a, Int b, Int& x, Int& y);

// Smallest primitive root modulo the prime p.
Int primitive_root(Int p);

inline Int lcm(Int a, Int b) { return std::lcm(a, b); }

// Kernel basis of a (rows x cols, entries reduced mod the prime ell).
std::vector<std::vector<Int>> nullspace_mod(std::vector<std::vector<Int>> a, std::size_t cols, Int ell);

}  // namespace mbl
