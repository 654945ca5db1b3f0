#include "mbl/numtheory.hpp"

#include <stdexcept>

namespace mbl {

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<Int, int>> out;
  for (Int q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

Int euler_phi(Int n) {
  Int r = n;
  for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

Int p_part(Int n, Int p) {
  Int r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

Int p_prime_part(Int n, Int p) { return n / p_part(n, p); }

int valuation(Int n, Int p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int pow_mod(Int base, Int exp, Int m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<Int>(result);
}

Int extended_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  Int x1, y1;
  Int g = extended_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Int inv_mod(Int a, Int m) {
  if (m == 1) return 0;
  Int x, y;
  Int g = extended_gcd(mod(a, m), m, x, y);
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(x, m);
}

Int multiplicative_order(Int a, Int m) {
  if (m == 1) return 1;
  if (std::gcd(mod(a, m), m) != 1) throw std::domain_error("multiplicative_order: not a unit");
  Int ord = euler_phi(m);
  for (auto [q, e] : factorize(ord)) {
    while (ord % q == 0 && pow_mod(a, ord / q, m) == 1) ord /= q;
  }
  return ord;
}

std::vector<Int> units_mod(Int m) {
  if (m == 1) return {0};
  std::vector<Int> out;
  for (Int r = 1; r < m; ++r)
    if (std::gcd(r, m) == 1) out.push_back(r);
  return out;
}

Int primitive_root(Int p) {
  if (p == 2) return 1;
  const Int order = p - 1;
  const auto factors = factorize(order);
  for (Int g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : factors) {
      if (pow_mod(g, order / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

std::vector<std::vector<Int>> nullspace_mod(std::vector<std::vector<Int>> a, std::size_t cols, Int ell) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Int inv = inv_mod(a[r][c], ell);
    for (auto& x : a[r]) x = x * inv % ell;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Int f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = mod(a[i][k] - f * a[r][k], ell);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Int>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Int> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = mod(-a[i][free], ell);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace mbl
