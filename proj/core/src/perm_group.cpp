#include "mbl/perm_group.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mbl/errors.hpp"

namespace mbl {

namespace perm {

Perm identity(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

Perm power(const Perm& a, Int k) {
  Perm base = k < 0 ? inverse(a) : a;
  if (k < 0) k = -k;
  Perm r = identity(static_cast<int>(a.size()));
  while (k > 0) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

Int order(const Perm& a) {
  std::vector<bool> seen(a.size());
  Int o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    Int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a[j])) {
      seen[j] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

bool is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != static_cast<int>(i)) return false;
  return true;
}

Perm conjugate(const Perm& x, const Perm& g) { return mul(mul(inverse(g), x), g); }

std::string to_cycles(const Perm& a) {
  std::ostringstream out;
  std::vector<bool> seen(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == static_cast<int>(i)) continue;
    out << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a[j])) {
      seen[j] = true;
      if (!first) out << ',';
      out << j + 1;
      first = false;
    }
    out << ')';
  }
  const std::string s = out.str();
  return s.empty() ? "()" : s;
}

}  // namespace perm

namespace {

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

struct PermGroup::Data {
  int degree = 0;
  std::size_t bound = kDefaultGroupBound;
  std::vector<Perm> gens;
  std::vector<Perm> elts;
  std::unordered_map<Perm, std::size_t, PermHash> index;
  Int exponent = 1;

  std::once_flag classes_once;
  std::vector<ConjClass> classes;
  std::vector<std::size_t> class_of;
};

PermGroup::PermGroup(int degree, std::vector<Perm> generators, std::size_t bound)
    : d_(std::make_shared<Data>()) {
  d_->degree = degree;
  d_->bound = bound;
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) throw Error("generator has wrong degree");
    Perm check = g;
    std::sort(check.begin(), check.end());
    if (check != perm::identity(degree)) throw Error("generator is not a permutation");
    if (!perm::is_identity(g)) d_->gens.push_back(std::move(g));
  }

  // Breadth-first closure under right multiplication by generators.
  std::unordered_map<Perm, std::size_t, PermHash> seen;
  std::vector<Perm> elts{perm::identity(degree)};
  seen.emplace(elts[0], 0);
  for (std::size_t i = 0; i < elts.size(); ++i) {
    for (const auto& s : d_->gens) {
      Perm x = perm::mul(elts[i], s);
      if (seen.count(x)) continue;
      if (elts.size() >= bound)
        throw BoundExceeded("group order exceeds bound " + std::to_string(bound));
      seen.emplace(x, elts.size());
      elts.push_back(std::move(x));
    }
  }
  std::sort(elts.begin(), elts.end());
  d_->index.reserve(elts.size());
  for (std::size_t i = 0; i < elts.size(); ++i) {
    d_->index.emplace(elts[i], i);
    d_->exponent = std::lcm(d_->exponent, perm::order(elts[i]));
  }
  d_->elts = std::move(elts);
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

int PermGroup::degree() const { return d_->degree; }
const std::vector<Perm>& PermGroup::generators() const { return d_->gens; }
const std::vector<Perm>& PermGroup::elements() const { return d_->elts; }
Int PermGroup::exponent() const { return d_->exponent; }
std::size_t PermGroup::bound() const { return d_->bound; }

std::size_t PermGroup::index_of(const Perm& g) const {
  auto it = d_->index.find(g);
  return it == d_->index.end() ? npos : it->second;
}

const std::vector<ConjClass>& PermGroup::classes() const {
  std::call_once(d_->classes_once, [this] {
    const auto& elts = d_->elts;
    const std::size_t n = elts.size();
    std::vector<std::size_t> raw(n, npos);
    std::vector<ConjClass> cls;
    // Scanning in element order makes each representative the least element
    // of its class.
    for (std::size_t i = 0; i < n; ++i) {
      if (raw[i] != npos) continue;
      const std::size_t id = cls.size();
      ConjClass c;
      c.representative = i;
      c.element_order = perm::order(elts[i]);
      std::vector<std::size_t> queue{i};
      raw[i] = id;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& s : d_->gens) {
          const std::size_t j = index_of(perm::conjugate(elts[queue[q]], s));
          if (raw[j] == npos) {
            raw[j] = id;
            queue.push_back(j);
          }
        }
      }
      c.size = queue.size();
      cls.push_back(std::move(c));
    }

    std::vector<std::size_t> perm_order(cls.size());
    std::iota(perm_order.begin(), perm_order.end(), 0);
    std::sort(perm_order.begin(), perm_order.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = cls[a];
      const auto& y = cls[b];
      if (x.element_order != y.element_order) return x.element_order < y.element_order;
      if (x.size != y.size) return x.size < y.size;
      return x.representative < y.representative;
    });
    std::vector<std::size_t> relabel(cls.size());
    std::vector<ConjClass> sorted;
    for (std::size_t k = 0; k < perm_order.size(); ++k) {
      relabel[perm_order[k]] = k;
      sorted.push_back(cls[perm_order[k]]);
    }
    d_->class_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) d_->class_of[i] = relabel[raw[i]];

    for (auto& c : sorted) {
      const Perm& g = elts[c.representative];
      Perm x = perm::identity(d_->degree);
      c.powers.resize(static_cast<std::size_t>(c.element_order));
      for (Int j = 0; j < c.element_order; ++j) {
        c.powers[static_cast<std::size_t>(j)] = d_->class_of[index_of(x)];
        x = perm::mul(x, g);
      }
    }
    d_->classes = std::move(sorted);
  });
  return d_->classes;
}

std::size_t PermGroup::class_of(std::size_t element_index) const {
  classes();
  return d_->class_of[element_index];
}

std::size_t PermGroup::class_of_perm(const Perm& g) const {
  const std::size_t i = index_of(g);
  if (i == npos) throw NotMember("element " + perm::to_cycles(g) + " is not in the group");
  return class_of(i);
}

std::size_t PermGroup::power_class(std::size_t c, Int k) const {
  const auto& pw = classes()[c].powers;
  return pw[static_cast<std::size_t>(mod(k, static_cast<Int>(pw.size())))];
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
  if (g.degree() != degree()) return false;
  for (const auto& s : generators())
    if (!g.contains(s)) return false;
  return true;
}

PermGroup subgroup(const PermGroup& g, const std::vector<Perm>& gens) {
  for (const auto& s : gens)
    if (!g.contains(s)) throw NotMember("generator " + perm::to_cycles(s) + " is not in the group");
  return PermGroup(g.degree(), gens, g.bound());
}

PermGroup subgroup_from_elements(const PermGroup& g, const std::vector<Perm>& elts) {
  std::vector<Perm> sorted = elts;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Perm> gens;
  PermGroup current = PermGroup::trivial(g.degree());
  for (const auto& x : sorted) {
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = subgroup(g, gens);
  }
  if (current.order() != sorted.size()) throw InternalError("element set is not a subgroup");
  return current;
}

PermGroup centralizer(const PermGroup& g, const Perm& x) {
  std::vector<Perm> out;
  for (const auto& y : g.elements())
    if (perm::mul(x, y) == perm::mul(y, x)) out.push_back(y);
  return subgroup_from_elements(g, out);
}

PermGroup centralizer(const PermGroup& g, const PermGroup& q) {
  std::vector<Perm> out;
  for (const auto& y : g.elements()) {
    bool ok = true;
    for (const auto& s : q.generators())
      if (perm::mul(s, y) != perm::mul(y, s)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return subgroup_from_elements(g, out);
}

PermGroup normalizer(const PermGroup& g, const PermGroup& q) {
  std::vector<Perm> out;
  for (const auto& y : g.elements()) {
    bool ok = true;
    for (const auto& s : q.generators())
      if (!q.contains(perm::conjugate(s, y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return subgroup_from_elements(g, out);
}

PermGroup sylow_subgroup(const PermGroup& g, Int p) {
  const Int target = p_part(static_cast<Int>(g.order()), p);
  PermGroup pg = PermGroup::trivial(g.degree());
  std::vector<Perm> gens;
  while (static_cast<Int>(pg.order()) < target) {
    const PermGroup n = normalizer(g, pg);
    bool grown = false;
    for (const auto& y : n.elements()) {
      if (pg.contains(y) || !pg.contains(perm::power(y, p))) continue;
      gens.push_back(y);
      pg = subgroup(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw InternalError("Sylow ascent stalled");
  }
  return pg;
}

std::pair<PermGroup, PermGroup> sylow_and_normalizer(const PermGroup& g, Int p) {
  PermGroup pg = sylow_subgroup(g, p);
  PermGroup n = normalizer(g, pg);
  return {std::move(pg), std::move(n)};
}

std::pair<Perm, Perm> p_part_decomposition(const Perm& g, Int p) {
  const Int o = perm::order(g);
  const Int a = p_part(o, p), b = o / a;
  // u*a + v*b = 1: g_p = g^(v*b) has order dividing a, g_p' = g^(u*a).
  Int u, v;
  extended_gcd(a, b, u, v);
  return {perm::power(g, mod(v * b, o)), perm::power(g, mod(u * a, o))};
}

std::vector<std::size_t> class_fusion(const PermGroup& h, const PermGroup& g) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < h.num_classes(); ++c) out.push_back(g.class_of_perm(h.class_representative(c)));
  return out;
}

bool is_cyclic(const PermGroup& g) {
  for (const auto& x : g.elements())
    if (perm::order(x) == static_cast<Int>(g.order())) return true;
  return false;
}

}  // namespace mbl
