#include "mbl/symalg.hpp"

#include <algorithm>

#include "mbl/errors.hpp"

namespace mbl {

namespace {

CycloNum zero_at(Int n) { return CycloNum(0L, n); }

Vec zero_vec(std::size_t d, Int n) { return Vec(d, zero_at(n)); }

Vec unit_vec(std::size_t d, std::size_t i, Int n) {
  Vec v = zero_vec(d, n);
  v[i] = CycloNum(1L, n);
  return v;
}

Mat zero_mat(std::size_t r, std::size_t c, Int n) { return Mat(r, c, zero_at(n)); }

Mat identity_mat(std::size_t d, Int n) { return Mat::identity(d, zero_at(n)); }

void axpy(Vec& y, const CycloNum& a, const Vec& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

void add_into(Mat& y, const CycloNum& a, const Mat& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!x(i, j).is_zero()) y(i, j) += a * x(i, j);
}

CycloNum dot(const Vec& a, const Vec& b, Int n) {
  CycloNum s = zero_at(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const CycloNum& x) { return x.is_zero(); });
}

Mat from_columns(const std::vector<Vec>& cols, std::size_t rows, Int n) {
  Mat m = zero_mat(rows, cols.size(), n);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Mat kron(const Mat& a, const Mat& b, Int n) {
  Mat k = zero_mat(a.rows() * b.rows(), a.cols() * b.cols(), n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (!b(r, c).is_zero()) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

// Incrementally maintained span of vectors, kept in reduced echelon form.
class Span {
 public:
  Span(std::size_t d, Int n) : d_(d), n_(n) {}
  std::size_t size() const { return rows_.size(); }
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool add(const Vec& v) {
    Vec r = reduce(v);
    std::size_t piv = 0;
    while (piv < d_ && r[piv].is_zero()) ++piv;
    if (piv == d_) return false;
    const CycloNum inv = r[piv].inverse();
    for (auto& x : r) x = x * inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const CycloNum f = rows_[k][piv];
      if (!f.is_zero()) axpy(rows_[k], -f, r);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

  Vec reduce(Vec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const CycloNum f = v[pivots_[k]];
      if (!f.is_zero()) axpy(v, -f, rows_[k]);
    }
    return v;
  }

 private:
  std::size_t d_;
  Int n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || *a == *b; }

}  // namespace

FDAlgebra::FDAlgebra(Int conductor, std::vector<std::vector<Vec>> structure, Vec unit, Vec form)
    : conductor_(conductor), structure_(std::move(structure)), unit_(std::move(unit)), form_(std::move(form)) {
  const std::size_t d = unit_.size();
  if (d == 0) throw Error("algebra of dimension 0");
  if (form_.size() != d || structure_.size() != d) throw Error("algebra data has inconsistent dimensions");
  for (const auto& row : structure_) {
    if (row.size() != d) throw Error("algebra data has inconsistent dimensions");
    for (const auto& v : row)
      if (v.size() != d) throw Error("algebra data has inconsistent dimensions");
  }
}

Vec FDAlgebra::zero_vector() const { return zero_vec(dim(), conductor_); }

Vec FDAlgebra::basis_vector(std::size_t i) const { return unit_vec(dim(), i, conductor_); }

Vec FDAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out = zero_vector();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!b[j].is_zero()) axpy(out, a[i] * b[j], structure_[i][j]);
  }
  return out;
}

CycloNum FDAlgebra::s(const Vec& a) const { return dot(form_, a, conductor_); }

Mat FDAlgebra::left_matrix(const Vec& a) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(a, basis_vector(j)));
  return from_columns(cols, dim(), conductor_);
}

Mat FDAlgebra::right_matrix(const Vec& a) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(mul(basis_vector(j), a));
  return from_columns(cols, dim(), conductor_);
}

Mat FDAlgebra::gram() const {
  Mat g = zero_mat(dim(), dim(), conductor_);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) g(i, j) = s(structure_[i][j]);
  return g;
}

std::vector<Vec> FDAlgebra::center_basis() const {
  const std::size_t d = dim();
  Mat eq = zero_mat(d * d, d, conductor_);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t c = 0; c < d; ++c) eq(i * d + c, k) = structure_[k][i][c] - structure_[i][k][c];
  return nullspace(eq);
}

FDAlgebra FDAlgebra::with_form(Vec form) const { return FDAlgebra(conductor_, structure_, unit_, std::move(form)); }

void FDAlgebra::validate() const {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    const Vec e = basis_vector(i);
    if (mul(unit_, e) != e || mul(e, unit_) != e) throw Error("unit law fails at basis element " + std::to_string(i));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (s(structure_[i][j]) != s(structure_[j][i])) throw Error("form is not symmetric");
      for (std::size_t k = 0; k < d; ++k)
        if (mul(structure_[i][j], basis_vector(k)) != mul(basis_vector(i), structure_[j][k]))
          throw Error("multiplication is not associative");
    }
  dual_basis(*this);
}

bool FDAlgebra::operator==(const FDAlgebra& o) const {
  return structure_ == o.structure_ && unit_ == o.unit_ && form_ == o.form_;
}

FDAlgebra group_algebra(const PermGroup& g, Int conductor, const CycloNum& scale) {
  const std::size_t d = g.order();
  std::vector<std::vector<Vec>> st(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) st[i][j] = unit_vec(d, g.index_of(perm::mul(g.element(i), g.element(j))), conductor);
  Vec form = zero_vec(d, conductor);
  form[0] = scale.lifted(lcm(conductor, scale.conductor()));
  return FDAlgebra(conductor, std::move(st), unit_vec(d, 0, conductor), std::move(form));
}

FDAlgebra split_commutative_algebra(const Vec& form_values, Int conductor) {
  const std::size_t d = form_values.size();
  std::vector<std::vector<Vec>> st(d, std::vector<Vec>(d, zero_vec(d, conductor)));
  for (std::size_t i = 0; i < d; ++i) st[i][i] = unit_vec(d, i, conductor);
  Vec unit(d, CycloNum(1L, conductor));
  return FDAlgebra(conductor, std::move(st), std::move(unit), form_values);
}

Mat corner_embedding(const FDAlgebra& a, const Vec& e) {
  if (a.mul(e, e) != e) throw Error("corner: element is not idempotent");
  Span span(a.dim(), a.conductor());
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec w = a.mul(a.mul(e, a.basis_vector(i)), e);
    if (span.add(w)) basis.push_back(std::move(w));
  }
  if (basis.empty()) throw Error("corner: zero idempotent");
  return from_columns(basis, a.dim(), a.conductor());
}

FDAlgebra corner_algebra(const FDAlgebra& a, const Vec& e) {
  const Mat emb = corner_embedding(a, e);
  const std::size_t r = emb.cols();
  auto coords = [&](const Vec& v) {
    auto x = solve(emb, v);
    if (!x) throw InternalError("corner: element outside eAe");
    return *x;
  };
  std::vector<std::vector<Vec>> st(r, std::vector<Vec>(r));
  Vec form;
  for (std::size_t i = 0; i < r; ++i) {
    form.push_back(a.s(emb.col(i)));
    for (std::size_t j = 0; j < r; ++j) st[i][j] = coords(a.mul(emb.col(i), emb.col(j)));
  }
  return FDAlgebra(a.conductor(), std::move(st), coords(e), std::move(form));
}

std::vector<Vec> dual_basis(const FDAlgebra& a) {
  const auto inv = inverse(a.gram());
  if (!inv) throw DegenerateForm("the form's Gram matrix is singular");
  std::vector<Vec> out;
  for (std::size_t j = 0; j < a.dim(); ++j) out.push_back(inv->col(j));
  return out;
}

FDBimodule::FDBimodule(AlgebraPtr left, AlgebraPtr right, std::vector<Mat> left_actions, std::vector<Mat> right_actions)
    : left_(std::move(left)), right_(std::move(right)), left_actions_(std::move(left_actions)),
      right_actions_(std::move(right_actions)) {
  if (left_actions_.size() != left_->dim() || right_actions_.size() != right_->dim())
    throw Error("bimodule: one action matrix per basis element is required");
  dim_ = left_actions_[0].rows();
  for (const auto* acts : {&left_actions_, &right_actions_})
    for (const auto& m : *acts)
      if (m.rows() != dim_ || m.cols() != dim_) throw Error("bimodule: action matrices have inconsistent sizes");
}

Mat FDBimodule::left_matrix(const Vec& a) const {
  Mat m = zero_mat(dim_, dim_, left_->conductor());
  for (std::size_t i = 0; i < a.size(); ++i) add_into(m, a[i], left_actions_[i]);
  return m;
}

Mat FDBimodule::right_matrix(const Vec& b) const {
  Mat m = zero_mat(dim_, dim_, right_->conductor());
  for (std::size_t j = 0; j < b.size(); ++j) add_into(m, b[j], right_actions_[j]);
  return m;
}

void FDBimodule::validate() const {
  const auto& a = *left_;
  const auto& b = *right_;
  const Mat id = identity_mat(dim_, a.conductor());
  if (left_matrix(a.unit()) != id) throw Error("bimodule: unit of the left algebra does not act as the identity");
  if (right_matrix(b.unit()) != id) throw Error("bimodule: unit of the right algebra does not act as the identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (left_actions_[i] * left_actions_[j] != left_matrix(a.product(i, j)))
        throw Error("bimodule: left action is not multiplicative");
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      if (right_actions_[j] * right_actions_[i] != right_matrix(b.product(i, j)))
        throw Error("bimodule: right action is not multiplicative");
  for (const auto& l : left_actions_)
    for (const auto& r : right_actions_)
      if (l * r != r * l) throw Error("bimodule: left and right actions do not commute");
}

FDBimodule regular_bimodule(const AlgebraPtr& a) {
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    l.push_back(a->left_matrix(a->basis_vector(i)));
    r.push_back(a->right_matrix(a->basis_vector(i)));
  }
  return FDBimodule(a, a, std::move(l), std::move(r));
}

FDBimodule restriction_bimodule(const AlgebraPtr& a, const AlgebraPtr& b, const Mat& phi) {
  if (phi.rows() != a->dim() || phi.cols() != b->dim()) throw Error("restriction: map has the wrong shape");
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i) l.push_back(a->left_matrix(a->basis_vector(i)));
  for (std::size_t j = 0; j < b->dim(); ++j) r.push_back(a->right_matrix(phi.col(j)));
  return FDBimodule(a, b, std::move(l), std::move(r));
}

FDBimodule outer_tensor(const AlgebraPtr& a, const std::vector<Mat>& left_module, const AlgebraPtr& b,
                        const std::vector<Mat>& right_module) {
  if (left_module.empty() || right_module.empty()) throw Error("outer tensor: empty action list");
  const Int n = a->conductor();
  const std::size_t ds = left_module[0].rows(), dt = right_module[0].rows();
  std::vector<Mat> l, r;
  for (const auto& x : left_module) l.push_back(kron(x, identity_mat(dt, n), n));
  for (const auto& y : right_module) r.push_back(kron(identity_mat(ds, n), y, n));
  return FDBimodule(a, b, std::move(l), std::move(r));
}

FDBimodule corner_bimodule(const AlgebraPtr& a, const Vec& f, const AlgebraPtr& corner) {
  const Mat emb = corner_embedding(*a, f);
  if (emb.cols() != corner->dim()) throw Error("corner bimodule: corner algebra has the wrong dimension");
  Span span(a->dim(), a->conductor());
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Vec w = a->mul(a->basis_vector(i), f);
    if (span.add(w)) basis.push_back(std::move(w));
  }
  const std::size_t d = basis.size();
  const Mat bm = from_columns(basis, a->dim(), a->conductor());
  auto act = [&](auto image) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < d; ++j) {
      auto x = solve(bm, image(basis[j]));
      if (!x) throw InternalError("corner bimodule: element outside Af");
      cols.push_back(std::move(*x));
    }
    return from_columns(cols, d, a->conductor());
  };
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i)
    l.push_back(act([&](const Vec& m) { return a->mul(a->basis_vector(i), m); }));
  for (std::size_t j = 0; j < corner->dim(); ++j)
    r.push_back(act([&](const Vec& m) { return a->mul(m, emb.col(j)); }));
  return FDBimodule(a, corner, std::move(l), std::move(r));
}

FDBimodule direct_sum(const FDBimodule& m, const FDBimodule& n) {
  if (!same_algebra(m.left_algebra(), n.left_algebra()) || !same_algebra(m.right_algebra(), n.right_algebra()))
    throw Error("direct sum of bimodules over different algebras");
  const std::size_t d = m.dim() + n.dim();
  const Int c = m.left_algebra()->conductor();
  auto block = [&](const Mat& x, const Mat& y) {
    Mat z = zero_mat(d, d, c);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) z(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows(); ++i)
      for (std::size_t j = 0; j < y.cols(); ++j) z(m.dim() + i, m.dim() + j) = y(i, j);
    return z;
  };
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < m.left_algebra()->dim(); ++i) l.push_back(block(m.left_action(i), n.left_action(i)));
  for (std::size_t j = 0; j < m.right_algebra()->dim(); ++j) r.push_back(block(m.right_action(j), n.right_action(j)));
  return FDBimodule(m.left_algebra(), m.right_algebra(), std::move(l), std::move(r));
}

FDBimodule bimodule_dual(const FDBimodule& m) {
  // (b.f)(x) = f(x b) and (f.a)(x) = f(a x).
  std::vector<Mat> l, r;
  for (std::size_t j = 0; j < m.right_algebra()->dim(); ++j) l.push_back(transpose(m.right_action(j)));
  for (std::size_t i = 0; i < m.left_algebra()->dim(); ++i) r.push_back(transpose(m.left_action(i)));
  return FDBimodule(m.right_algebra(), m.left_algebra(), std::move(l), std::move(r));
}

namespace {
std::size_t g_tensor_bound = 4096;
}

std::size_t tensor_dimension_bound() { return g_tensor_bound; }
void set_tensor_dimension_bound(std::size_t bound) { g_tensor_bound = bound; }

FDBimodule tensor_over(const FDBimodule& m, const FDBimodule& n) {
  if (!same_algebra(m.right_algebra(), n.left_algebra())) throw Error("tensor: middle algebras differ");
  const std::size_t dm = m.dim(), dn = n.dim(), d = dm * dn;
  if (d > g_tensor_bound)
    throw BoundExceeded("tensor: dimension " + std::to_string(d) + " exceeds the bound " + std::to_string(g_tensor_bound));
  const Int c = m.left_algebra()->conductor();
  const auto& b = *m.right_algebra();

  // m*y (x) n - m (x) y*n spans the relations.
  Span rel(d, c);
  for (std::size_t j = 0; j < b.dim(); ++j) {
    const Mat& rm = m.right_action(j);
    const Mat& ln = n.left_action(j);
    for (std::size_t p = 0; p < dm; ++p)
      for (std::size_t q = 0; q < dn; ++q) {
        Vec v = zero_vec(d, c);
        for (std::size_t pp = 0; pp < dm; ++pp)
          if (!rm(pp, p).is_zero()) v[pp * dn + q] += rm(pp, p);
        for (std::size_t qq = 0; qq < dn; ++qq)
          if (!ln(qq, q).is_zero()) v[p * dn + qq] -= ln(qq, q);
        if (!is_zero_vec(v)) rel.add(v);
      }
  }
  std::vector<bool> is_pivot(d, false);
  for (auto pc : rel.pivots()) is_pivot[pc] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t k = 0; k < d; ++k)
    if (!is_pivot[k]) free_cols.push_back(k);
  const std::size_t q = free_cols.size();
  auto project = [&](const Vec& v) {
    const Vec red = rel.reduce(v);
    Vec out;
    out.reserve(q);
    for (auto k : free_cols) out.push_back(red[k]);
    return out;
  };
  auto act = [&](const Mat& big) {
    Mat out = zero_mat(q, q, c);
    for (std::size_t f = 0; f < q; ++f) {
      const Vec col = project(big.col(free_cols[f]));
      for (std::size_t i = 0; i < q; ++i) out(i, f) = col[i];
    }
    return out;
  };
  std::vector<Mat> l, r;
  for (std::size_t i = 0; i < m.left_algebra()->dim(); ++i) l.push_back(act(kron(m.left_action(i), identity_mat(dn, c), c)));
  for (std::size_t j = 0; j < n.right_algebra()->dim(); ++j) r.push_back(act(kron(identity_mat(dm, c), n.right_action(j), c)));
  if (q == 0) throw Error("tensor: the product is zero");
  return FDBimodule(m.left_algebra(), n.right_algebra(), std::move(l), std::move(r));
}

std::optional<Mat> find_isomorphism(const FDBimodule& m, const FDBimodule& n) {
  if (m.dim() != n.dim() || !same_algebra(m.left_algebra(), n.left_algebra()) ||
      !same_algebra(m.right_algebra(), n.right_algebra()))
    return std::nullopt;
  const std::size_t d = m.dim();
  const Int c = m.left_algebra()->conductor();
  std::vector<std::pair<const Mat*, const Mat*>> acts;
  for (std::size_t i = 0; i < m.left_algebra()->dim(); ++i) acts.emplace_back(&m.left_action(i), &n.left_action(i));
  for (std::size_t j = 0; j < m.right_algebra()->dim(); ++j) acts.emplace_back(&m.right_action(j), &n.right_action(j));
  // X a_M = a_N X, X(r, k) at index r * d + k.
  Mat eq = zero_mat(acts.size() * d * d, d * d, c);
  std::size_t row = 0;
  for (const auto& [am, an] : acts)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t cc = 0; cc < d; ++cc, ++row)
        for (std::size_t k = 0; k < d; ++k) {
          eq(row, r * d + k) += (*am)(k, cc);
          eq(row, k * d + cc) -= (*an)(r, k);
        }
  const auto basis = nullspace(eq);
  if (basis.empty()) return std::nullopt;
  auto to_mat = [&](const Vec& v) {
    Mat x = zero_mat(d, d, c);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) x(r, k) = v[r * d + k];
    return x;
  };
  for (const auto& v : basis)
    if (inverse(to_mat(v))) return to_mat(v);
  for (long t = 2; t < 24; ++t) {
    Vec v = zero_vec(d * d, c);
    long w = 1;
    for (const auto& b : basis) {
      axpy(v, CycloNum(w, c), b);
      w = (w * t) % 1009;
    }
    if (inverse(to_mat(v))) return to_mat(v);
  }
  return std::nullopt;
}

namespace {

// Dual-basis system of M as a projective module: generators g_k and
// functionals f_k with x = sum_k g_k * psi_{f_k}(x), where psi_f is the module
// map into the algebra matched with f by the algebra's form. `acts` are the
// action matrices of the basis elements on the relevant side and `dual_acts`
// those of the dual basis.
struct DualBasisSystem {
  std::vector<Vec> generators;
  std::vector<Vec> functionals;
};

std::optional<DualBasisSystem> dual_basis_system(std::size_t dim, Int c, const std::vector<Mat>& acts,
                                                 const std::vector<Mat>& dual_acts) {
  DualBasisSystem sys;
  Span span(dim, c);
  for (std::size_t p = 0; p < dim && span.size() < dim; ++p) {
    const Vec e = unit_vec(dim, p, c);
    if (span.contains(e)) continue;
    sys.generators.push_back(e);
    for (const auto& a : acts) span.add(a * e);
  }
  const std::size_t r = sys.generators.size();
  // Unknown f_k(e_q) at index k * dim + q. Equation (p, cc):
  // sum_{k,q} f_k(e_q) sum_j dual_acts[j](q, p) * (acts[j] g_k)[cc] = delta.
  std::vector<std::vector<Vec>> w(r);
  for (std::size_t k = 0; k < r; ++k)
    for (const auto& a : acts) w[k].push_back(a * sys.generators[k]);
  Mat eq = zero_mat(dim * dim, r * dim, c);
  Vec rhs = zero_vec(dim * dim, c);
  for (std::size_t p = 0; p < dim; ++p) {
    rhs[p * dim + p] = CycloNum(1L, c);
    for (std::size_t j = 0; j < acts.size(); ++j)
      for (std::size_t q = 0; q < dim; ++q) {
        const CycloNum& t = dual_acts[j](q, p);
        if (t.is_zero()) continue;
        for (std::size_t k = 0; k < r; ++k)
          for (std::size_t cc = 0; cc < dim; ++cc)
            if (!w[k][j][cc].is_zero()) eq(p * dim + cc, k * dim + q) += t * w[k][j][cc];
      }
  }
  const auto sol = solve(eq, rhs);
  if (!sol) return std::nullopt;
  for (std::size_t k = 0; k < r; ++k) sys.functionals.emplace_back(sol->begin() + k * dim, sol->begin() + (k + 1) * dim);
  return sys;
}

// psi_f(x) = sum_j f(dual_act_j x) y_j, as algebra coordinates.
Vec matched_map(const Vec& f, const Vec& x, const std::vector<Mat>& dual_acts, Int c) {
  Vec out;
  for (const auto& a : dual_acts) out.push_back(dot(f, a * x, c));
  return out;
}

}  // namespace

Mat transfer_map(const FDBimodule& m) {
  const auto& a = *m.left_algebra();
  const auto& b = *m.right_algebra();
  const Int c = a.conductor();
  const std::size_t d = m.dim();
  const auto xa = dual_basis(a);
  const auto yb = dual_basis(b);

  std::vector<Mat> racts, rdual, lacts, ldual;
  for (std::size_t j = 0; j < b.dim(); ++j) {
    racts.push_back(m.right_action(j));
    rdual.push_back(m.right_matrix(yb[j]));
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    lacts.push_back(m.left_action(i));
    ldual.push_back(m.left_matrix(xa[i]));
  }
  const auto right = dual_basis_system(d, c, racts, rdual);
  if (!right) throw NotProjective("bimodule is not projective as a right module");
  const auto left = dual_basis_system(d, c, lacts, ldual);
  if (!left) throw NotProjective("bimodule is not projective as a left module");

  // Triangle identities: x = sum_k g_k psi_{f_k}(x) on each side.
  for (std::size_t p = 0; p < d; ++p) {
    const Vec e = unit_vec(d, p, c);
    Vec xr = zero_vec(d, c), xl = zero_vec(d, c);
    for (std::size_t k = 0; k < right->generators.size(); ++k)
      axpy(xr, CycloNum(1L, c), m.right_matrix(matched_map(right->functionals[k], e, rdual, c)) * right->generators[k]);
    for (std::size_t k = 0; k < left->generators.size(); ++k)
      axpy(xl, CycloNum(1L, c), m.left_matrix(matched_map(left->functionals[k], e, ldual, c)) * left->generators[k]);
    if (xr != e || xl != e) throw TriangleIdentityFailure("triangle identity fails at basis vector " + std::to_string(p));
  }

  // tr(y) = sum_k phi_{f_k}(g_k y), phi_f(x) = sum_i f(x'_i x) x_i.
  Mat t = zero_mat(a.dim(), b.dim(), c);
  for (std::size_t jb = 0; jb < b.dim(); ++jb)
    for (std::size_t k = 0; k < right->generators.size(); ++k) {
      const Vec gy = m.right_action(jb) * right->generators[k];
      const Vec phi = matched_map(right->functionals[k], gy, ldual, c);
      for (std::size_t i = 0; i < a.dim(); ++i) t(i, jb) += phi[i];
    }
  return t;
}

Mat virtual_transfer(const std::vector<std::pair<FDBimodule, int>>& terms) {
  if (terms.empty()) throw Error("virtual transfer of an empty sum");
  const auto& a = *terms[0].first.left_algebra();
  const auto& b = *terms[0].first.right_algebra();
  Mat t = zero_mat(a.dim(), b.dim(), a.conductor());
  for (const auto& [m, sign] : terms) {
    if (!same_algebra(m.left_algebra(), terms[0].first.left_algebra()) ||
        !same_algebra(m.right_algebra(), terms[0].first.right_algebra()))
      throw Error("virtual transfer: terms over different algebras");
    add_into(t, CycloNum(static_cast<long>(sign), a.conductor()), transfer_map(m));
  }
  return t;
}

VirtualMoritaResult is_virtual_morita(const VirtualBimoduleMatrix& a) {
  VirtualMoritaResult res;
  const std::size_t na = a.size(), nb = na ? a[0].size() : 0;
  auto check = [](std::size_t n, auto entry) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (entry(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  };
  res.left_identity = check(na, [&](std::size_t i, std::size_t j) {
    Int s = 0;
    for (std::size_t t = 0; t < nb; ++t) s += a[i][t] * a[j][t];
    return s;
  });
  res.right_identity = check(nb, [&](std::size_t i, std::size_t j) {
    Int s = 0;
    for (std::size_t t = 0; t < na; ++t) s += a[t][i] * a[t][j];
    return s;
  });
  res.pass = res.left_identity && res.right_identity;
  if (res.pass)
    for (const auto& row : a)
      for (std::size_t t = 0; t < nb; ++t)
        if (row[t] != 0) {
          res.bijection.push_back(t);
          res.signs.push_back(static_cast<int>(row[t]));
        }
  return res;
}

Int simple_dimension(const SplitSemisimple& a, std::size_t i) {
  const Int r = static_cast<Int>(rank(a.algebra->left_matrix(a.idempotents[i])));
  Int s = 0;
  while ((s + 1) * (s + 1) <= r) ++s;
  if (s * s != r) throw Error("idempotent " + std::to_string(i) + " does not cut out a split simple block");
  return s;
}

std::vector<CycloNum> schur_elements(const SplitSemisimple& a) {
  std::vector<CycloNum> out;
  for (std::size_t i = 0; i < a.idempotents.size(); ++i) {
    const CycloNum se = a.algebra->s(a.idempotents[i]);
    if (se.is_zero()) throw DegenerateForm("form vanishes on a central idempotent");
    out.push_back(CycloNum(simple_dimension(a, i), a.algebra->conductor()) / se);
  }
  return out;
}

CycloNum schur_ratio(const CycloNum& c_s, const CycloNum& c_t) { return c_s / c_t; }

SplitSemisimple group_algebra_split(const CharacterTable& t, const std::vector<std::size_t>& chars, Int conductor) {
  const Int n = conductor == 0 ? t.exponent() : conductor;
  if (n % t.exponent() != 0) throw ModulusIncompatible("field does not contain the character values");
  const auto& g = t.group();
  SplitSemisimple out;
  out.algebra = std::make_shared<const FDAlgebra>(group_algebra(g, n));
  for (auto chi : chars) {
    Vec e = zero_vec(g.order(), n);
    const Rational f = make_rational(t.degree(chi), t.group_order());
    for (std::size_t i = 0; i < g.order(); ++i) e[i] = t.value(chi, g.inverse_class(g.class_of(i))).lifted(n) * f;
    out.idempotents.push_back(std::move(e));
  }
  return out;
}

CenterIsomorphism center_isomorphism(const SplitSemisimple& a, const SplitSemisimple& b, const VirtualBimoduleMatrix& m) {
  const auto vm = is_virtual_morita(m);
  if (!vm.pass) throw NormalizationUnsolvable("the virtual bimodule is not a virtual Morita equivalence");
  const std::size_t na = a.idempotents.size(), nb = b.idempotents.size();
  if (m.size() != na || (na && m[0].size() != nb)) throw Error("center isomorphism: matrix shape mismatch");
  const Int c = lcm(a.algebra->conductor(), b.algebra->conductor());
  const auto ca = schur_elements(a), cb = schur_elements(b);

  CenterIsomorphism out;
  out.bijection = vm.bijection;
  out.signs = vm.signs;
  out.transfer = zero_mat(na, nb, c);
  out.transfer_dual = zero_mat(nb, na, c);
  for (std::size_t s = 0; s < na; ++s)
    for (std::size_t t = 0; t < nb; ++t) {
      if (m[s][t] == 0) continue;
      const Rational k(m[s][t]);
      out.transfer(s, t) = schur_ratio(ca[s], cb[t]) * k;
      out.transfer_dual(t, s) = schur_ratio(cb[t], ca[s]) * k;
    }
  const auto u = solve(out.transfer_dual, Vec(nb, CycloNum(1L, c)));
  const auto v = solve(out.transfer, Vec(na, CycloNum(1L, c)));
  if (!u || !v) throw NormalizationUnsolvable("no normalizing element for the transfer maps");
  out.u = *u;
  out.v = *v;
  out.alpha = out.transfer_dual;
  out.beta = out.transfer;
  for (std::size_t s = 0; s < na; ++s)
    for (std::size_t t = 0; t < nb; ++t) {
      out.alpha(t, s) *= out.u[s];
      out.beta(s, t) *= out.v[t];
    }
  if (out.alpha * out.beta != identity_mat(nb, c) || out.beta * out.alpha != identity_mat(na, c))
    throw NormalizationUnsolvable("alpha and beta are not mutually inverse");

  // x -> (s(x e_S) / s(e_S))_S reads off idempotent coordinates of central x.
  auto coords = [c](const SplitSemisimple& x) {
    const auto& alg = *x.algebra;
    const Mat g = alg.gram();
    Mat l = zero_mat(x.idempotents.size(), alg.dim(), c);
    for (std::size_t s = 0; s < x.idempotents.size(); ++s) {
      const CycloNum inv = alg.s(x.idempotents[s]).inverse();
      const Vec ge = g * x.idempotents[s];
      for (std::size_t i = 0; i < alg.dim(); ++i) l(s, i) = ge[i] * inv;
    }
    return l;
  };
  auto embed = [c](const SplitSemisimple& x) {
    Mat e = zero_mat(x.algebra->dim(), x.idempotents.size(), c);
    for (std::size_t s = 0; s < x.idempotents.size(); ++s)
      for (std::size_t i = 0; i < x.algebra->dim(); ++i) e(i, s) = x.idempotents[s][i];
    return e;
  };
  out.alpha_full = embed(b) * out.alpha * coords(a);
  out.beta_full = embed(a) * out.beta * coords(b);
  return out;
}

}  // namespace mbl
