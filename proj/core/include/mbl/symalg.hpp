#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbl/character_table.hpp"
#include "mbl/cyclotomic.hpp"
#include "mbl/linalg.hpp"
#include "mbl/perm_group.hpp"

namespace mbl {

using Vec = std::vector<CycloNum>;
using Mat = Matrix<CycloNum>;

/// Finite-dimensional algebra over Q(zeta_n) with a chosen linear form s.
/// Elements are coordinate vectors in the basis x_0, ..., x_{d-1}.
class FDAlgebra {
 public:
  FDAlgebra(Int conductor, std::vector<std::vector<Vec>> structure, Vec unit, Vec form);

  Int conductor() const { return conductor_; }
  std::size_t dim() const { return unit_.size(); }
  const Vec& product(std::size_t i, std::size_t j) const { return structure_[i][j]; }
  const Vec& unit() const { return unit_; }
  const Vec& form() const { return form_; }

  Vec zero_vector() const;
  Vec basis_vector(std::size_t i) const;
  Vec mul(const Vec& a, const Vec& b) const;
  CycloNum s(const Vec& a) const;
  // Columns: a * x_j (left) and x_j * a (right).
  Mat left_matrix(const Vec& a) const;
  Mat right_matrix(const Vec& a) const;
  // Gram matrix s(x_i x_j).
  Mat gram() const;
  std::vector<Vec> center_basis() const;

  FDAlgebra with_form(Vec form) const;

  /// Associativity, unit laws, s(ab) = s(ba) and an invertible Gram matrix.
  /// Throws Error, or DegenerateForm for a singular Gram matrix.
  void validate() const;

  bool operator==(const FDAlgebra& o) const;

 private:
  Int conductor_;
  std::vector<std::vector<Vec>> structure_;
  Vec unit_;
  Vec form_;
};

using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

/// Q(zeta_n)G with basis g.elements() and form scale * (coefficient of 1).
FDAlgebra group_algebra(const PermGroup& g, Int conductor = 1, const CycloNum& scale = CycloNum(1L));
/// K^k with basis the primitive idempotents and s(e_i) = form_values[i].
FDAlgebra split_commutative_algebra(const Vec& form_values, Int conductor = 1);
/// eAe for an idempotent e, with the restricted form.
FDAlgebra corner_algebra(const FDAlgebra& a, const Vec& e);
/// The embedding of eAe in A, columns = images of the corner basis.
Mat corner_embedding(const FDAlgebra& a, const Vec& e);

/// x'_j with s(x_i x'_j) = delta_ij. Throws DegenerateForm.
std::vector<Vec> dual_basis(const FDAlgebra& a);

/// (A, B)-bimodule: left[i] is the action of x_i of A, right[j] the action
/// m -> m * y_j of B, both as matrices on column vectors.
class FDBimodule {
 public:
  FDBimodule(AlgebraPtr left, AlgebraPtr right, std::vector<Mat> left_actions, std::vector<Mat> right_actions);

  const AlgebraPtr& left_algebra() const { return left_; }
  const AlgebraPtr& right_algebra() const { return right_; }
  std::size_t dim() const { return dim_; }
  const Mat& left_action(std::size_t i) const { return left_actions_[i]; }
  const Mat& right_action(std::size_t j) const { return right_actions_[j]; }
  Mat left_matrix(const Vec& a) const;
  Mat right_matrix(const Vec& b) const;

  /// Both actions are representations and they commute. Throws Error.
  void validate() const;

 private:
  AlgebraPtr left_, right_;
  std::size_t dim_ = 0;
  std::vector<Mat> left_actions_, right_actions_;
};

FDBimodule regular_bimodule(const AlgebraPtr& a);
/// A as an (A, B)-bimodule through an algebra map phi : B -> A, given by the
/// columns phi(y_j).
FDBimodule restriction_bimodule(const AlgebraPtr& a, const AlgebraPtr& b, const Mat& phi);
/// S (x)_K T for a left A-module S and a right B-module T, given by their
/// action matrices on the bases.
FDBimodule outer_tensor(const AlgebraPtr& a, const std::vector<Mat>& left_module, const AlgebraPtr& b,
                        const std::vector<Mat>& right_module);
/// The left ideal Af as an (A, fAf)-bimodule; `corner` must have the basis of
/// corner_algebra(A, f), with any form.
FDBimodule corner_bimodule(const AlgebraPtr& a, const Vec& f, const AlgebraPtr& corner);
FDBimodule direct_sum(const FDBimodule& m, const FDBimodule& n);
/// M^v = Hom_K(M, K) as a (B, A)-bimodule.
FDBimodule bimodule_dual(const FDBimodule& m);

std::size_t tensor_dimension_bound();
void set_tensor_dimension_bound(std::size_t bound);

/// M (x)_B N as the quotient of M (x)_K N by m*b (x) n - m (x) b*n. Throws
/// Error on mismatched middle algebras and BoundExceeded when dim M * dim N
/// exceeds tensor_dimension_bound().
FDBimodule tensor_over(const FDBimodule& m, const FDBimodule& n);

/// An invertible bimodule map M -> N, if one exists among the intertwiners
/// tried (a basis of the intertwiner space and deterministic combinations).
std::optional<Mat> find_isomorphism(const FDBimodule& m, const FDBimodule& n);

/// tr_M : Z(B) -> Z(A) in degree 0, from the forms carried by A and B. The
/// unit A -> M (x)_B M^v comes from a dual-basis system of M over B, with
/// Hom_B(M, B) identified with M^v through s_B; the counit uses s_A. Both
/// triangle identities are checked before use.
/// Returned as a dim A x dim B matrix; its values on Z(B) are the transfer.
/// Throws NotProjective or TriangleIdentityFailure.
Mat transfer_map(const FDBimodule& m);

/// Sum of sign * tr_M.
Mat virtual_transfer(const std::vector<std::pair<FDBimodule, int>>& terms);

/// Integer matrix a[S][T] of a virtual bimodule sum a(S,T) S (x) T^v.
using VirtualBimoduleMatrix = std::vector<std::vector<Int>>;

struct VirtualMoritaResult {
  bool pass = false;
  bool left_identity = false;   // a a^T = Id, i.e. M.M^v = [A]
  bool right_identity = false;  // a^T a = Id, i.e. M^v.M = [B]
  std::vector<std::size_t> bijection;
  std::vector<int> signs;
};

VirtualMoritaResult is_virtual_morita(const VirtualBimoduleMatrix& a);

/// Split semisimple algebra with its central primitive idempotents (the sum of
/// which is taken as the unit of the part considered).
struct SplitSemisimple {
  AlgebraPtr algebra;
  std::vector<Vec> idempotents;
};

/// dim S for the simple module belonging to idempotent i: sqrt(dim A e_i).
Int simple_dimension(const SplitSemisimple& a, std::size_t i);
/// Schur elements c_S with s = sum_S chi_S / c_S, so c_S = dim S / s(e_S).
std::vector<CycloNum> schur_elements(const SplitSemisimple& a);

/// tr_{S (x) T^v}(e_T) = (c_S / c_T) e_S.
CycloNum schur_ratio(const CycloNum& c_s, const CycloNum& c_t);

/// Q(zeta_n)G with the idempotents e_chi, n = exp(G) unless given.
SplitSemisimple group_algebra_split(const CharacterTable& t, const std::vector<std::size_t>& chars, Int conductor = 0);

struct CenterIsomorphism {
  std::vector<std::size_t> bijection;
  std::vector<int> signs;
  // In the idempotent bases.
  Mat transfer, transfer_dual;  // tr_M : Z(B) -> Z(A), tr_{M^v} : Z(A) -> Z(B)
  Vec u, v;                     // tr_{M^v}(u) = 1_B, tr_M(v) = 1_A
  Mat alpha, beta;              // alpha(z) = tr_{M^v}(uz), beta(y) = tr_M(vy)
  // On algebra coordinates: alpha_full is dim B x dim A, beta_full dim A x dim B.
  Mat alpha_full, beta_full;
};

/// From a verified virtual Morita matrix. Throws NormalizationUnsolvable if a
/// is not one or u, v cannot be solved for.
CenterIsomorphism center_isomorphism(const SplitSemisimple& a, const SplitSemisimple& b,
                                     const VirtualBimoduleMatrix& m);

}  // namespace mbl
