#pragma once

// The graded space H = C[Mat_mn]_q f0, the representation T of D(U)_q on H,
// the scalar product, the twist Γ(e^{hρ̌}) = ∏ K_j^{-j(N-j)} and the invariant
// integral f ↦ Tr(T(f) Γ(e^{hρ̌})).

#include <map>
#include <mutex>
#include <vector>

#include "qball/action.hpp"
#include "qball/matrix.hpp"

namespace qball {

struct OperatorBlock {
  int source_degree = 0;
  int target_degree = 0;
  Matrix<Scalar> matrix;  // rows: basis(target_degree), cols: basis(source_degree)
};

struct GramMatrix {
  int degree = 0;
  Matrix<Scalar> matrix;
};

class Harmonic {
 public:
  explicit Harmonic(const Action& action);

  const Algebra& algebra() const { return algebra_; }
  const Action& action() const { return action_; }

  /// Monomials w f0 with |w| = j, in canonical order.
  const std::vector<NormalMonomial>& basis(int j) const;
  /// Position of mono in basis(j), or -1.
  int basis_index(const NormalMonomial& mono) const;

  /// j such that H_0 mono = 2j mono. Throws when mono is not in H.
  int h0_degree(const NormalMonomial& mono) const;
  /// M(f) = 1 + max z*-degree over terms; T_f vanishes on H_j for j >= M(f).
  int degree_bound(const Element& f) const;

  /// Nonzero blocks H_j -> H_j' of T_f, ordered by target degree.
  std::vector<OperatorBlock> t_matrix(const Element& f, int j) const;
  /// Coordinates of T_f psi for psi in H.
  Element apply(const Element& f, const Element& psi) const;

  const GramMatrix& gram(int j) const;
  /// (psi1, psi2): the coefficient of f0 in psi1^* psi2.
  Scalar inner_product(const Element& psi1, const Element& psi2) const;

  /// Diagonal block of Γ(e^{hρ̌}) on basis(j).
  OperatorBlock gamma_rho(int j) const;

  Scalar integrate(const Element& f) const;
  /// Gram matrix of degree j at q = q_value is positive definite.
  bool check_positive(int j, const Rational& q_value) const;
  /// integrate(g f) - ε(g) integrate(f).
  Scalar check_invariance(QGen g, const Element& f) const;

 private:
  void require_finite(const Element& f) const;
  Scalar gamma_entry(const NormalMonomial& mono) const;

  const Action& action_;
  const Algebra& algebra_;

  mutable std::mutex mu_;
  mutable std::map<int, std::vector<NormalMonomial>> bases_;
  mutable std::map<NormalMonomial, int, MonomialOrder> index_;
  mutable std::map<int, GramMatrix> grams_;
};

Matrix<Rational> evaluate_at(const Matrix<Scalar>& m, const Rational& q_value);
/// Determinants of the leading k x k submatrices, k = 1..n.
std::vector<Rational> leading_principal_minors(const Matrix<Rational>& m);
/// Sylvester's criterion on a symmetric matrix.
bool is_positive_definite(const Matrix<Rational>& m);

}  // namespace qball
