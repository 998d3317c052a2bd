#pragma once

// Action of the Chevalley generators of U_q sl_N on Fun(U)_q.
//
// Generators act on z_a^alpha and f0 by explicit tables. Starred letters are
// handled through star compatibility, g(f^*) = (S^{-1}(g^*) f)^*, and products
// through the coproduct (a twisted Leibniz rule). K_k acts on a weight vector
// of weight lambda as q^{lambda_k}.

#include <optional>
#include <string>
#include <vector>

#include "qball/algebra.hpp"

namespace qball {

enum class GenKind : std::uint8_t { E, F, K, Kinv };

struct QGen {
  GenKind kind = GenKind::K;
  int k = 1;  // 1..N-1

  static QGen E(int k) { return {GenKind::E, k}; }
  static QGen F(int k) { return {GenKind::F, k}; }
  static QGen K(int k) { return {GenKind::K, k}; }
  static QGen Kinv(int k) { return {GenKind::Kinv, k}; }

  std::string name() const;
  friend bool operator==(const QGen&, const QGen&) = default;
};

/// All 4(N-1) generators E_k, F_k, K_k, K_k^{-1}.
std::vector<QGen> all_generators(const Shape& shape);
Scalar counit(QGen g);

/// Eigenvalues of H_1..H_{N-1}.
using Weight = std::vector<int>;

Weight weight_of(const Shape& shape, Letter x);
Weight weight_of(const Shape& shape, const NormalMonomial& mono);
Weight weight_of(const Shape& shape, const Word& word);

/// Coproduct and antipode on the Chevalley generators:
///   Δ(E) = E ⊗ K^{e_right} + K^{e_left} ⊗ E,  S(E) = -K^{se_left} E K^{se_right}
///   Δ(F) = F ⊗ K^{f_right} + K^{f_left} ⊗ F,  S(F) = -K^{sf_left} F K^{sf_right}
///   Δ(K) = K ⊗ K, S(K) = K^{-1}, ε(E) = ε(F) = 0, ε(K) = 1.
struct HopfConvention {
  std::string name = "standard";
  int e_left = 1, e_right = 0;
  int f_left = 0, f_right = -1;
  int se_left = -1, se_right = 0;
  int sf_left = 0, sf_right = 1;

  /// Δ(E) = E⊗1 + K⊗E, Δ(F) = F⊗K^{-1} + 1⊗F.
  static HopfConvention standard() { return {}; }
  /// Δ(E) = E⊗K + 1⊗E, Δ(F) = F⊗1 + K^{-1}⊗F with the matching antipode.
  static HopfConvention swapped() { return {"swapped", 0, 1, -1, 0, 0, -1, 1, 0}; }

  /// m(S ⊗ id)Δ = m(id ⊗ S)Δ = ε on E and F.
  bool antipode_consistent() const;
  friend bool operator==(const HopfConvention&, const HopfConvention&) = default;
};

struct CovarianceReport {
  bool passed = true;
  long checks = 0;
  std::string first_failure;  // empty when passed
};

class Action {
 public:
  /// The standard convention is accepted as validated; any other convention
  /// must pass validate() before act() may be used.
  explicit Action(const Algebra& algebra, HopfConvention convention = HopfConvention::standard());

  const Algebra& algebra() const { return algebra_; }
  const HopfConvention& convention() const { return convention_; }
  bool validated() const { return validated_; }

  void check_generator(QGen g) const;

  Element act_on_z(QGen g, Pos p) const;
  Element act_on_f0(QGen g) const;
  /// Derived from act_on_z by star compatibility; tabulated on first use.
  Element act_on_zstar(QGen g, Pos p) const;
  Element act_on_letter(QGen g, Letter x) const;

  /// g · f. Throws UnvalidatedConvention for an unvalidated convention.
  Element act(QGen g, const Element& f) const;
  /// Applies gens[0] first, then gens[1], ...
  Element act_sequence(const std::vector<QGen>& gens, const Element& f) const;
  /// g · (coeff * word) for a free word, via the coproduct.
  Element act_word(QGen g, const Word& word, const Scalar& coeff = Scalar(1)) const;
  /// S^{-1}(g^*) · f.
  Element act_antipode_star(QGen g, const Element& f) const;

  /// Checks that every generator preserves every defining relation, star
  /// compatibility on monomials of degree <= 2, and the U_q sl_N relations
  /// as operators on all normal monomials of degree <= degree_cap.
  /// Marks the action validated on success.
  CovarianceReport validate(int degree_cap = 3);

 private:
  CovarianceReport run_validation(int degree_cap) const;
  Element act_unchecked(QGen g, const Element& f) const;
  Element act_monomial(QGen g, const NormalMonomial& mono) const;
  Element leibniz(QGen g, const Word& word) const;
  Scalar k_power(int k_index, int exponent, const Weight& w) const;

  const Algebra& algebra_;
  HopfConvention convention_;
  bool validated_ = false;
  mutable std::vector<std::optional<Element>> zstar_table_;
};

/// Runs Action::validate for a fresh action with the given convention.
CovarianceReport validate_covariance(const Algebra& algebra, const HopfConvention& convention,
                                     int degree_cap = 3);

}  // namespace qball
