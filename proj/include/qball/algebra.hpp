#pragma once

// The *-algebras C[Mat_mn]_q ⊂ Pol(Mat_mn)_q ⊂ Fun(U)_q.
//
// Elements are kept in the normal basis z-word · [f0] · z*-word. The z-word is
// sorted ascending in (a, alpha); the z*-word is sorted descending, so that its
// star is a normal z-word. Multiplication appends letters one at a time and
// rewrites with the commutation relations of the generators z_a^alpha.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qball/scalar.hpp"

namespace qball {

struct Shape {
  int m = 1;  // columns: superscript alpha ranges over 1..m
  int n = 1;  // rows: subscript a ranges over 1..n

  int N() const { return m + n; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Validates m, n >= 1; throws IndexError otherwise.
Shape make_shape(int m, int n);

/// Index pair (a, alpha) of a generator z_a^alpha; ordered lexicographically.
struct Pos {
  std::uint8_t a = 1;
  std::uint8_t alpha = 1;

  friend auto operator<=>(const Pos&, const Pos&) = default;
};

enum class LetterKind : std::uint8_t { Z, ZStar, F0 };

struct Letter {
  LetterKind kind = LetterKind::F0;
  Pos pos{};

  static Letter z(int a, int alpha) { return {LetterKind::Z, Pos{std::uint8_t(a), std::uint8_t(alpha)}}; }
  static Letter zs(int a, int alpha) { return {LetterKind::ZStar, Pos{std::uint8_t(a), std::uint8_t(alpha)}}; }
  static Letter z(Pos p) { return {LetterKind::Z, p}; }
  static Letter zs(Pos p) { return {LetterKind::ZStar, p}; }
  static Letter f0() { return {LetterKind::F0, Pos{}}; }

  Letter starred() const;

  friend bool operator==(const Letter& x, const Letter& y) {
    return x.kind == y.kind && (x.kind == LetterKind::F0 || x.pos == y.pos);
  }
};

using Word = std::vector<Letter>;

struct NormalMonomial {
  std::vector<Pos> zword;   // ascending
  bool has_f0 = false;
  std::vector<Pos> zsword;  // descending

  static NormalMonomial one() { return {}; }
  static NormalMonomial f0() { return {{}, true, {}}; }

  int total_degree() const { return int(zword.size() + zsword.size()) + (has_f0 ? 1 : 0); }
  bool is_one() const { return zword.empty() && zsword.empty() && !has_f0; }
  Word letters() const;

  friend bool operator==(const NormalMonomial&, const NormalMonomial&) = default;
};

/// Basis order: higher total degree first, then monomials without f0, then
/// lexicographic in the z-word and the z*-word.
struct MonomialOrder {
  bool operator()(const NormalMonomial& x, const NormalMonomial& y) const;
};

struct MonomialHash {
  std::size_t operator()(const NormalMonomial& mono) const;
};

struct Bidegree {
  int z_degree = 0;
  int zstar_degree = 0;
  bool has_f0 = false;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

Bidegree bidegree(const NormalMonomial& mono);

/// A finite Scalar-weighted sum of normal monomials; zero coefficients are never stored.
class Element {
 public:
  using Terms = std::map<NormalMonomial, Scalar, MonomialOrder>;

  explicit Element(Shape shape) : shape_(shape) {}
  Element(Shape shape, NormalMonomial mono, Scalar coeff = Scalar(1));

  static Element scalar(Shape shape, const Scalar& c) { return Element(shape, NormalMonomial::one(), c); }

  const Shape& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of mono, zero when absent.
  Scalar coefficient(const NormalMonomial& mono) const;

  void add_term(const NormalMonomial& mono, const Scalar& coeff);
  void add_scaled(const Element& other, const Scalar& coeff);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Scalar& c);
  Element operator-() const;
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }

  friend bool operator==(const Element& x, const Element& y) {
    return x.shape_ == y.shape_ && x.terms_ == y.terms_;
  }

 private:
  Shape shape_;
  Terms terms_;
};

/// Antilinear anti-automorphism; coefficients are real so they are unchanged.
Element star(const Element& f);
NormalMonomial star(const NormalMonomial& mono);
/// The sub-sum of terms containing f0, i.e. the component in D(U)_q.
Element project_finite(const Element& f);
bool is_finite(const Element& f);

struct AlgebraOptions {
  /// Test hook: replaces the q^{-1} entry of the row R-table by q.
  bool perturb_r_prime = false;
};

/// One term of a rewrite: coeff * left * right (left, right are z / z* letters).
struct PairTerm {
  Scalar coeff;
  Pos left;
  Pos right;
};

struct RewriteStats {
  long steps = 0;
  long max_chain = 0;
  /// Set when some rewrite step failed to decrease termination_bound.
  bool bound_violated = false;
};

class Algebra {
 public:
  explicit Algebra(Shape shape, AlgebraOptions options = {});
  ~Algebra();
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const Shape& shape() const { return shape_; }
  const AlgebraOptions& options() const { return options_; }

  Element zero() const { return Element(shape_); }
  Element one() const { return Element::scalar(shape_, Scalar(1)); }
  Element scalar(const Scalar& c) const { return Element::scalar(shape_, c); }
  Element letter(Letter x) const;
  Element z(int a, int alpha) const { return letter(Letter::z(a, alpha)); }
  Element zs(int a, int alpha) const { return letter(Letter::zs(a, alpha)); }
  Element f0() const { return letter(Letter::f0()); }
  Element monomial(const NormalMonomial& mono, const Scalar& c = Scalar(1)) const;

  /// Coefficient tables of the z*–z commutation relation.
  Scalar r_prime(int b, int a, int b_prime, int a_prime) const;
  Scalar r_double_prime(int beta_prime, int alpha_prime, int beta, int alpha) const;

  void check_letter(Letter x) const;
  void check_monomial(const NormalMonomial& mono) const;

  /// Normal form of coeff * (free word).
  Element normal_form(const Word& word, const Scalar& coeff = Scalar(1)) const;
  Element multiply(const Element& f, const Element& g) const;
  Element mul_letter(const Element& f, Letter x) const;
  Element mul_letter(const NormalMonomial& mono, Letter x) const;
  /// Product of two normal monomials.
  Element multiply(const NormalMonomial& x, const NormalMonomial& y) const;

  /// Rewrite rules for adjacent letter pairs.
  /// z_y z_x with y > x, as a combination of sorted pairs.
  std::vector<PairTerm> zz_rule(Pos y, Pos x) const;
  /// (z_t)* z_p = sum coeff * z_left (z_right)*  [+ constant returned separately].
  std::vector<PairTerm> mixed_rule(Pos t, Pos p, Scalar& constant) const;

  /// Literal leftmost-redex rewriting of a free word, independent of the
  /// memoized engine. Records the longest rewrite chain and checks it against
  /// termination_bound on every intermediate word.
  Element rewrite_literal(const Word& word, RewriteStats* stats = nullptr) const;

  /// Upper bound on the length of any rewrite chain starting at word, from the
  /// measure (star-z inversions, row inversions, column inversions).
  static long termination_bound(const Word& word);

 private:
  Element normalize_zword(const std::vector<Pos>& word) const;
  Element rewrite_literal_rec(const Word& word, long depth, RewriteStats* stats) const;

  Shape shape_;
  AlgebraOptions options_;
  Scalar q_inv_;
  Scalar q_sq_;
  Scalar one_minus_q2_;
  Scalar q_minus_q_inv_;
  Scalar r_offdiag_;  // q^{-1} entry of both R-tables
  Scalar r_lower_;    // -(q^{-2} - 1)

  struct Caches;
  std::unique_ptr<Caches> caches_;
};

/// Text form, e.g. "q^2 * z[1,1]*zs[1,1] + (1 - q^2)"; parseable by the expression front-end.
std::string to_string(const NormalMonomial& mono);
std::string to_string(const Element& f);

/// All ascending z-words of the given length (multisets of letters).
std::vector<std::vector<Pos>> sorted_zwords(const Shape& shape, int length);
/// Every normal monomial with total degree (f0 counted once) at most cap.
std::vector<NormalMonomial> normal_monomials(const Shape& shape, int cap);

}  // namespace qball
