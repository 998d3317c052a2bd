#pragma once

// Reproducible random elements for property checks.

#include <random>
#include <vector>

#include "qball/algebra.hpp"

namespace qball {

struct SampleSpec {
  int max_z_degree = 2;
  int max_zstar_degree = 2;
  int max_terms = 3;
  bool finite = false;  // every term carries f0
  int max_total_degree = 1 << 20;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);
  Scalar coefficient();
  std::vector<Pos> zword(const Shape& shape, int length);
  NormalMonomial monomial(const Shape& shape, const SampleSpec& spec);
  /// Nonzero element with at most spec.max_terms distinct monomials, each
  /// with a coefficient c q^k, so it stays nonzero at every q > 0.
  Element element(const Algebra& algebra, const SampleSpec& spec);

 private:
  std::mt19937_64 rng_;
};

/// All sandwich monomials psi f0 phi* with deg psi, deg phi <= cap.
std::vector<NormalMonomial> sandwich_monomials(const Shape& shape, int cap);

}  // namespace qball
