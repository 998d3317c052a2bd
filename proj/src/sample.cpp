#include "qball/sample.hpp"

#include <algorithm>

namespace qball {

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Scalar Sampler::coefficient() {
  int c = 0;
  while (c == 0) c = uniform(-3, 3);
  return Scalar(c) * Scalar::q_power(uniform(-2, 2));
}

std::vector<Pos> Sampler::zword(const Shape& shape, int length) {
  std::vector<Pos> w;
  for (int i = 0; i < length; ++i)
    w.push_back(Pos{std::uint8_t(uniform(1, shape.n)), std::uint8_t(uniform(1, shape.m))});
  std::sort(w.begin(), w.end());
  return w;
}

NormalMonomial Sampler::monomial(const Shape& shape, const SampleSpec& spec) {
  for (;;) {
    NormalMonomial mono;
    mono.zword = zword(shape, uniform(0, spec.max_z_degree));
    mono.has_f0 = spec.finite || uniform(0, 1) == 1;
    mono.zsword = zword(shape, uniform(0, spec.max_zstar_degree));
    std::reverse(mono.zsword.begin(), mono.zsword.end());
    if (mono.total_degree() <= spec.max_total_degree) return mono;
  }
}

Element Sampler::element(const Algebra& algebra, const SampleSpec& spec) {
  Element f = algebra.zero();
  while (f.is_zero()) {
    const int terms = uniform(1, spec.max_terms);
    for (int i = 0; i < terms; ++i) {
      const NormalMonomial mono = monomial(algebra.shape(), spec);
      if (f.coefficient(mono).is_zero()) f.add_term(mono, coefficient());
    }
  }
  return f;
}

std::vector<NormalMonomial> sandwich_monomials(const Shape& shape, int cap) {
  std::vector<NormalMonomial> out;
  for (int i = 0; i <= cap; ++i)
    for (const auto& psi : sorted_zwords(shape, i))
      for (int j = 0; j <= cap; ++j)
        for (auto phi : sorted_zwords(shape, j)) {
          std::reverse(phi.begin(), phi.end());
          out.push_back(NormalMonomial{psi, true, phi});
        }
  return out;
}

}  // namespace qball
