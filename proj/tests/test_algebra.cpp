#include <gtest/gtest.h>

#include "qball/error.hpp"
#include "qball/sample.hpp"
#include "support.hpp"

using namespace qball;

namespace {

const Scalar q = Scalar::q();

std::vector<Shape> small_shapes() { return {make_shape(1, 1), make_shape(1, 2), make_shape(2, 1), make_shape(2, 2)}; }

Element sum_of(const Algebra& alg, const std::vector<oracle::Term>& terms) {
  Element out = alg.zero();
  for (const auto& t : terms) out += alg.normal_form(t.word, t.coeff);
  return out;
}

std::vector<Pos> positions(const Shape& sh) {
  std::vector<Pos> out;
  for (int a = 1; a <= sh.n; ++a)
    for (int alpha = 1; alpha <= sh.m; ++alpha) out.push_back(Pos{std::uint8_t(a), std::uint8_t(alpha)});
  return out;
}

}  // namespace

TEST(Algebra, DiscRelationOnEveryShape) {
  for (const Shape& sh : small_shapes()) {
    Algebra alg(sh);
    const Letter top = Letter::z(sh.n, sh.m);
    const Element lhs = alg.normal_form({top.starred(), top});
    Element rhs = alg.monomial(NormalMonomial{{top.pos}, false, {top.pos}}, q * q);
    rhs += alg.scalar(Scalar(1) - q * q);
    EXPECT_EQ(lhs, rhs) << sh.m << "x" << sh.n;
  }
}

TEST(Algebra, DiscRelationPrint) {
  Algebra alg(make_shape(1, 1));
  EXPECT_EQ(to_string(alg.normal_form({Letter::zs(1, 1), Letter::z(1, 1)})), "q^2 * z[1,1]*zs[1,1] + (1 - q^2)");
}

TEST(Algebra, RTableExamples) {
  Algebra alg(make_shape(2, 2));
  EXPECT_EQ(alg.r_prime(1, 2, 1, 2), q.inverse());
  EXPECT_EQ(alg.r_prime(1, 1, 1, 1), Scalar(1));
  EXPECT_EQ(alg.r_prime(1, 1, 2, 2), -(q.pow(-2) - Scalar(1)));
  EXPECT_EQ(alg.r_double_prime(2, 1, 2, 1), q.inverse());
  EXPECT_EQ(alg.r_double_prime(1, 1, 1, 1), Scalar(1));
  EXPECT_EQ(alg.r_double_prime(2, 2, 1, 1), -(q.pow(-2) - Scalar(1)));
}

TEST(Algebra, RTablesMatchCaseList) {
  Algebra alg(make_shape(3, 3));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c)
        for (int d = 1; d <= 3; ++d) {
          EXPECT_EQ(alg.r_prime(a, b, c, d), oracle::r_prime(a, b, c, d));
          EXPECT_EQ(alg.r_double_prime(a, b, c, d), oracle::r_double_prime(a, b, c, d));
        }
}

TEST(Algebra, ZZRelationsHoldForEveryPair) {
  for (const Shape& sh : {make_shape(2, 2), make_shape(3, 2), make_shape(2, 3)}) {
    Algebra alg(sh);
    int used = 0;
    for (Pos x : positions(sh))
      for (Pos y : positions(sh)) {
        const auto rhs = oracle::zz_relation(x.a, x.alpha, y.a, y.alpha);
        if (!rhs) continue;
        ++used;
        EXPECT_EQ(alg.normal_form({Letter::z(x), Letter::z(y)}), sum_of(alg, *rhs));
        // starred form of the same relation
        std::vector<oracle::Term> starred;
        for (const auto& t : *rhs) {
          Word w;
          for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) w.push_back(it->starred());
          starred.push_back({t.coeff, w});
        }
        EXPECT_EQ(alg.normal_form({Letter::zs(y), Letter::zs(x)}), sum_of(alg, starred));
      }
    EXPECT_GT(used, 0);
  }
}

TEST(Algebra, MixedRelationsHoldForEveryPair) {
  for (const Shape& sh : small_shapes()) {
    Algebra alg(sh);
    for (Pos t : positions(sh))
      for (Pos p : positions(sh))
        EXPECT_EQ(alg.normal_form({Letter::zs(t), Letter::z(p)}),
                  sum_of(alg, oracle::mixed_relation(sh, t.a, t.alpha, p.a, p.alpha)));
  }
}

TEST(Algebra, SameRowSwap) {
  Algebra alg(make_shape(2, 2));
  // z_1^1 z_1^2 is already sorted; its reverse picks up q^{-1}
  EXPECT_EQ(alg.normal_form({Letter::z(1, 1), Letter::z(1, 2)}),
            alg.monomial(NormalMonomial{{Pos{1, 1}, Pos{1, 2}}, false, {}}));
  EXPECT_EQ(alg.normal_form({Letter::z(1, 2), Letter::z(1, 1)}),
            alg.monomial(NormalMonomial{{Pos{1, 1}, Pos{1, 2}}, false, {}}, q.inverse()));
}

TEST(Algebra, VacuumRelations) {
  Algebra alg(make_shape(2, 2));
  for (Pos p : positions(alg.shape())) {
    EXPECT_TRUE(alg.normal_form({Letter::f0(), Letter::z(p)}).is_zero());
    EXPECT_TRUE(alg.normal_form({Letter::zs(p), Letter::f0()}).is_zero());
  }
  EXPECT_EQ(alg.normal_form({Letter::f0(), Letter::f0()}), alg.f0());
  EXPECT_EQ(star(alg.f0()), alg.f0());
  EXPECT_EQ(star(alg.z(1, 2)), alg.zs(1, 2));
}

TEST(Algebra, MultiplyExamples) {
  for (const Shape& sh : small_shapes()) {
    Algebra alg(sh);
    const Element top = alg.z(sh.n, sh.m), tops = alg.zs(sh.n, sh.m);
    const Element f = alg.multiply(alg.multiply(top, alg.f0()), tops);
    EXPECT_EQ(alg.multiply(alg.one(), f), f);
    const Pos t{std::uint8_t(sh.n), std::uint8_t(sh.m)};
    EXPECT_EQ(f, alg.monomial(NormalMonomial{{t}, true, {t}}));
    // z z* f0 already vanishes; the contraction needs the letters in the other order
    EXPECT_TRUE(alg.multiply(alg.f0(), alg.multiply(alg.multiply(top, tops), alg.f0())).is_zero());
    EXPECT_EQ(alg.multiply(alg.f0(), alg.multiply(alg.multiply(tops, top), alg.f0())),
              alg.f0() * (Scalar(1) - q * q));
  }
}

TEST(Algebra, BidegreeAndFiniteness) {
  Algebra alg(make_shape(2, 2));
  const Bidegree b0 = bidegree(NormalMonomial::f0());
  EXPECT_EQ(b0.z_degree, 0);
  EXPECT_EQ(b0.zstar_degree, 0);
  EXPECT_TRUE(b0.has_f0);
  const Bidegree b1 = bidegree(NormalMonomial{{Pos{2, 2}}, true, {Pos{2, 2}}});
  EXPECT_EQ(b1.z_degree, 1);
  EXPECT_EQ(b1.zstar_degree, 1);
  const Bidegree b2 = bidegree(NormalMonomial{{Pos{1, 1}, Pos{2, 1}}, false, {}});
  EXPECT_EQ(b2.z_degree, 2);
  EXPECT_FALSE(b2.has_f0);

  EXPECT_EQ(project_finite(alg.f0() + alg.z(1, 1)), alg.f0());
  const Element zf = alg.multiply(alg.z(2, 2), alg.f0());
  EXPECT_EQ(project_finite(zf), zf);
  EXPECT_TRUE(project_finite(alg.one()).is_zero());
  EXPECT_TRUE(is_finite(zf));
  EXPECT_FALSE(is_finite(alg.one()));
}

TEST(Algebra, Errors) {
  Algebra alg(make_shape(1, 2));
  EXPECT_THROW(alg.z(3, 1), IndexError);
  EXPECT_THROW(alg.zs(1, 2), IndexError);
  EXPECT_THROW(alg.z(0, 1), IndexError);
  Algebra other(make_shape(2, 1));
  EXPECT_THROW(alg.one() + other.one(), ShapeMismatch);
  EXPECT_THROW(alg.multiply(alg.one(), other.one()), ShapeMismatch);
  EXPECT_THROW(make_shape(0, 1), Error);
}

TEST(Algebra, Printing) {
  Algebra alg(make_shape(1, 1));
  EXPECT_EQ(to_string(alg.zero()), "0");
  EXPECT_EQ(to_string(alg.one()), "1");
  EXPECT_EQ(to_string(alg.multiply(alg.multiply(alg.z(1, 1), alg.f0()), alg.zs(1, 1))), "z[1,1]*f0*zs[1,1]");
  EXPECT_EQ(to_string(alg.z(1, 1) * Scalar(-1) + alg.one() * Scalar(2)), "-z[1,1] + 2");
}

TEST(AlgebraProperty, AssociativityAndStarLaws) {
  Sampler rng(2024);
  for (const Shape& sh : small_shapes()) {
    Algebra alg(sh);
    const SampleSpec spec{2, 1, 2, false};
    for (int i = 0; i < 30; ++i) {
      const Element u = rng.element(alg, spec), v = rng.element(alg, spec), w = rng.element(alg, spec);
      const Element uv = alg.multiply(u, v);
      EXPECT_EQ(alg.multiply(uv, w), alg.multiply(u, alg.multiply(v, w)));
      EXPECT_EQ(star(uv), alg.multiply(star(v), star(u)));
      EXPECT_EQ(star(star(u)), u);
    }
  }
}

TEST(AlgebraProperty, NormalFormIsIdempotent) {
  Sampler rng(99);
  Algebra alg(make_shape(2, 2));
  for (int i = 0; i < 40; ++i) {
    const Element f = rng.element(alg, SampleSpec{3, 3, 3, false});
    Element renormalized = alg.zero();
    for (const auto& [mono, c] : f.terms()) renormalized += alg.normal_form(mono.letters(), c);
    EXPECT_EQ(renormalized, f);
  }
}

TEST(AlgebraProperty, LiteralRewritingAgreesAndTerminates) {
  Sampler rng(31337);
  for (const Shape& sh : small_shapes()) {
    Algebra alg(sh);
    for (int i = 0; i < 40; ++i) {
      Word w;
      const int len = rng.uniform(2, 5);
      for (int k = 0; k < len; ++k) {
        const int kind = rng.uniform(0, 6);
        const int a = rng.uniform(1, sh.n), alpha = rng.uniform(1, sh.m);
        w.push_back(kind == 0 ? Letter::f0() : kind <= 3 ? Letter::z(a, alpha) : Letter::zs(a, alpha));
      }
      RewriteStats stats;
      EXPECT_EQ(alg.rewrite_literal(w, &stats), alg.normal_form(w));
      EXPECT_FALSE(stats.bound_violated);
      EXPECT_LE(stats.max_chain, Algebra::termination_bound(w));
    }
  }
}

TEST(AlgebraProperty, DiscMatchesContractionOracle) {
  Algebra alg(make_shape(1, 1));
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; l <= 4; ++l) {
      const std::string word = std::string(k, 'S') + std::string(l, 'Z');
      Word w;
      for (char c : word) w.push_back(c == 'S' ? Letter::zs(1, 1) : Letter::z(1, 1));
      Element expected = alg.zero();
      for (const auto& [nw, c] : oracle::disc_normal_order(word)) {
        NormalMonomial mono;
        for (char x : nw) (x == 'Z' ? mono.zword : mono.zsword).push_back(Pos{1, 1});
        expected.add_term(mono, oracle::to_scalar(c));
      }
      EXPECT_EQ(alg.normal_form(w), expected) << word;
    }
}
