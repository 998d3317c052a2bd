#include "qball/action.hpp"

#include <cstdlib>

#include "qball/error.hpp"

namespace qball {

std::string QGen::name() const {
  switch (kind) {
    case GenKind::E:
      return "E" + std::to_string(k);
    case GenKind::F:
      return "F" + std::to_string(k);
    case GenKind::K:
      return "K" + std::to_string(k);
    case GenKind::Kinv:
      return "Ki" + std::to_string(k);
  }
  return "?";
}

std::vector<QGen> all_generators(const Shape& shape) {
  std::vector<QGen> out;
  for (int k = 1; k < shape.N(); ++k)
    for (GenKind kind : {GenKind::E, GenKind::F, GenKind::K, GenKind::Kinv}) out.push_back({kind, k});
  return out;
}

Scalar counit(QGen g) {
  return (g.kind == GenKind::K || g.kind == GenKind::Kinv) ? Scalar(1) : Scalar();
}

Weight weight_of(const Shape& shape, Letter x) {
  const int n = shape.n, m = shape.m, N = shape.N();
  Weight w(std::size_t(N - 1), 0);
  if (x.kind == LetterKind::F0) return w;
  const int a = x.pos.a, alpha = x.pos.alpha;
  for (int k = 1; k < N; ++k) {
    int h = 0;
    if (k < n) {
      h = (a == k) ? 1 : (a == k + 1) ? -1 : 0;
    } else if (k > n) {
      h = (alpha == N - k) ? 1 : (alpha == N - k + 1) ? -1 : 0;
    } else {
      h = (a == n ? 1 : 0) + (alpha == m ? 1 : 0);
    }
    w[std::size_t(k - 1)] = x.kind == LetterKind::ZStar ? -h : h;
  }
  return w;
}

Weight weight_of(const Shape& shape, const Word& word) {
  Weight w(std::size_t(shape.N() - 1), 0);
  for (Letter x : word) {
    Weight lw = weight_of(shape, x);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += lw[i];
  }
  return w;
}

Weight weight_of(const Shape& shape, const NormalMonomial& mono) { return weight_of(shape, mono.letters()); }

bool HopfConvention::antipode_consistent() const {
  return se_left == -e_left && se_right == -e_right && sf_left == -f_left && sf_right == -f_right;
}

Action::Action(const Algebra& algebra, HopfConvention convention)
    : algebra_(algebra),
      convention_(std::move(convention)),
      validated_(convention_ == HopfConvention::standard()) {}

void Action::check_generator(QGen g) const {
  if (g.k < 1 || g.k >= algebra_.shape().N())
    throw IndexError("generator index " + std::to_string(g.k) + " out of range 1.." +
                     std::to_string(algebra_.shape().N() - 1));
}

Scalar Action::k_power(int k_index, int exponent, const Weight& w) const {
  return Scalar::q_power(exponent * w[std::size_t(k_index - 1)]);
}

Element Action::act_on_z(QGen g, Pos p) const {
  check_generator(g);
  algebra_.check_letter(Letter::z(p));
  const Shape& sh = algebra_.shape();
  const int n = sh.n, m = sh.m, N = sh.N(), k = g.k;
  const int a = p.a, alpha = p.alpha;
  auto z = [](int r, int c) { return Letter::z(r, c); };
  switch (g.kind) {
    case GenKind::K:
    case GenKind::Kinv: {
      const int e = g.kind == GenKind::K ? 1 : -1;
      return algebra_.letter(Letter::z(p)) * k_power(k, e, weight_of(sh, Letter::z(p)));
    }
    case GenKind::F:
      if (k < n) return a == k ? algebra_.z(a + 1, alpha) * Scalar::s() : algebra_.zero();
      if (k > n) return alpha == N - k ? algebra_.z(a, alpha + 1) * Scalar::s() : algebra_.zero();
      return (a == n && alpha == m) ? algebra_.scalar(Scalar::s()) : algebra_.zero();
    case GenKind::E: {
      if (k < n) return a == k + 1 ? algebra_.z(a - 1, alpha) * Scalar::s_power(-1) : algebra_.zero();
      if (k > n) return alpha == N - k + 1 ? algebra_.z(a, alpha - 1) * Scalar::s_power(-1) : algebra_.zero();
      const Scalar minus_s = -Scalar::s();
      if (a != n && alpha != m) return algebra_.normal_form({z(a, m), z(n, alpha)}, minus_s * Scalar::q_power(-1));
      if (a == n && alpha == m) return algebra_.normal_form({z(n, m), z(n, m)}, minus_s);
      return algebra_.normal_form({z(n, m), z(a, alpha)}, minus_s);
    }
  }
  return algebra_.zero();
}

Element Action::act_on_f0(QGen g) const {
  check_generator(g);
  const Shape& sh = algebra_.shape();
  if (g.kind == GenKind::K || g.kind == GenKind::Kinv) return algebra_.f0();
  if (g.k != sh.n) return algebra_.zero();
  const Scalar s = Scalar::s();
  if (g.kind == GenKind::E) {
    const Scalar c = -s / (Scalar(1) - Scalar::q_power(2));
    return algebra_.normal_form({Letter::z(sh.n, sh.m), Letter::f0()}, c);
  }
  const Scalar c = -s / (Scalar::q_power(-2) - Scalar(1));
  return algebra_.normal_form({Letter::f0(), Letter::zs(sh.n, sh.m)}, c);
}

Element Action::act_antipode_star(QGen g, const Element& f) const {
  check_generator(g);
  const Shape& sh = algebra_.shape();
  const int j = g.k;
  const Scalar sigma = j == sh.n ? Scalar(-1) : Scalar(1);
  Element out(sh);
  for (const auto& [mono, c] : f.terms()) {
    const int lam = weight_of(sh, mono)[std::size_t(j - 1)];
    const Element e(sh, mono, c);
    switch (g.kind) {
      case GenKind::K:  // S^{-1}(K^*) = K^{-1}
        out.add_scaled(e, Scalar::q_power(-lam));
        break;
      case GenKind::Kinv:
        out.add_scaled(e, Scalar::q_power(lam));
        break;
      case GenKind::E: {
        // S^{-1}(E^*) = -sigma K^{sf_right} F K^{sf_left} K^{-1}
        const Scalar pre = Scalar::q_power(-lam + convention_.sf_left * lam);
        const Scalar post = Scalar::q_power(convention_.sf_right * (lam - 2));
        out.add_scaled(act_unchecked(QGen::F(j), e), -sigma * pre * post);
        break;
      }
      case GenKind::F: {
        // S^{-1}(F^*) = -sigma K K^{se_right} E K^{se_left}
        const Scalar pre = Scalar::q_power(convention_.se_left * lam);
        const Scalar post = Scalar::q_power((convention_.se_right + 1) * (lam + 2));
        out.add_scaled(act_unchecked(QGen::E(j), e), -sigma * pre * post);
        break;
      }
    }
  }
  return out;
}

Element Action::act_on_zstar(QGen g, Pos p) const {
  check_generator(g);
  algebra_.check_letter(Letter::zs(p));
  const Shape& sh = algebra_.shape();
  if (zstar_table_.empty()) zstar_table_.resize(std::size_t(4 * (sh.N() - 1) * sh.m * sh.n));
  const std::size_t slot = ((std::size_t(g.k - 1) * 4 + std::size_t(g.kind)) * std::size_t(sh.n) + (p.a - 1)) *
                               std::size_t(sh.m) +
                           (p.alpha - 1);
  if (!zstar_table_[slot]) zstar_table_[slot] = star(act_antipode_star(g, algebra_.letter(Letter::z(p))));
  return *zstar_table_[slot];
}

Element Action::act_on_letter(QGen g, Letter x) const {
  switch (x.kind) {
    case LetterKind::Z:
      return act_on_z(g, x.pos);
    case LetterKind::ZStar:
      return act_on_zstar(g, x.pos);
    case LetterKind::F0:
      return act_on_f0(g);
  }
  return algebra_.zero();
}

Element Action::leibniz(QGen g, const Word& word) const {
  const Shape& sh = algebra_.shape();
  if (g.kind == GenKind::K || g.kind == GenKind::Kinv) {
    const Scalar c = k_power(g.k, g.kind == GenKind::K ? 1 : -1, weight_of(sh, word));
    return algebra_.normal_form(word, c);
  }
  const bool is_e = g.kind == GenKind::E;
  const int left_exp = is_e ? convention_.e_left : convention_.f_left;
  const int right_exp = is_e ? convention_.e_right : convention_.f_right;
  Element out(sh);
  Element prefix = algebra_.one();
  Weight prefix_w(std::size_t(sh.N() - 1), 0);
  Weight suffix_w = weight_of(sh, word);
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Weight lw = weight_of(sh, word[i]);
    for (std::size_t t = 0; t < lw.size(); ++t) suffix_w[t] -= lw[t];
    Element piece = act_on_letter(g, word[i]);
    if (!piece.is_zero() && !prefix.is_zero()) {
      Element term = algebra_.multiply(prefix, piece);
      for (std::size_t t = i + 1; t < word.size() && !term.is_zero(); ++t) term = algebra_.mul_letter(term, word[t]);
      const Scalar c = k_power(g.k, left_exp, prefix_w) * k_power(g.k, right_exp, suffix_w);
      out.add_scaled(term, c);
    }
    prefix = algebra_.mul_letter(prefix, word[i]);
    for (std::size_t t = 0; t < lw.size(); ++t) prefix_w[t] += lw[t];
  }
  return out;
}

Element Action::act_monomial(QGen g, const NormalMonomial& mono) const { return leibniz(g, mono.letters()); }

Element Action::act_unchecked(QGen g, const Element& f) const {
  check_generator(g);
  if (f.shape() != algebra_.shape()) throw ShapeMismatch();
  Element out(algebra_.shape());
  for (const auto& [mono, c] : f.terms()) out.add_scaled(act_monomial(g, mono), c);
  return out;
}

Element Action::act(QGen g, const Element& f) const {
  if (!validated_)
    throw UnvalidatedConvention("Hopf convention '" + convention_.name +
                                "' has not passed validate_covariance for this shape");
  return act_unchecked(g, f);
}

Element Action::act_sequence(const std::vector<QGen>& gens, const Element& f) const {
  Element cur = f;
  for (QGen g : gens) cur = act(g, cur);
  return cur;
}

Element Action::act_word(QGen g, const Word& word, const Scalar& coeff) const {
  check_generator(g);
  for (Letter x : word) algebra_.check_letter(x);
  return leibniz(g, word) * coeff;
}

namespace {

struct Relation {
  std::string label;
  std::vector<std::pair<Scalar, Word>> terms;  // sum is zero in the algebra
};

std::string pos_text(Pos p) { return "[" + std::to_string(p.a) + "," + std::to_string(p.alpha) + "]"; }

std::vector<Relation> defining_relations(const Algebra& alg) {
  const Shape& sh = alg.shape();
  const Scalar q = Scalar::q();
  std::vector<Relation> rels;
  const Pos top{std::uint8_t(sh.n), std::uint8_t(sh.m)};
  rels.push_back({"(z_n^m)^* z_n^m = q^2 z_n^m (z_n^m)^* + 1 - q^2",
                  {{Scalar(1), {Letter::zs(top), Letter::z(top)}},
                   {-Scalar::q_power(2), {Letter::z(top), Letter::zs(top)}},
                   {-(Scalar(1) - Scalar::q_power(2)), {}}}});
  std::vector<Pos> letters;
  for (int a = 1; a <= sh.n; ++a)
    for (int al = 1; al <= sh.m; ++al) letters.push_back(Pos{std::uint8_t(a), std::uint8_t(al)});
  // z-z relations in the printed orientation z_a^alpha z_b^beta = ...
  for (Pos x : letters) {
    for (Pos y : letters) {
      const int a = x.a, al = x.alpha, b = y.a, be = y.alpha;
      Relation r;
      r.label = "z" + pos_text(x) + " z" + pos_text(y) + " commutation";
      const Word lhs{Letter::z(x), Letter::z(y)}, swapped{Letter::z(y), Letter::z(x)};
      if ((a == b && al < be) || (a < b && al == be)) {
        r.terms = {{Scalar(1), lhs}, {-q, swapped}};
      } else if (a < b && al > be) {
        r.terms = {{Scalar(1), lhs}, {Scalar(-1), swapped}};
      } else if (a < b && al < be) {
        r.terms = {{Scalar(1), lhs},
                   {Scalar(-1), swapped},
                   {-(q - Scalar::q_power(-1)), {Letter::z(a, be), Letter::z(b, al)}}};
      } else {
        continue;
      }
      // The starred relation follows by applying * to every word.
      Relation rs;
      rs.label = "star of " + r.label;
      for (const auto& [c, w] : r.terms) {
        Word sw;
        for (auto it = w.rbegin(); it != w.rend(); ++it) sw.push_back(it->starred());
        rs.terms.emplace_back(c, sw);
      }
      rels.push_back(std::move(r));
      rels.push_back(std::move(rs));
    }
  }
  for (Pos t : letters) {
    for (Pos p : letters) {
      Relation r;
      r.label = "zs" + pos_text(t) + " z" + pos_text(p) + " commutation";
      r.terms.push_back({Scalar(1), {Letter::zs(t), Letter::z(p)}});
      Scalar constant;
      for (const PairTerm& term : alg.mixed_rule(t, p, constant))
        r.terms.push_back({-term.coeff, {Letter::z(term.left), Letter::zs(term.right)}});
      if (!constant.is_zero()) r.terms.push_back({-constant, {}});
      rels.push_back(std::move(r));
    }
  }
  rels.push_back({"f0 f0 = f0", {{Scalar(1), {Letter::f0(), Letter::f0()}}, {Scalar(-1), {Letter::f0()}}}});
  for (Pos p : letters) {
    rels.push_back({"f0 z" + pos_text(p) + " = 0", {{Scalar(1), {Letter::f0(), Letter::z(p)}}}});
    rels.push_back({"zs" + pos_text(p) + " f0 = 0", {{Scalar(1), {Letter::zs(p), Letter::f0()}}}});
  }
  return rels;
}

int cartan(int i, int j) {
  if (i == j) return 2;
  return std::abs(i - j) == 1 ? -1 : 0;
}

}  // namespace

CovarianceReport Action::validate(int degree_cap) {
  CovarianceReport report = run_validation(degree_cap);
  validated_ = report.passed;
  return report;
}

CovarianceReport Action::run_validation(int degree_cap) const {
  CovarianceReport report;
  auto fail = [&report](std::string what) {
    report.passed = false;
    report.first_failure = std::move(what);
    return report;
  };
  const Algebra& alg = algebra_;
  const Shape& sh = alg.shape();

  ++report.checks;
  if (!convention_.antipode_consistent()) return fail("antipode table is inconsistent with the coproduct");

  const std::vector<QGen> gens = all_generators(sh);
  for (const Relation& rel : defining_relations(alg)) {
    Element base(sh);
    for (const auto& [c, w] : rel.terms) base += alg.normal_form(w, c);
    ++report.checks;
    if (!base.is_zero()) return fail("rewriting does not reduce relation " + rel.label + " to zero: " + to_string(base));
    for (QGen g : gens) {
      Element residual(sh);
      for (const auto& [c, w] : rel.terms) residual += act_word(g, w, c);
      ++report.checks;
      if (!residual.is_zero())
        return fail("relation " + rel.label + " is not preserved by " + g.name() + ": residual " + to_string(residual));
    }
  }

  // Star compatibility g(f^*) = (S^{-1}(g^*) f)^*.
  for (const NormalMonomial& mono : normal_monomials(sh, 2)) {
    const Element f(sh, mono);
    for (QGen g : gens) {
      const Element lhs = act_unchecked(g, star(f));
      const Element rhs = star(act_antipode_star(g, f));
      ++report.checks;
      if (lhs != rhs)
        return fail("star compatibility fails for " + g.name() + " on (" + to_string(f) + ")^*: " +
                    to_string(lhs - rhs));
    }
  }

  const Scalar q = Scalar::q();
  const Scalar q_int = q - Scalar::q_power(-1);
  const Scalar q_two = q + Scalar::q_power(-1);
  const int rank = sh.N() - 1;
  for (const NormalMonomial& mono : normal_monomials(sh, degree_cap)) {
    const Element f(sh, mono);
    auto seq = [&](std::initializer_list<QGen> word) {
      Element cur = f;
      for (QGen g : word) cur = act_unchecked(g, cur);
      return cur;
    };
    auto check = [&](const Element& residual, const std::string& what) {
      ++report.checks;
      if (!residual.is_zero()) {
        fail(what + " fails on " + to_string(mono) + ": residual " + to_string(residual));
        return false;
      }
      return true;
    };
    for (int i = 1; i <= rank; ++i) {
      if (!check(seq({QGen::Kinv(i), QGen::K(i)}) - f, "K" + std::to_string(i) + " K" + std::to_string(i) + "^-1 = 1"))
        return report;
      for (int j = 1; j <= rank; ++j) {
        const std::string ij = std::to_string(i) + "," + std::to_string(j);
        const Element ej = seq({QGen::E(j)});
        const Element fj = seq({QGen::F(j)});
        if (!check(seq({QGen::Kinv(i), QGen::E(j), QGen::K(i)}) - ej * Scalar::q_power(cartan(i, j)),
                   "K_i E_j K_i^-1 = q^a_ij E_j (" + ij + ")"))
          return report;
        if (!check(seq({QGen::Kinv(i), QGen::F(j), QGen::K(i)}) - fj * Scalar::q_power(-cartan(i, j)),
                   "K_i F_j K_i^-1 = q^-a_ij F_j (" + ij + ")"))
          return report;
        Element comm = seq({QGen::F(j), QGen::E(i)}) - seq({QGen::E(i), QGen::F(j)});
        if (i == j) comm -= (seq({QGen::K(i)}) - seq({QGen::Kinv(i)})) * q_int.inverse();
        if (!check(comm, "[E_i, F_j] = delta_ij (K_i - K_i^-1)/(q - q^-1) (" + ij + ")")) return report;
        if (i == j) continue;
        if (std::abs(i - j) > 1) {
          if (!check(seq({QGen::E(j), QGen::E(i)}) - seq({QGen::E(i), QGen::E(j)}), "[E_i, E_j] = 0 (" + ij + ")"))
            return report;
          if (!check(seq({QGen::F(j), QGen::F(i)}) - seq({QGen::F(i), QGen::F(j)}), "[F_i, F_j] = 0 (" + ij + ")"))
            return report;
          continue;
        }
        // q-Serre relations; sequences apply left to right.
        const Element serre_e = seq({QGen::E(j), QGen::E(i), QGen::E(i)}) -
                                seq({QGen::E(i), QGen::E(j), QGen::E(i)}) * q_two +
                                seq({QGen::E(i), QGen::E(i), QGen::E(j)});
        if (!check(serre_e, "Serre relation for E (" + ij + ")")) return report;
        const Element serre_f = seq({QGen::F(j), QGen::F(i), QGen::F(i)}) -
                                seq({QGen::F(i), QGen::F(j), QGen::F(i)}) * q_two +
                                seq({QGen::F(i), QGen::F(i), QGen::F(j)});
        if (!check(serre_f, "Serre relation for F (" + ij + ")")) return report;
      }
    }
  }
  return report;
}

CovarianceReport validate_covariance(const Algebra& algebra, const HopfConvention& convention, int degree_cap) {
  Action action(algebra, convention);
  return action.validate(degree_cap);
}

}  // namespace qball
