#include "qball/algebra.hpp"

#include <algorithm>

#include "qball/error.hpp"

namespace qball {

Shape make_shape(int m, int n) {
  if (m < 1 || n < 1) throw IndexError("shape requires m >= 1 and n >= 1");
  if (m > 64 || n > 64) throw IndexError("shape too large");
  return Shape{m, n};
}

Letter Letter::starred() const {
  switch (kind) {
    case LetterKind::Z:
      return {LetterKind::ZStar, pos};
    case LetterKind::ZStar:
      return {LetterKind::Z, pos};
    case LetterKind::F0:
      break;
  }
  return *this;
}

Word NormalMonomial::letters() const {
  Word w;
  w.reserve(zword.size() + zsword.size() + 1);
  for (Pos p : zword) w.push_back(Letter::z(p));
  if (has_f0) w.push_back(Letter::f0());
  for (Pos p : zsword) w.push_back(Letter::zs(p));
  return w;
}

bool MonomialOrder::operator()(const NormalMonomial& x, const NormalMonomial& y) const {
  const int dx = x.total_degree(), dy = y.total_degree();
  if (dx != dy) return dx > dy;
  if (x.has_f0 != y.has_f0) return !x.has_f0;
  if (x.zword != y.zword) return x.zword < y.zword;
  return x.zsword < y.zsword;
}

std::size_t MonomialHash::operator()(const NormalMonomial& mono) const {
  std::size_t h = mono.has_f0 ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (Pos p : mono.zword) mix(std::size_t(p.a) << 8 | p.alpha);
  mix(0xffff);
  for (Pos p : mono.zsword) mix(std::size_t(p.a) << 8 | p.alpha);
  return h;
}

Bidegree bidegree(const NormalMonomial& mono) {
  return {int(mono.zword.size()), int(mono.zsword.size()), mono.has_f0};
}

// ---------------------------------------------------------------------------
// Element

Element::Element(Shape shape, NormalMonomial mono, Scalar coeff) : shape_(shape) {
  if (!coeff.is_zero()) terms_.emplace(std::move(mono), std::move(coeff));
}

Scalar Element::coefficient(const NormalMonomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add_term(const NormalMonomial& mono, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

void Element::add_scaled(const Element& other, const Scalar& coeff) {
  if (other.shape_ != shape_) throw ShapeMismatch();
  if (coeff.is_zero()) return;
  if (coeff.is_one()) {
    for (const auto& [mono, c] : other.terms_) add_term(mono, c);
    return;
  }
  for (const auto& [mono, c] : other.terms_) add_term(mono, c * coeff);
}

Element& Element::operator+=(const Element& other) {
  add_scaled(other, Scalar(1));
  return *this;
}

Element& Element::operator-=(const Element& other) {
  add_scaled(other, Scalar(-1));
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= c;
  return *this;
}

Element Element::operator-() const {
  Element r(*this);
  for (auto& [mono, coeff] : r.terms_) coeff = -coeff;
  return r;
}

NormalMonomial star(const NormalMonomial& mono) {
  NormalMonomial r;
  r.zword.assign(mono.zsword.rbegin(), mono.zsword.rend());
  r.has_f0 = mono.has_f0;
  r.zsword.assign(mono.zword.rbegin(), mono.zword.rend());
  return r;
}

Element star(const Element& f) {
  Element r(f.shape());
  for (const auto& [mono, c] : f.terms()) r.add_term(star(mono), c);
  return r;
}

Element project_finite(const Element& f) {
  Element r(f.shape());
  for (const auto& [mono, c] : f.terms())
    if (mono.has_f0) r.add_term(mono, c);
  return r;
}

bool is_finite(const Element& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return t.first.has_f0; });
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

struct MulKey {
  NormalMonomial mono;
  Pos pos;
  friend bool operator==(const MulKey&, const MulKey&) = default;
};

struct MulKeyHash {
  std::size_t operator()(const MulKey& k) const {
    return MonomialHash{}(k.mono) * 31 + (std::size_t(k.pos.a) << 8 | k.pos.alpha);
  }
};

struct PosVecHash {
  std::size_t operator()(const std::vector<Pos>& w) const {
    std::size_t h = w.size();
    for (Pos p : w) h = h * 1000003 + (std::size_t(p.a) << 8 | p.alpha);
    return h;
  }
};

}  // namespace

struct Algebra::Caches {
  std::mutex mu;
  std::unordered_map<std::vector<Pos>, Element, PosVecHash> zwords;
  std::unordered_map<MulKey, Element, MulKeyHash> mul_z;
};

Algebra::Algebra(Shape shape, AlgebraOptions options)
    : shape_(make_shape(shape.m, shape.n)),
      options_(options),
      q_inv_(Scalar::q_power(-1)),
      q_sq_(Scalar::q_power(2)),
      one_minus_q2_(Scalar(1) - Scalar::q_power(2)),
      q_minus_q_inv_(Scalar::q() - Scalar::q_power(-1)),
      r_offdiag_(options.perturb_r_prime ? Scalar::q() : Scalar::q_power(-1)),
      r_lower_(Scalar(1) - Scalar::q_power(-2)),
      caches_(std::make_unique<Caches>()) {}

Algebra::~Algebra() = default;

void Algebra::check_letter(Letter x) const {
  if (x.kind == LetterKind::F0) return;
  if (x.pos.a < 1 || x.pos.a > shape_.n || x.pos.alpha < 1 || x.pos.alpha > shape_.m)
    throw IndexError("index (" + std::to_string(x.pos.a) + "," + std::to_string(x.pos.alpha) +
                     ") out of range for shape m=" + std::to_string(shape_.m) + ", n=" + std::to_string(shape_.n));
}

void Algebra::check_monomial(const NormalMonomial& mono) const {
  for (Pos p : mono.zword) check_letter(Letter::z(p));
  for (Pos p : mono.zsword) check_letter(Letter::zs(p));
  if (!std::is_sorted(mono.zword.begin(), mono.zword.end()) ||
      !std::is_sorted(mono.zsword.rbegin(), mono.zsword.rend()))
    throw Error("monomial is not in normal order");
}

Element Algebra::letter(Letter x) const {
  check_letter(x);
  NormalMonomial mono;
  switch (x.kind) {
    case LetterKind::Z:
      mono.zword.push_back(x.pos);
      break;
    case LetterKind::ZStar:
      mono.zsword.push_back(x.pos);
      break;
    case LetterKind::F0:
      mono.has_f0 = true;
      break;
  }
  return Element(shape_, std::move(mono));
}

Element Algebra::monomial(const NormalMonomial& mono, const Scalar& c) const {
  check_monomial(mono);
  return Element(shape_, mono, c);
}

Scalar Algebra::r_prime(int b, int a, int b_prime, int a_prime) const {
  for (int i : {b, a, b_prime, a_prime})
    if (i < 1 || i > shape_.n) throw IndexError("row index " + std::to_string(i) + " out of range");
  if (a != b && b == b_prime && a == a_prime) return r_offdiag_;
  if (a == b && a == a_prime && a == b_prime) return Scalar(1);
  if (a == b && a_prime == b_prime && a_prime > a) return r_lower_;
  return Scalar();
}

Scalar Algebra::r_double_prime(int beta_prime, int alpha_prime, int beta, int alpha) const {
  for (int i : {beta_prime, alpha_prime, beta, alpha})
    if (i < 1 || i > shape_.m) throw IndexError("column index " + std::to_string(i) + " out of range");
  if (alpha != beta && beta == beta_prime && alpha == alpha_prime) return q_inv_;
  if (alpha == beta && alpha == alpha_prime && alpha == beta_prime) return Scalar(1);
  if (alpha == beta && alpha_prime == beta_prime && alpha_prime > alpha) return r_lower_;
  return Scalar();
}

std::vector<PairTerm> Algebra::zz_rule(Pos y, Pos x) const {
  // y = (b, beta) > x = (a, alpha).
  if (y.a == x.a) return {{q_inv_, x, y}};  // beta > alpha
  if (y.alpha == x.alpha) return {{q_inv_, x, y}};
  if (y.alpha < x.alpha) return {{Scalar(1), x, y}};
  // a < b and alpha < beta
  return {{Scalar(1), x, y}, {-q_minus_q_inv_, Pos{x.a, y.alpha}, Pos{y.a, x.alpha}}};
}

std::vector<PairTerm> Algebra::mixed_rule(Pos t, Pos p, Scalar& constant) const {
  // (z_b^beta)^* z_a^alpha with t = (b, beta), p = (a, alpha).
  const int b = t.a, beta = t.alpha, a = p.a, alpha = p.alpha;
  std::vector<PairTerm> out;
  for (int ap = 1; ap <= shape_.n; ++ap) {
    for (int bp = 1; bp <= shape_.n; ++bp) {
      Scalar rp = r_prime(b, a, bp, ap);
      if (rp.is_zero()) continue;
      for (int alp = 1; alp <= shape_.m; ++alp) {
        for (int bep = 1; bep <= shape_.m; ++bep) {
          Scalar rpp = r_double_prime(bep, alp, beta, alpha);
          if (rpp.is_zero()) continue;
          out.push_back({q_sq_ * rp * rpp, Pos{std::uint8_t(ap), std::uint8_t(alp)},
                         Pos{std::uint8_t(bp), std::uint8_t(bep)}});
        }
      }
    }
  }
  constant = (a == b && alpha == beta) ? one_minus_q2_ : Scalar();
  return out;
}

Element Algebra::normalize_zword(const std::vector<Pos>& word) const {
  std::size_t i = 0;
  while (i + 1 < word.size() && !(word[i + 1] < word[i])) ++i;
  if (i + 1 >= word.size()) return Element(shape_, NormalMonomial{word, false, {}});
  {
    std::lock_guard lock(caches_->mu);
    auto it = caches_->zwords.find(word);
    if (it != caches_->zwords.end()) return it->second;
  }
  Element result(shape_);
  for (const PairTerm& t : zz_rule(word[i], word[i + 1])) {
    std::vector<Pos> next(word);
    next[i] = t.left;
    next[i + 1] = t.right;
    result.add_scaled(normalize_zword(next), t.coeff);
  }
  std::lock_guard lock(caches_->mu);
  caches_->zwords.emplace(word, result);
  return result;
}

Element Algebra::mul_letter(const NormalMonomial& mono, Letter x) const {
  switch (x.kind) {
    case LetterKind::F0: {
      if (!mono.zsword.empty()) return zero();
      NormalMonomial r(mono);
      r.has_f0 = true;
      return Element(shape_, std::move(r));
    }
    case LetterKind::ZStar: {
      // zsword * z_p^* = (z_p * star(zsword))^*
      std::vector<Pos> w;
      w.reserve(mono.zsword.size() + 1);
      w.push_back(x.pos);
      w.insert(w.end(), mono.zsword.rbegin(), mono.zsword.rend());
      Element r(shape_);
      const Element normalized = normalize_zword(w);
      for (const auto& [zm, c] : normalized.terms()) {
        NormalMonomial out{mono.zword, mono.has_f0, {}};
        out.zsword.assign(zm.zword.rbegin(), zm.zword.rend());
        r.add_term(out, c);
      }
      return r;
    }
    case LetterKind::Z:
      break;
  }
  if (mono.zsword.empty()) {
    if (mono.has_f0) return zero();
    std::vector<Pos> w(mono.zword);
    w.push_back(x.pos);
    return normalize_zword(w);
  }
  MulKey key{mono, x.pos};
  {
    std::lock_guard lock(caches_->mu);
    auto it = caches_->mul_z.find(key);
    if (it != caches_->mul_z.end()) return it->second;
  }
  NormalMonomial rest(mono);
  const Pos t = rest.zsword.back();
  rest.zsword.pop_back();
  Scalar constant;
  Element result(shape_);
  for (const PairTerm& term : mixed_rule(t, x.pos, constant)) {
    Element left = mul_letter(rest, Letter::z(term.left));
    result.add_scaled(mul_letter(left, Letter::zs(term.right)), term.coeff);
  }
  if (!constant.is_zero()) result.add_term(rest, constant);
  std::lock_guard lock(caches_->mu);
  caches_->mul_z.emplace(std::move(key), result);
  return result;
}

Element Algebra::mul_letter(const Element& f, Letter x) const {
  Element r(shape_);
  for (const auto& [mono, c] : f.terms()) r.add_scaled(mul_letter(mono, x), c);
  return r;
}

Element Algebra::multiply(const NormalMonomial& x, const NormalMonomial& y) const {
  Element acc(shape_, x);
  for (Letter l : y.letters()) {
    acc = mul_letter(acc, l);
    if (acc.is_zero()) break;
  }
  return acc;
}

Element Algebra::multiply(const Element& f, const Element& g) const {
  if (f.shape() != shape_ || g.shape() != shape_) throw ShapeMismatch();
  Element r(shape_);
  for (const auto& [gm, gc] : g.terms())
    for (const auto& [fm, fc] : f.terms()) r.add_scaled(multiply(fm, gm), fc * gc);
  return r;
}

Element Algebra::normal_form(const Word& word, const Scalar& coeff) const {
  for (Letter x : word) check_letter(x);
  Element acc = scalar(coeff);
  for (Letter x : word) {
    acc = mul_letter(acc, x);
    if (acc.is_zero()) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Literal rewriting

namespace {

long pairs(long len) { return len * (len - 1) / 2; }

// Strictly decreasing potential for the rewrite system; see termination_bound.
long potential(const Word& w) {
  const long len = long(w.size());
  auto level_max = [](long l) {
    const long c = pairs(l);
    return 2 * c * (c + 2);
  };
  long base = 0;
  for (long l = 0; l < len; ++l) base += (pairs(l) + 1) * (level_max(l) + 1);

  long mix = 0, stars_seen = 0;
  std::vector<Pos> zs, ss;
  for (Letter x : w) {
    if (x.kind == LetterKind::ZStar) {
      ++stars_seen;
      ss.push_back(x.pos);
    } else if (x.kind == LetterKind::Z) {
      mix += stars_seen;
      zs.push_back(x.pos);
    }
  }
  const long weight = pairs(len) + 1;
  auto inversions = [weight](const std::vector<Pos>& v, bool descending) {
    long rows = 0, cols = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (descending ? v[i].a < v[j].a : v[i].a > v[j].a) ++rows;
        if (descending ? v[i].alpha < v[j].alpha : v[i].alpha > v[j].alpha) ++cols;
      }
    return rows * weight + cols;
  };
  return base + mix * (level_max(len) + 1) + inversions(zs, false) + inversions(ss, true);
}

}  // namespace

long Algebra::termination_bound(const Word& word) { return potential(word); }

Element Algebra::rewrite_literal(const Word& word, RewriteStats* stats) const {
  for (Letter x : word) check_letter(x);
  return rewrite_literal_rec(word, 0, stats);
}

Element Algebra::rewrite_literal_rec(const Word& word, long depth, RewriteStats* stats) const {
  if (stats) stats->max_chain = std::max(stats->max_chain, depth);
  std::vector<std::pair<Scalar, Word>> next;
  std::size_t i = 0;
  for (; i + 1 < word.size(); ++i) {
    const Letter x = word[i], y = word[i + 1];
    auto splice = [&](std::initializer_list<Letter> mid) {
      Word w(word.begin(), word.begin() + long(i));
      w.insert(w.end(), mid);
      w.insert(w.end(), word.begin() + long(i) + 2, word.end());
      return w;
    };
    if (x.kind == LetterKind::F0 && y.kind == LetterKind::F0) {
      next.emplace_back(Scalar(1), splice({Letter::f0()}));
    } else if ((x.kind == LetterKind::F0 && y.kind == LetterKind::Z) ||
               (x.kind == LetterKind::ZStar && y.kind == LetterKind::F0)) {
      // annihilated
    } else if (x.kind == LetterKind::ZStar && y.kind == LetterKind::Z) {
      Scalar constant;
      for (const PairTerm& t : mixed_rule(x.pos, y.pos, constant))
        next.emplace_back(t.coeff, splice({Letter::z(t.left), Letter::zs(t.right)}));
      if (!constant.is_zero()) next.emplace_back(constant, splice({}));
    } else if (x.kind == LetterKind::Z && y.kind == LetterKind::Z && y.pos < x.pos) {
      for (const PairTerm& t : zz_rule(x.pos, y.pos))
        next.emplace_back(t.coeff, splice({Letter::z(t.left), Letter::z(t.right)}));
    } else if (x.kind == LetterKind::ZStar && y.kind == LetterKind::ZStar && x.pos < y.pos) {
      // z_x^* z_y^* = (z_y z_x)^*
      for (const PairTerm& t : zz_rule(y.pos, x.pos))
        next.emplace_back(t.coeff, splice({Letter::zs(t.right), Letter::zs(t.left)}));
    } else {
      continue;
    }
    break;
  }
  if (i + 1 >= word.size()) {
    NormalMonomial mono;
    for (Letter x : word) {
      if (x.kind == LetterKind::Z)
        mono.zword.push_back(x.pos);
      else if (x.kind == LetterKind::F0)
        mono.has_f0 = true;
      else
        mono.zsword.push_back(x.pos);
    }
    return Element(shape_, std::move(mono));
  }
  Element result(shape_);
  const long here = potential(word);
  for (auto& [c, w] : next) {
    if (stats) {
      ++stats->steps;
      if (potential(w) >= here) stats->bound_violated = true;
    }
    result.add_scaled(rewrite_literal_rec(w, depth + 1, stats), c);
  }
  return result;
}

std::vector<std::vector<Pos>> sorted_zwords(const Shape& shape, int length) {
  std::vector<Pos> letters;
  for (int a = 1; a <= shape.n; ++a)
    for (int alpha = 1; alpha <= shape.m; ++alpha) letters.push_back(Pos{std::uint8_t(a), std::uint8_t(alpha)});
  std::vector<std::vector<Pos>> out;
  std::vector<Pos> current;
  auto rec = [&](auto&& self, std::size_t from, int left) -> void {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = from; i < letters.size(); ++i) {
      current.push_back(letters[i]);
      self(self, i, left - 1);
      current.pop_back();
    }
  };
  rec(rec, 0, length);
  return out;
}

std::vector<NormalMonomial> normal_monomials(const Shape& shape, int cap) {
  std::vector<NormalMonomial> out;
  for (int f = 0; f <= 1; ++f)
    for (int i = 0; i + f <= cap; ++i)
      for (int j = 0; i + j + f <= cap; ++j)
        for (const auto& zw : sorted_zwords(shape, i))
          for (const auto& sw : sorted_zwords(shape, j)) out.push_back({zw, f == 1, {sw.rbegin(), sw.rend()}});
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

std::string to_string(const NormalMonomial& mono) {
  std::string out;
  auto append = [&out](const std::string& tok) {
    if (!out.empty()) out += '*';
    out += tok;
  };
  auto idx = [](Pos p) { return "[" + std::to_string(p.a) + "," + std::to_string(p.alpha) + "]"; };
  for (Pos p : mono.zword) append("z" + idx(p));
  if (mono.has_f0) append("f0");
  for (Pos p : mono.zsword) append("zs" + idx(p));
  return out.empty() ? "1" : out;
}

std::string to_string(const Element& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : f.terms()) {
    std::string body;
    bool negative = false;
    if (c.is_monomial()) {
      negative = c.leading_sign() < 0;
      const Scalar mag = negative ? -c : c;
      if (mono.is_one())
        body = mag.to_string();
      else if (mag.is_one())
        body = to_string(mono);
      else
        body = mag.to_string() + " * " + to_string(mono);
    } else {
      const std::string cs = c.is_laurent() ? "(" + c.to_string() + ")" : c.to_string();
      body = mono.is_one() ? cs : cs + " * " + to_string(mono);
    }
    if (first)
      out += negative ? "-" + body : body;
    else
      out += negative ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

}  // namespace qball
