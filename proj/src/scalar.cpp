#include "qball/scalar.hpp"

#include <cctype>
#include <utility>

#include "qball/error.hpp"

namespace qball {

namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, const Rational& c) {
  if (c == 0) return {};
  Poly r(a);
  for (auto& x : r) x *= c;
  return r;
}

Poly shift_up(const Poly& a, int k) {
  if (a.empty() || k == 0) return a;
  Poly r(a.size() + static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < a.size(); ++i) r[i + static_cast<std::size_t>(k)] = a[i];
  return r;
}

void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.empty()) throw DivisionByZero();
  rem = a;
  trim(rem);
  quot.clear();
  if (degree(rem) < degree(b)) return;
  quot.assign(rem.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (!rem.empty() && degree(rem) >= degree(b)) {
    const std::size_t d = rem.size() - b.size();
    Rational c = rem.back() / lead;
    quot[d] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[d + i] -= c * b[i];
    rem.pop_back();
    trim(rem);
  }
  trim(quot);
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(a, 1 / a.back());
  return a;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace poly

Scalar::Scalar(long value) {
  if (value != 0) num_ = {Rational(value)};
}

Scalar::Scalar(const Rational& value) {
  if (value != 0) num_ = {value};
}

Scalar::Scalar(const Integer& value) {
  if (value != 0) num_ = {Rational(value)};
}

Scalar Scalar::s_power(int k) {
  Scalar r(1);
  r.shift_ = k;
  return r;
}

Scalar Scalar::from_parts(int shift, Poly num, Poly den) {
  Scalar r;
  r.shift_ = shift;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.canonicalize();
  return r;
}

void Scalar::canonicalize() {
  poly::trim(num_);
  poly::trim(den_);
  if (den_.empty()) throw DivisionByZero();
  if (num_.empty()) {
    shift_ = 0;
    den_ = {Rational(1)};
    return;
  }
  std::size_t low = 0;
  while (num_[low] == 0) ++low;
  if (low > 0) {
    num_.erase(num_.begin(), num_.begin() + static_cast<long>(low));
    shift_ += static_cast<int>(low);
  }
  low = 0;
  while (den_[low] == 0) ++low;
  if (low > 0) {
    den_.erase(den_.begin(), den_.begin() + static_cast<long>(low));
    shift_ -= static_cast<int>(low);
  }
  if (den_.size() > 1) {
    Poly g = poly::gcd(num_, den_);
    if (g.size() > 1) {
      Poly q, r;
      poly::divmod(num_, g, q, r);
      num_ = std::move(q);
      poly::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  if (den_.back() != 1) {
    Rational c = 1 / den_.back();
    num_ = poly::scale(num_, c);
    den_ = poly::scale(den_, c);
  }
}

bool Scalar::is_one() const {
  return shift_ == 0 && num_.size() == 1 && num_[0] == 1 && is_laurent();
}

int Scalar::leading_sign() const { return num_.empty() ? 0 : sgn(num_[0]); }

int Scalar::nonzero_terms() const {
  int count = 0;
  for (const auto& c : num_) count += (c != 0);
  return count;
}

bool Scalar::is_even() const {
  if (shift_ % 2 != 0) return false;
  for (std::size_t i = 1; i < num_.size(); i += 2)
    if (num_[i] != 0) return false;
  for (std::size_t i = 1; i < den_.size(); i += 2)
    if (den_[i] != 0) return false;
  return true;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  for (auto& c : r.num_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  const int e = std::min(shift_, other.shift_);
  if (den_ == other.den_) {
    Poly num = poly::add(poly::shift_up(num_, shift_ - e), poly::shift_up(other.num_, other.shift_ - e));
    shift_ = e;
    num_ = std::move(num);
    canonicalize();
    return *this;
  }
  Poly num = poly::add(poly::mul(poly::shift_up(num_, shift_ - e), other.den_),
                       poly::mul(poly::shift_up(other.num_, other.shift_ - e), den_));
  *this = from_parts(e, std::move(num), poly::mul(den_, other.den_));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  if (is_zero() || other.is_zero()) return *this = Scalar();
  if (is_laurent() && other.is_laurent()) {
    shift_ += other.shift_;
    num_ = poly::mul(num_, other.num_);
    return *this;
  }
  *this = from_parts(shift_ + other.shift_, poly::mul(num_, other.num_), poly::mul(den_, other.den_));
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return from_parts(-shift_, den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar result(1), base(*this);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

Rational Scalar::evaluate_at(const Rational& q_value) const {
  if (is_zero()) return 0;
  if (!is_even()) throw IrrationalAtRationalQ("irrational at rational q: odd power of q^(1/2) in " + to_string());
  auto halve = [](const Poly& p) {
    Poly r;
    for (std::size_t i = 0; i < p.size(); i += 2) r.push_back(p[i]);
    return r;
  };
  Rational den = poly::eval(halve(den_), q_value);
  if (den == 0 || (shift_ < 0 && q_value == 0))
    throw PoleError("pole at q = " + qball::to_string(q_value) + " in " + to_string());
  Rational value = poly::eval(halve(num_), q_value) / den;
  const int qexp = shift_ / 2;
  Rational qp = 1;
  for (int i = 0; i < std::abs(qexp); ++i) qp *= q_value;
  if (qexp >= 0) return value * qp;
  return value / qp;
}

namespace {

std::string power_text(int e) {
  if (e == 0) return "";
  if (e % 2 == 0) {
    const int k = e / 2;
    return k == 1 ? "q" : "q^" + std::to_string(k);
  }
  return e == 1 ? "s" : "s^" + std::to_string(e);
}

std::string laurent_text(int shift, const Poly& p) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    const Rational mag = abs(p[i]);
    const std::string pw = power_text(shift + static_cast<int>(i));
    std::string body;
    if (pw.empty())
      body = to_string(mag);
    else if (mag == 1)
      body = pw;
    else
      body = to_string(mag) + "*" + pw;
    if (first)
      out += (p[i] < 0 ? "-" : "") + body;
    else
      out += (p[i] < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

// Recursive-descent parser for the scalar grammar.
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("scalar syntax error at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (accept('*'))
        v *= unary();
      else if (accept('/'))
        v /= unary();
      else
        return v;
    }
  }
  Scalar unary() {
    if (accept('-')) return -unary();
    return power();
  }
  Scalar power() {
    Scalar base = atom();
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool neg = accept('-');
    Integer k = integer();
    if (paren && !accept(')')) fail("expected ')'");
    if (!k.fits_sint_p()) fail("exponent too large");
    return base.pow(neg ? -static_cast<int>(k.get_si()) : static_cast<int>(k.get_si()));
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }
  Scalar atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == 'q') {
      ++pos_;
      return Scalar::q();
    }
    if (c == 's') {
      ++pos_;
      return Scalar::s();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(integer());
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  if (is_laurent()) return laurent_text(shift_, num_);
  return "(" + laurent_text(shift_, num_) + ")/(" + laurent_text(0, den_) + ")";
}

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parse(); }

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string t(text);
  Rational r;
  if (t.empty() || r.set_str(t, 10) != 0) throw Error("invalid rational '" + t + "'");
  if (r.get_den() == 0) throw DivisionByZero();
  r.canonicalize();
  return r;
}

}  // namespace qball
