#include "qball/expr.hpp"

#include <cctype>

namespace qball {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Shape& shape) : text_(text), shape_(shape) {}

  ExprNode parse_all() {
    ExprNode e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  std::vector<QGen> generator_word() {
    std::vector<QGen> out;
    for (;;) {
      skip();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        skip();
      }
      if (pos_ >= text_.size()) break;
      std::optional<QGen> g = try_generator();
      if (!g) fail("expected generator token");
      out.push_back(*g);
    }
    if (out.empty()) fail("empty generator word");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
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
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_alpha() const { return pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])); }
  bool peek_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  ExprNode node(ExprNode::Kind kind, std::size_t at) const {
    ExprNode n;
    n.kind = kind;
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    n.line = line;
    n.column = col;
    return n;
  }

  ExprNode binary(ExprNode::Kind kind, ExprNode lhs, ExprNode rhs, std::size_t at) const {
    ExprNode n = node(kind, at);
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  ExprNode expr() {
    ExprNode lhs = term();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = binary(ExprNode::Kind::Add, std::move(lhs), term(), at);
      else if (accept('-'))
        lhs = binary(ExprNode::Kind::Sub, std::move(lhs), term(), at);
      else
        return lhs;
    }
  }

  ExprNode term() {
    ExprNode lhs = unary();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (accept('*'))
        lhs = binary(ExprNode::Kind::Mul, std::move(lhs), unary(), at);
      else if (accept('/'))
        lhs = binary(ExprNode::Kind::Div, std::move(lhs), unary(), at);
      else
        return lhs;
    }
  }

  ExprNode unary() {
    skip();
    const std::size_t at = pos_;
    if (accept('-')) {
      ExprNode n = node(ExprNode::Kind::Neg, at);
      n.children.push_back(unary());
      return n;
    }
    return power();
  }

  ExprNode power() {
    ExprNode base = atom();
    skip();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    const bool paren = accept('(');
    const bool neg = accept('-');
    const Integer k = integer();
    if (paren) expect(')');
    if (!k.fits_sint_p() || abs(k) > 100000) fail_at("exponent too large", at);
    ExprNode n = node(ExprNode::Kind::Pow, at);
    n.exponent = neg ? -int(k.get_si()) : int(k.get_si());
    n.children.push_back(std::move(base));
    return n;
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (peek_digit()) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int small_integer() {
    const std::size_t at = pos_;
    Integer v = integer();
    if (!v.fits_sint_p() || v > 255) fail_at("index too large", at);
    return int(v.get_si());
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (peek_alpha()) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Generator token at the current position, or nullopt (position unchanged).
  std::optional<QGen> try_generator() {
    skip();
    const std::size_t start = pos_;
    GenKind kind;
    if (text_.substr(pos_, 2) == "Ki") {
      kind = GenKind::Kinv;
      pos_ += 2;
    } else if (pos_ < text_.size() && (text_[pos_] == 'E' || text_[pos_] == 'F' || text_[pos_] == 'K')) {
      kind = text_[pos_] == 'E' ? GenKind::E : text_[pos_] == 'F' ? GenKind::F : GenKind::K;
      ++pos_;
    } else {
      return std::nullopt;
    }
    int k = 0;
    if (pos_ < text_.size() && text_[pos_] == 'n' &&
        !(pos_ + 1 < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      k = shape_.n;
    } else if (peek_digit()) {
      k = small_integer();
    } else {
      pos_ = start;
      return std::nullopt;
    }
    if (k < 1 || k >= shape_.N())
      throw IndexError("index error in '" + std::string(text_.substr(start, pos_ - start)) +
                       "': generator index outside 1.." + std::to_string(shape_.N() - 1));
    return QGen{kind, k};
  }

  ExprNode letter_atom(LetterKind kind, std::size_t start) {
    expect('[');
    const int a = small_integer();
    expect(',');
    const int alpha = small_integer();
    expect(']');
    const std::string token(text_.substr(start, pos_ - start));
    if (a < 1 || a > shape_.n)
      throw IndexError("index error in '" + token + "': a=" + std::to_string(a) + " outside 1.." +
                       std::to_string(shape_.n) + " (n=" + std::to_string(shape_.n) + ")");
    if (alpha < 1 || alpha > shape_.m)
      throw IndexError("index error in '" + token + "': alpha=" + std::to_string(alpha) + " outside 1.." +
                       std::to_string(shape_.m) + " (m=" + std::to_string(shape_.m) + ")");
    ExprNode n = node(ExprNode::Kind::Letter, start);
    n.letter = kind == LetterKind::Z ? Letter::z(a, alpha) : Letter::zs(a, alpha);
    return n;
  }

  ExprNode atom() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      ExprNode e = expr();
      expect(')');
      return e;
    }
    if (peek_digit()) {
      ExprNode n = node(ExprNode::Kind::Number, start);
      n.number = integer();
      return n;
    }
    if (std::optional<QGen> g = try_generator()) {
      ExprNode n = node(ExprNode::Kind::Apply, start);
      n.gen = *g;
      expect('(');
      n.children.push_back(expr());
      expect(')');
      return n;
    }
    if (!peek_alpha()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    // f0 carries a digit, so read it before the generic identifier.
    if (text_.substr(pos_, 2) == "f0") {
      pos_ += 2;
      ExprNode n = node(ExprNode::Kind::Letter, start);
      n.letter = Letter::f0();
      return n;
    }
    const std::string id = identifier();
    if (id == "q") return node(ExprNode::Kind::Q, start);
    if (id == "s") return node(ExprNode::Kind::S, start);
    if (id == "z") return letter_atom(LetterKind::Z, start);
    if (id == "zs") return letter_atom(LetterKind::ZStar, start);
    fail_at("unknown token '" + id + "'", start);
  }

  std::string_view text_;
  const Shape& shape_;
  std::size_t pos_ = 0;
};

std::optional<Scalar> as_scalar(const Element& e) {
  if (e.is_zero()) return Scalar();
  if (e.size() == 1 && e.terms().begin()->first.is_one()) return e.terms().begin()->second;
  return std::nullopt;
}

[[noreturn]] void eval_fail(const ExprNode& n, const std::string& what) { throw ParseError(what, n.line, n.column); }

}  // namespace

ExprNode parse_expression(std::string_view text, const Shape& shape) { return Parser(text, shape).parse_all(); }

std::vector<QGen> parse_generator_word(std::string_view text, const Shape& shape) {
  return Parser(text, shape).generator_word();
}

Element evaluate(const ExprNode& node, const Action& action) {
  const Algebra& alg = action.algebra();
  using K = ExprNode::Kind;
  switch (node.kind) {
    case K::Number:
      return alg.scalar(Scalar(node.number));
    case K::Q:
      return alg.scalar(Scalar::q());
    case K::S:
      return alg.scalar(Scalar::s());
    case K::Letter:
      return alg.letter(node.letter);
    case K::Neg:
      return -evaluate(node.children[0], action);
    case K::Add:
      return evaluate(node.children[0], action) + evaluate(node.children[1], action);
    case K::Sub:
      return evaluate(node.children[0], action) - evaluate(node.children[1], action);
    case K::Mul:
      return alg.multiply(evaluate(node.children[0], action), evaluate(node.children[1], action));
    case K::Div: {
      const Element lhs = evaluate(node.children[0], action);
      const std::optional<Scalar> rhs = as_scalar(evaluate(node.children[1], action));
      if (!rhs) eval_fail(node, "divisor must be a scalar");
      if (rhs->is_zero()) eval_fail(node, "division by zero");
      return lhs * rhs->inverse();
    }
    case K::Pow: {
      const Element base = evaluate(node.children[0], action);
      if (std::optional<Scalar> c = as_scalar(base)) {
        if (c->is_zero() && node.exponent < 0) eval_fail(node, "division by zero");
        return alg.scalar(c->pow(node.exponent));
      }
      if (node.exponent < 0) eval_fail(node, "negative power of a non-scalar");
      Element acc = alg.one();
      for (int i = 0; i < node.exponent; ++i) acc = alg.multiply(acc, base);
      return acc;
    }
    case K::Apply:
      return action.act(node.gen, evaluate(node.children[0], action));
  }
  return alg.zero();
}

Element parse_element(std::string_view text, const Action& action) {
  return evaluate(parse_expression(text, action.algebra().shape()), action);
}

nlohmann::json to_json(const Element& f) {
  nlohmann::json terms = nlohmann::json::array();
  auto word = [](const std::vector<Pos>& w) {
    nlohmann::json out = nlohmann::json::array();
    for (Pos p : w) out.push_back({int(p.a), int(p.alpha)});
    return out;
  };
  for (const auto& [mono, c] : f.terms())
    terms.push_back({{"coeff", c.to_string()}, {"zword", word(mono.zword)}, {"f0", mono.has_f0},
                     {"zsword", word(mono.zsword)}});
  return {{"terms", terms}};
}

Element element_from_json(const nlohmann::json& j, const Algebra& algebra) {
  Element out = algebra.zero();
  for (const auto& t : j.at("terms")) {
    NormalMonomial mono;
    for (const auto& p : t.at("zword")) mono.zword.push_back(Pos{p.at(0).get<std::uint8_t>(), p.at(1).get<std::uint8_t>()});
    mono.has_f0 = t.at("f0").get<bool>();
    for (const auto& p : t.at("zsword"))
      mono.zsword.push_back(Pos{p.at(0).get<std::uint8_t>(), p.at(1).get<std::uint8_t>()});
    algebra.check_monomial(mono);
    out.add_term(mono, Scalar::parse(t.at("coeff").get<std::string>()));
  }
  return out;
}

}  // namespace qball
