#pragma once

// Test-side oracles built without the library's rewriting engine.

#include <map>
#include <ostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qball/algebra.hpp"

namespace qball {

inline void PrintTo(const Element& e, std::ostream* os) { *os << to_string(e); }
inline void PrintTo(const Scalar& c, std::ostream* os) { *os << c.to_string(); }

}  // namespace qball

namespace oracle {

using qball::Scalar;

/// Integer Laurent polynomial in q, exponent -> coefficient.
using Laurent = std::map<int, long long>;

inline void add_into(Laurent& a, const Laurent& b, long long scale = 1, int shift = 0) {
  for (auto [e, c] : b) {
    a[e + shift] += scale * c;
    if (a[e + shift] == 0) a.erase(e + shift);
  }
}

inline Scalar to_scalar(const Laurent& p) {
  Scalar out;
  for (auto [e, c] : p) out += Scalar(long(c)) * Scalar::q_power(e);
  return out;
}

/// Quantum disc: words over 'Z' (z) and 'S' (z*) normal-ordered by the single
/// rule SZ -> q^2 ZS + (1 - q^2), applied at the leftmost occurrence.
inline std::map<std::string, Laurent> disc_normal_order(const std::string& word) {
  std::map<std::string, Laurent> done;
  std::vector<std::pair<std::string, Laurent>> todo{{word, {{0, 1}}}};
  while (!todo.empty()) {
    auto [w, c] = todo.back();
    todo.pop_back();
    const auto at = w.find("SZ");
    if (at == std::string::npos) {
      add_into(done[w], c);
      continue;
    }
    std::string swapped = w, dropped = w;
    swapped.replace(at, 2, "ZS");
    dropped.erase(at, 2);
    todo.push_back({swapped, {}});
    add_into(todo.back().second, c, 1, 2);
    todo.push_back({dropped, {}});
    add_into(todo.back().second, c, 1, 0);
    add_into(todo.back().second, c, -1, 2);
  }
  std::erase_if(done, [](const auto& kv) { return kv.second.empty(); });
  return done;
}

/// Coefficient of f0 in f0 (z*)^k z^k f0: only the fully contracted word survives.
inline Laurent disc_gram(int k) {
  const auto nf = disc_normal_order(std::string(k, 'S') + std::string(k, 'Z'));
  const auto it = nf.find("");
  return it == nf.end() ? Laurent{} : it->second;
}

/// Integral of z^a f0 (z*)^b on the disc. T maps z^j f0 to a multiple of
/// z^{a+j-b} f0, which is diagonal only for a = b and then only j = b
/// contributes; the rho-twist on z^j f0 is q^{-2j}.
inline Laurent disc_integral(int a, int b) {
  if (a != b) return {};
  Laurent out;
  add_into(out, disc_gram(a), 1, -2 * a);
  return out;
}

/// Row table of the z*-z relation, read directly off its case list.
inline Scalar r_prime(int b, int a, int bp, int ap) {
  if (a != b && b == bp && a == ap) return Scalar::q_power(-1);
  if (a == b && a == ap && a == bp) return Scalar(1);
  if (a == b && ap == bp && ap > a) return Scalar(1) - Scalar::q_power(-2);
  return Scalar(0);
}

inline Scalar r_double_prime(int betap, int alphap, int beta, int alpha) {
  if (alpha != beta && beta == betap && alpha == alphap) return Scalar::q_power(-1);
  if (alpha == beta && alpha == alphap && alpha == betap) return Scalar(1);
  if (alpha == beta && alphap == betap && alphap > alpha) return Scalar(1) - Scalar::q_power(-2);
  return Scalar(0);
}

struct Term {
  Scalar coeff;
  qball::Word word;
};

/// Right-hand side of z_a^alpha z_b^beta when one of the three z-z cases applies.
inline std::optional<std::vector<Term>> zz_relation(int a, int alpha, int b, int beta) {
  using qball::Letter;
  const Scalar q = Scalar::q();
  if ((a == b && alpha < beta) || (a < b && alpha == beta))
    return std::vector<Term>{{q, {Letter::z(b, beta), Letter::z(a, alpha)}}};
  if (a < b && alpha > beta) return std::vector<Term>{{Scalar(1), {Letter::z(b, beta), Letter::z(a, alpha)}}};
  if (a < b && alpha < beta)
    return std::vector<Term>{{Scalar(1), {Letter::z(b, beta), Letter::z(a, alpha)}},
                             {q - q.inverse(), {Letter::z(a, beta), Letter::z(b, alpha)}}};
  return std::nullopt;
}

/// Right-hand side of (z_b^beta)^* z_a^alpha.
inline std::vector<Term> mixed_relation(const qball::Shape& sh, int b, int beta, int a, int alpha) {
  using qball::Letter;
  std::vector<Term> out;
  for (int ap = 1; ap <= sh.n; ++ap)
    for (int bp = 1; bp <= sh.n; ++bp)
      for (int alphap = 1; alphap <= sh.m; ++alphap)
        for (int betap = 1; betap <= sh.m; ++betap) {
          const Scalar c = Scalar::q_power(2) * r_prime(b, a, bp, ap) * r_double_prime(betap, alphap, beta, alpha);
          if (!c.is_zero()) out.push_back({c, {Letter::z(ap, alphap), Letter::zs(bp, betap)}});
        }
  if (a == b && alpha == beta) out.push_back({Scalar(1) - Scalar::q_power(2), {}});
  return out;
}

}  // namespace oracle
