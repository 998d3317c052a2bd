#include "qball/harmonic.hpp"

#include <algorithm>

#include "qball/error.hpp"

namespace qball {

Harmonic::Harmonic(const Action& action) : action_(action), algebra_(action.algebra()) {}

const std::vector<NormalMonomial>& Harmonic::basis(int j) const {
  if (j < 0) throw Error("negative degree");
  std::lock_guard lock(mu_);
  auto it = bases_.find(j);
  if (it != bases_.end()) return it->second;
  std::vector<NormalMonomial> out;
  for (auto& w : sorted_zwords(algebra_.shape(), j)) out.push_back({std::move(w), true, {}});
  for (std::size_t i = 0; i < out.size(); ++i) index_.emplace(out[i], int(i));
  return bases_.emplace(j, std::move(out)).first->second;
}

int Harmonic::basis_index(const NormalMonomial& mono) const {
  if (!mono.has_f0 || !mono.zsword.empty()) return -1;
  basis(int(mono.zword.size()));
  std::lock_guard lock(mu_);
  auto it = index_.find(mono);
  return it == index_.end() ? -1 : it->second;
}

int Harmonic::h0_degree(const NormalMonomial& mono) const {
  if (!mono.has_f0 || !mono.zsword.empty()) throw Error(to_string(mono) + " is not in H = C[Mat]_q f0");
  const Shape& sh = algebra_.shape();
  const int m = sh.m, n = sh.n, N = sh.N();
  const Weight w = weight_of(sh, mono);
  auto h = [&w](int k) { return w[std::size_t(k - 1)]; };
  long sum = 0;
  for (int j = 1; j <= n - 1; ++j) sum += long(m) * j * h(j);
  for (int j = 1; j <= m - 1; ++j) sum += long(n) * j * h(N - j);
  sum += long(m) * n * h(n);
  // H_0 = 2 sum / (m + n) = 2j
  if (sum % N != 0) throw Error("non-integral H_0 eigenvalue");
  return int(sum / N);
}

void Harmonic::require_finite(const Element& f) const {
  if (!is_finite(f)) throw NotFinite("element is not a finite function (some term lacks f0): " + to_string(f));
}

int Harmonic::degree_bound(const Element& f) const {
  require_finite(f);
  std::size_t deg = 0;
  for (const auto& [mono, c] : f.terms()) deg = std::max(deg, mono.zsword.size());
  return int(deg) + 1;
}

Element Harmonic::apply(const Element& f, const Element& psi) const {
  Element out = algebra_.multiply(f, psi);
  for (const auto& [mono, c] : out.terms())
    if (!mono.has_f0 || !mono.zsword.empty()) throw Error("T_f left H: " + to_string(mono));
  return out;
}

std::vector<OperatorBlock> Harmonic::t_matrix(const Element& f, int j) const {
  const auto& src = basis(j);
  std::map<int, OperatorBlock> blocks;
  for (std::size_t col = 0; col < src.size(); ++col) {
    const Element image = apply(f, Element(algebra_.shape(), src[col]));
    for (const auto& [mono, c] : image.terms()) {
      const int target = int(mono.zword.size());
      auto it = blocks.find(target);
      if (it == blocks.end())
        it = blocks.emplace(target, OperatorBlock{j, target, Matrix<Scalar>(basis(target).size(), src.size())}).first;
      it->second.matrix(std::size_t(basis_index(mono)), col) = c;
    }
  }
  std::vector<OperatorBlock> out;
  for (auto& [deg, block] : blocks) out.push_back(std::move(block));
  return out;
}

Scalar Harmonic::inner_product(const Element& psi1, const Element& psi2) const {
  return algebra_.multiply(star(psi1), psi2).coefficient(NormalMonomial::f0());
}

const GramMatrix& Harmonic::gram(int j) const {
  {
    std::lock_guard lock(mu_);
    auto it = grams_.find(j);
    if (it != grams_.end()) return it->second;
  }
  const auto& b = basis(j);
  GramMatrix g{j, Matrix<Scalar>(b.size(), b.size())};
  const NormalMonomial unit = NormalMonomial::f0();
  for (std::size_t r = 0; r < b.size(); ++r) {
    // f0 w_r^*
    const Element left(algebra_.shape(), star(b[r]));
    for (std::size_t c = 0; c < b.size(); ++c) {
      Element acc = left;
      for (Pos p : b[c].zword) acc = algebra_.mul_letter(acc, Letter::z(p));
      acc = algebra_.mul_letter(acc, Letter::f0());
      g.matrix(r, c) = acc.coefficient(unit);
    }
  }
  std::lock_guard lock(mu_);
  return grams_.emplace(j, std::move(g)).first->second;
}

Scalar Harmonic::gamma_entry(const NormalMonomial& mono) const {
  const Shape& sh = algebra_.shape();
  const int N = sh.N();
  const Weight w = weight_of(sh, mono);
  int exponent = 0;
  for (int k = 1; k < N; ++k) exponent -= k * (N - k) * w[std::size_t(k - 1)];
  return Scalar::q_power(exponent);
}

OperatorBlock Harmonic::gamma_rho(int j) const {
  const auto& b = basis(j);
  OperatorBlock out{j, j, Matrix<Scalar>(b.size(), b.size())};
  for (std::size_t i = 0; i < b.size(); ++i) out.matrix(i, i) = gamma_entry(b[i]);
  return out;
}

Scalar Harmonic::integrate(const Element& f) const {
  const int bound = degree_bound(f);
  Scalar total;
  for (int j = 0; j < bound; ++j) {
    for (const NormalMonomial& v : basis(j)) {
      const Scalar diag = apply(f, Element(algebra_.shape(), v)).coefficient(v);
      if (!diag.is_zero()) total += diag * gamma_entry(v);
    }
  }
  return total;
}

bool Harmonic::check_positive(int j, const Rational& q_value) const {
  if (q_value <= 0 || q_value >= 1) throw Error("q must lie in (0, 1)");
  const GramMatrix& g = gram(j);
  for (std::size_t r = 0; r < g.matrix.rows(); ++r)
    for (std::size_t c = 0; c < g.matrix.cols(); ++c)
      if (!g.matrix(r, c).is_even()) throw IrrationalAtRationalQ("Gram entry with odd power of q^(1/2)");
  return is_positive_definite(evaluate_at(g.matrix, q_value));
}

Scalar Harmonic::check_invariance(QGen g, const Element& f) const {
  require_finite(f);
  return integrate(action_.act(g, f)) - counit(g) * integrate(f);
}

Matrix<Rational> evaluate_at(const Matrix<Scalar>& m, const Rational& q_value) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).evaluate_at(q_value);
  return out;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

}  // namespace

std::vector<Rational> leading_principal_minors(const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw Error("minors of a non-square matrix");
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r][c] = m(r, c);
    out.push_back(determinant(std::move(sub)));
  }
  return out;
}

bool is_positive_definite(const Matrix<Rational>& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < r; ++c)
      if (m(r, c) != m(c, r)) return false;
  const auto minors = leading_principal_minors(m);
  return std::all_of(minors.begin(), minors.end(), [](const Rational& x) { return x > 0; });
}

}  // namespace qball
