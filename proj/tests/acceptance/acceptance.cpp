// Acceptance suite: one PASS/FAIL line per criterion, each against a wall-clock limit.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "qball/harmonic.hpp"
#include "qball/sample.hpp"
#include "support.hpp"

using namespace qball;

namespace {

const Scalar q = Scalar::q();

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && outcome_.ok) {
      outcome_.ok = false;
      outcome_.detail = what;
    }
  }
  bool ok() const { return outcome_.ok; }
  Outcome outcome() const { return outcome_; }

 private:
  Outcome outcome_;
};

struct World {
  explicit World(Shape sh) : alg(sh), act(alg), h(act) {}
  Algebra alg;
  Action act;
  Harmonic h;
};

std::string shape_name(const Shape& sh) { return "(" + std::to_string(sh.m) + "," + std::to_string(sh.n) + ")"; }

const std::vector<Shape> kFourShapes{make_shape(1, 1), make_shape(1, 2), make_shape(2, 1), make_shape(2, 2)};

Outcome relation_fidelity() {
  Checker c;
  for (const Shape& sh : kFourShapes) {
    Algebra alg(sh);
    const Pos t{std::uint8_t(sh.n), std::uint8_t(sh.m)};
    Element rhs = alg.monomial(NormalMonomial{{t}, false, {t}}, q * q) + alg.scalar(Scalar(1) - q * q);
    c.require(alg.normal_form({Letter::zs(t), Letter::z(t)}) == rhs, "disc relation differs on " + shape_name(sh));
  }
  return c.outcome();
}

struct Triple {
  Element u, v, w;
};

std::vector<std::pair<const Algebra*, Triple>> product_corpus(const std::vector<std::unique_ptr<Algebra>>& algs) {
  Sampler rng(200);
  std::vector<std::pair<const Algebra*, Triple>> out;
  const SampleSpec spec{3, 3, 2, false, 3};
  for (int i = 0; i < 200; ++i) {
    const Algebra& alg = *algs[i % algs.size()];
    out.push_back({&alg, {rng.element(alg, spec), rng.element(alg, spec), rng.element(alg, spec)}});
  }
  return out;
}

Outcome associativity(const std::vector<std::pair<const Algebra*, Triple>>& corpus) {
  Checker c;
  for (const auto& [alg, t] : corpus)
    c.require(alg->multiply(alg->multiply(t.u, t.v), t.w) == alg->multiply(t.u, alg->multiply(t.v, t.w)),
              "(uv)w != u(vw) for u = " + to_string(t.u) + ", v = " + to_string(t.v) + ", w = " + to_string(t.w));
  return c.outcome();
}

Outcome star_laws(const std::vector<std::pair<const Algebra*, Triple>>& corpus) {
  Checker c;
  for (const auto& [alg, t] : corpus) {
    c.require(star(alg->multiply(t.u, t.v)) == alg->multiply(star(t.v), star(t.u)),
              "(uv)* != v*u* for u = " + to_string(t.u) + ", v = " + to_string(t.v));
    c.require(star(star(t.u)) == t.u, "u** != u for u = " + to_string(t.u));
  }
  return c.outcome();
}

Outcome covariance() {
  Checker c;
  long checks = 0;
  for (const Shape& sh : kFourShapes) {
    Algebra alg(sh);
    const CovarianceReport r = validate_covariance(alg, HopfConvention::standard(), 3);
    c.require(r.passed, shape_name(sh) + ": " + r.first_failure);
    checks += r.checks;
  }
  Outcome o = c.outcome();
  if (o.ok) o.detail = std::to_string(checks) + " checks";
  return o;
}

Outcome disc_closed_forms() {
  Checker c;
  World w(make_shape(1, 1));
  const Pos p{1, 1};
  const Element zf0zs = w.alg.monomial(NormalMonomial{{p}, true, {p}});
  const Scalar i0 = w.h.integrate(w.alg.f0()), i1 = w.h.integrate(zf0zs);
  c.require(i0 == Scalar(1) && i0 == oracle::to_scalar(oracle::disc_integral(0, 0)), "integrate(f0) = " + i0.to_string());
  c.require(i1 == q.pow(-2) - Scalar(1) && i1 == oracle::to_scalar(oracle::disc_integral(1, 1)),
            "integrate(z f0 z*) = " + i1.to_string());
  const Scalar g1 = w.h.gram(1).matrix(0, 0), g2 = w.h.gram(2).matrix(0, 0);
  c.require(g1 == Scalar(1) - q * q && g1 == oracle::to_scalar(oracle::disc_gram(1)), "gram(1) = " + g1.to_string());
  c.require(g2 == (Scalar(1) - q * q) * (Scalar(1) - q.pow(4)) && g2 == oracle::to_scalar(oracle::disc_gram(2)),
            "gram(2) = " + g2.to_string());
  return c.outcome();
}

Outcome degree_bound_blocks() {
  Checker c;
  Sampler rng(6);
  World w11(make_shape(1, 1)), w12(make_shape(1, 2));
  for (int i = 0; i < 50; ++i) {
    World& w = i % 2 ? w12 : w11;
    const Element f = rng.element(w.alg, SampleSpec{3, 2, 3, true});
    const int bound = w.h.degree_bound(f);
    c.require(bound <= 3, "sample exceeds M <= 3");
    for (int j = bound; j <= bound + 2; ++j)
      c.require(w.h.t_matrix(f, j).empty(),
                "nonzero block at j = " + std::to_string(j) + " for " + to_string(f));
  }
  return c.outcome();
}

Outcome positivity() {
  Checker c;
  for (const Shape& sh : {make_shape(1, 1), make_shape(1, 2), make_shape(2, 2)}) {
    World w(sh);
    for (int j = 0; j <= 4; ++j)
      for (const Rational& q0 : {Rational(1, 4), Rational(1, 2), Rational(3, 4)})
        c.require(w.h.check_positive(j, q0),
                  "gram(" + std::to_string(j) + ") on " + shape_name(sh) + " at q = " + to_string(q0));
  }
  Sampler rng(7);
  std::vector<std::unique_ptr<World>> worlds;
  for (const Shape& sh : {make_shape(1, 1), make_shape(1, 2), make_shape(2, 2)}) worlds.push_back(std::make_unique<World>(sh));
  for (int i = 0; i < 25; ++i) {
    World& w = *worlds[i % worlds.size()];
    const Element f = rng.element(w.alg, SampleSpec{2, 2, 3, true});
    const Rational v = w.h.integrate(w.alg.multiply(star(f), f)).evaluate_at(Rational(1, 2));
    c.require(v > 0, "integral of f*f = " + to_string(v) + " for f = " + to_string(f));
  }
  return c.outcome();
}

Outcome invariance() {
  Checker c;
  long count = 0;
  for (const Shape& sh : {make_shape(1, 1), make_shape(1, 2)}) {
    World w(sh);
    for (const auto& mono : sandwich_monomials(sh, 2))
      for (const QGen& g : all_generators(sh)) {
        const Scalar d = w.h.check_invariance(g, w.alg.monomial(mono));
        c.require(d.is_zero(), g.name() + " on " + to_string(mono) + ": " + d.to_string());
        ++count;
      }
  }
  Outcome o = c.outcome();
  if (o.ok) o.detail = std::to_string(count) + " pairs";
  return o;
}

Outcome faithfulness() {
  Checker c;
  for (const Shape& sh : {make_shape(1, 1), make_shape(1, 2)}) {
    World w(sh);
    for (const auto& mono : sandwich_monomials(sh, 2)) {
      const Element f = w.alg.monomial(mono);
      bool found = false;
      for (int j = 0; j < w.h.degree_bound(f) && !found; ++j) found = !w.h.t_matrix(f, j).empty();
      c.require(found, "T vanishes below the bound for " + to_string(mono));
    }
  }
  return c.outcome();
}

std::pair<int, std::string> shell(const std::string& args) {
  const std::string cmd = std::string(QBALL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 512> buf{};
  std::string out;
  while (std::fgets(buf.data(), int(buf.size()), p)) out += buf.data();
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_contract() {
  Checker c;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"integrate --m 1 --n 1 \"f0\"", "1\n"},
      {"integrate --m 1 --n 1 \"z[1,1]*f0*zs[1,1]\"", "q^-2 - 1\n"},
      {"integrate --m 1 --n 1 --q 1/2 \"z[1,1]*f0*zs[1,1]\"", "q^-2 - 1\n3\n"},
      {"normalize --m 1 --n 1 \"zs[1,1]*z[1,1]\"", "q^2 * z[1,1]*zs[1,1] + (1 - q^2)\n"},
  };
  for (const auto& [args, expected] : cases) {
    const auto [code, out] = shell(args);
    c.require(code == 0 && out == expected, "qball " + args + " gave '" + out + "'");
  }
  for (const char* shape : {"--m 1 --n 1", "--m 1 --n 2", "--m 2 --n 2"}) {
    const auto [code, out] = shell(std::string("verify ") + shape);
    c.require(code == 0, std::string("verify ") + shape + " exited " + std::to_string(code));
  }
  const auto [code, out] = shell("verify --m 1 --n 2 --perturb-r-prime");
  c.require(code == 3, "perturbed verify exited " + std::to_string(code));
  return c.outcome();
}

}  // namespace

int main() {
  std::vector<std::unique_ptr<Algebra>> algs;
  for (const Shape& sh : kFourShapes) algs.push_back(std::make_unique<Algebra>(sh));
  std::vector<std::pair<const Algebra*, Triple>> corpus;

  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "relation fidelity", 1, relation_fidelity},
      {2, "associativity",
       60,
       [&] {
         corpus = product_corpus(algs);
         return associativity(corpus);
       }},
      {3, "star laws", 60, [&] { return star_laws(corpus); }},
      {4, "covariance", 300, covariance},
      {5, "disc closed forms", 1, disc_closed_forms},
      {6, "degree bound", 120, degree_bound_blocks},
      {7, "positivity", 300, positivity},
      {8, "invariance", 600, invariance},
      {9, "faithfulness", 120, faithfulness},
      {10, "cli contract", 60, cli_contract},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > cr.limit_seconds) o = {false, "over time limit"};
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << cr.id << " (" << cr.name << "): " << secs << " s / "
         << cr.limit_seconds << " s";
    if (!o.detail.empty()) line << " - " << o.detail;
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
