#include "qball/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "qball/expr.hpp"
#include "qball/harmonic.hpp"
#include "qball/sample.hpp"

namespace qball::cli {

namespace {

struct Inputs {
  std::string expression;
  std::string file;
  std::string word;
  std::string q_text;
  std::string format = "text";
  int degree = -1;
};

std::string read_expression(const Inputs& in, std::istream& stdin_stream) {
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw Error("cannot open '" + in.file + "'");
    return std::string(std::istreambuf_iterator<char>(f), {});
  }
  if (!in.expression.empty() && in.expression != "-") return in.expression;
  return std::string(std::istreambuf_iterator<char>(stdin_stream), {});
}

Element evaluate_coefficients(const Element& f, const Rational& q) {
  Element out(f.shape());
  for (const auto& [mono, c] : f.terms()) out.add_term(mono, Scalar(c.evaluate_at(q)));
  return out;
}

void print_element(const Element& f, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::Json) {
    nlohmann::json j = to_json(f);
    if (cfg.q_value) j["numeric"] = to_string(evaluate_coefficients(f, *cfg.q_value));
    out << j.dump() << '\n';
    return;
  }
  out << to_string(f) << '\n';
  if (cfg.q_value) out << to_string(evaluate_coefficients(f, *cfg.q_value)) << '\n';
}

template <class T, class Fn>
void print_matrix(const Matrix<T>& m, Fn&& cell, std::ostream& out) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << cell(m(r, c));
    out << "]\n";
  }
}

template <class T, class Fn>
nlohmann::json matrix_json(const Matrix<T>& m, Fn&& cell) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cell(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

int cmd_normalize(const RunConfig& cfg, const Action& action, const std::string& text, std::ostream& out) {
  Element f = parse_element(text, action);
  if (cfg.star) f = star(f);
  print_element(f, cfg, out);
  return exit_code::ok;
}

int cmd_act(const RunConfig& cfg, const Action& action, const std::string& word, const std::string& text,
            std::ostream& out) {
  const std::vector<QGen> gens = parse_generator_word(word, action.algebra().shape());
  print_element(action.act_sequence(gens, parse_element(text, action)), cfg, out);
  return exit_code::ok;
}

int cmd_integrate(const RunConfig& cfg, const Harmonic& h, const std::string& text, std::ostream& out,
                  std::ostream& err) {
  const Element f = parse_element(text, h.action());
  if (!is_finite(f)) {
    err << "error: integrate needs a finite element (every term must contain f0): " << to_string(f) << '\n';
    return exit_code::not_finite;
  }
  const Scalar value = h.integrate(f);
  if (cfg.format == Format::Json) {
    nlohmann::json j{{"value", value.to_string()}};
    if (cfg.q_value) j["numeric"] = to_string(value.evaluate_at(*cfg.q_value));
    out << j.dump() << '\n';
  } else {
    out << value.to_string() << '\n';
    if (cfg.q_value) out << to_string(value.evaluate_at(*cfg.q_value)) << '\n';
  }
  return exit_code::ok;
}

int cmd_gram(const RunConfig& cfg, const Harmonic& h, int degree, std::ostream& out) {
  const GramMatrix& g = h.gram(degree);
  auto exact = [](const Scalar& s) { return s.to_string(); };
  auto numeric = [](const Rational& r) { return to_string(r); };
  if (cfg.format == Format::Json) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& mono : h.basis(degree)) basis.push_back(to_string(mono));
    nlohmann::json j{{"degree", degree}, {"basis", basis}, {"matrix", matrix_json(g.matrix, exact)}};
    if (cfg.q_value) j["numeric"] = matrix_json(evaluate_at(g.matrix, *cfg.q_value), numeric);
    out << j.dump() << '\n';
    return exit_code::ok;
  }
  print_matrix(g.matrix, exact, out);
  if (cfg.q_value) {
    out << '\n';
    print_matrix(evaluate_at(g.matrix, *cfg.q_value), numeric, out);
  }
  return exit_code::ok;
}

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string summary;
};

SuiteResult suite_covariance(const Algebra& alg, int cap) {
  const CovarianceReport r = validate_covariance(alg, HopfConvention::standard(), cap);
  if (!r.passed) return {"covariance", false, r.first_failure};
  return {"covariance", true, std::to_string(r.checks) + " checks"};
}

SuiteResult suite_products(const Algebra& alg) {
  Sampler rng(0x5eed);
  const SampleSpec spec{2, 1, 2, false};
  const int trials = 40;
  for (int i = 0; i < trials; ++i) {
    const Element u = rng.element(alg, spec), v = rng.element(alg, spec), w = rng.element(alg, spec);
    const Element uv = alg.multiply(u, v);
    if (alg.multiply(uv, w) != alg.multiply(u, alg.multiply(v, w)))
      return {"associativity", false, "(uv)w != u(vw) for u = " + to_string(u) + ", v = " + to_string(v) +
                                          ", w = " + to_string(w)};
    if (star(uv) != alg.multiply(star(v), star(u)))
      return {"associativity", false, "(uv)* != v*u* for u = " + to_string(u) + ", v = " + to_string(v)};
    if (star(star(u)) != u) return {"associativity", false, "u** != u for u = " + to_string(u)};
  }
  return {"associativity", true, std::to_string(trials) + " triples"};
}

SuiteResult suite_positivity(const Harmonic& h, const RunConfig& cfg) {
  std::vector<Rational> grid;
  if (cfg.q_value)
    grid.push_back(*cfg.q_value);
  else
    grid = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  long count = 0;
  for (int j = 0; j <= cfg.degree_cap; ++j)
    for (const Rational& q : grid) {
      if (!h.check_positive(j, q))
        return {"positivity", false, "gram(" + std::to_string(j) + ") not positive definite at q = " + to_string(q)};
      ++count;
    }
  return {"positivity", true, std::to_string(count) + " matrices"};
}

SuiteResult suite_invariance(const Harmonic& h, const Algebra& alg) {
  const int cap = alg.shape().N() > 3 ? 1 : 2;
  long count = 0;
  for (const auto& mono : sandwich_monomials(alg.shape(), cap)) {
    const Element f = alg.monomial(mono);
    for (QGen g : all_generators(alg.shape())) {
      const Scalar defect = h.check_invariance(g, f);
      if (!defect.is_zero())
        return {"invariance", false,
                g.name() + " on " + to_string(mono) + ": integral defect " + defect.to_string()};
      ++count;
    }
  }
  return {"invariance", true, std::to_string(count) + " pairs"};
}

int cmd_verify(const RunConfig& cfg, const Algebra& alg, const Harmonic& h, std::ostream& out) {
  using Suite = std::function<SuiteResult()>;
  const std::vector<Suite> suites{
      [&] { return suite_covariance(alg, cfg.degree_cap); },
      [&] { return suite_products(alg); },
      [&] { return suite_positivity(h, cfg); },
      [&] { return suite_invariance(h, alg); },
  };
  nlohmann::json report = nlohmann::json::array();
  bool ok = true;
  for (const Suite& suite : suites) {
    const SuiteResult r = suite();
    if (cfg.format == Format::Json)
      report.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.summary}});
    else
      out << r.name << ": " << (r.passed ? "ok (" + r.summary + ")" : "FAIL: " + r.summary) << '\n';
    if (!r.passed) {
      ok = false;
      break;
    }
  }
  if (cfg.format == Format::Json) out << nlohmann::json{{"passed", ok}, {"suites", report}}.dump() << '\n';
  return ok ? exit_code::ok : exit_code::verify_failed;
}

void add_common(CLI::App* sub, RunConfig& cfg, Inputs& in) {
  sub->add_option("--m", cfg.m, "number of columns")->required()->check(CLI::Range(1, 16));
  sub->add_option("--n", cfg.n, "number of rows")->required()->check(CLI::Range(1, 16));
  sub->add_option("--q", in.q_text, "rational q in (0,1) for numeric evaluation");
  sub->add_option("--format", in.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_flag("--perturb-r-prime", cfg.perturb_r_prime)->group("");
}

void add_input(CLI::App* sub, Inputs& in) {
  sub->add_option("expression", in.expression, "expression, or '-' for stdin");
  sub->add_option("--file", in.file, "read the expression from a file")->check(CLI::ExistingFile);
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in_stream, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on quantum matrix ball algebras", "qball"};
  app.require_subcommand(1);
  RunConfig cfg;
  Inputs in;

  CLI::App* normalize = app.add_subcommand("normalize", "print the normal form of an expression");
  add_common(normalize, cfg, in);
  add_input(normalize, in);
  normalize->add_flag("--star", cfg.star, "print the star of the result");

  CLI::App* act = app.add_subcommand("act", "apply a generator word, left to right");
  add_common(act, cfg, in);
  act->add_option("word", in.word, "generator word such as \"En Fn K1\"")->required();
  add_input(act, in);

  CLI::App* integrate = app.add_subcommand("integrate", "invariant integral of a finite element");
  add_common(integrate, cfg, in);
  add_input(integrate, in);

  CLI::App* gram = app.add_subcommand("gram", "Gram matrix on a degree of the vacuum module");
  add_common(gram, cfg, in);
  gram->add_option("--degree", in.degree, "degree j")->required()->check(CLI::NonNegativeNumber);

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, cfg, in);
  verify->add_option("--degree", cfg.degree_cap, "degree cap")->check(CLI::Range(1, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return exit_code::ok;
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << '\n' << sub->help();
    return exit_code::usage;
  }

  try {
    cfg.format = in.format == "json" ? Format::Json : Format::Text;
    if (!in.q_text.empty()) {
      const Rational q = parse_rational(in.q_text);
      if (q <= 0 || q >= 1) throw Error("--q must lie strictly between 0 and 1");
      cfg.q_value = q;
    }
    const Algebra algebra(make_shape(cfg.m, cfg.n), AlgebraOptions{cfg.perturb_r_prime});
    const Action action(algebra);
    const Harmonic harmonic(action);

    if (normalize->parsed()) return cmd_normalize(cfg, action, read_expression(in, in_stream), out);
    if (act->parsed()) return cmd_act(cfg, action, in.word, read_expression(in, in_stream), out);
    if (integrate->parsed()) return cmd_integrate(cfg, harmonic, read_expression(in, in_stream), out, err);
    if (gram->parsed()) return cmd_gram(cfg, harmonic, in.degree, out);
    return cmd_verify(cfg, algebra, harmonic, out);
  } catch (const NotFinite& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::not_finite;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace qball::cli
