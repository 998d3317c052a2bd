#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qball/scalar.hpp"

namespace qball::cli {

enum class Format { Text, Json };

struct RunConfig {
  int m = 1;
  int n = 1;
  std::optional<Rational> q_value;
  int degree_cap = 3;
  Format format = Format::Text;
  bool star = false;
  bool perturb_r_prime = false;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int not_finite = 2;
inline constexpr int verify_failed = 3;
}  // namespace exit_code

/// Runs the command line. Reads stdin only when no expression or file is given.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qball::cli
