#pragma once

// Command-line front end: verify, qdet, koszul, twisted, classical.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qmm::cli {

enum ExitCode : int { Pass = 0, Fail = 1, Usage = 2, Inconclusive = 3 };

struct RunConfig {
  std::string command;
  int n = 0;
  int degree = -1;
  std::string params = "multi"; // multi | single | numeric
  std::vector<std::string> q;   // numeric assignment, one "p/q" per pair
  std::string mode = "specialize";
  int seeds = 3;
  std::uint64_t seed = 1;
  std::string subset;
  int ell = 0;
  std::string output = "text";
  std::string matrix_file;
  int random = 0;
};

/// "p", "-p" or "p/q" with q > 0.  Throws on anything else.
mpq_class parse_rational(const std::string &text);

/// Runs one command line (argv[0] is the program name).  Never throws;
/// returns one of the exit codes above.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace qmm::cli
