#include "qmm/cli.hpp"

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "qmm/koszul.hpp"
#include "qmm/macmahon.hpp"

namespace qmm::cli {

using json = nlohmann::ordered_json;

mpq_class parse_rational(const std::string &text) {
  static const std::regex pattern(R"(\s*([+-]?[0-9]+)(?:/([0-9]+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw UsageError("not a rational number: '" + text + "'");
  mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
  mpz_class den = m[2].matched ? mpz_class(m[2].str()) : mpz_class(1);
  if (den == 0)
    throw UsageError("zero denominator in '" + text + "'");
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

namespace {

struct Outcome {
  json results = json::array();
  int code = Pass;
  std::string text;
};

int combine(int a, int b) {
  // failure dominates undecided, which dominates success
  if (a == Fail || b == Fail)
    return Fail;
  if (a == Inconclusive || b == Inconclusive)
    return Inconclusive;
  return Pass;
}

int code_of(Verdict v) {
  switch (v) {
  case Verdict::Member:
    return Pass;
  case Verdict::NonMember:
    return Fail;
  case Verdict::Inconclusive:
    return Inconclusive;
  }
  return Fail;
}

const char *status_word(int code) {
  return code == Pass ? "PASS" : code == Inconclusive ? "INCONCLUSIVE" : "FAIL";
}

void require_n(const RunConfig &c) {
  if (c.n < 1)
    throw UsageError("--n must be at least 1");
}

void require_degree(const RunConfig &c) {
  if (c.degree < 0)
    throw UsageError("--degree must be given and nonnegative");
}

ParamMode make_mode(const RunConfig &c) {
  if (c.params == "multi") {
    if (!c.q.empty())
      throw UsageError("--q is only meaningful with --params numeric");
    return ParamMode::multi(c.n);
  }
  if (c.params == "single") {
    if (!c.q.empty())
      throw UsageError("--q is only meaningful with --params numeric");
    return ParamMode::single();
  }
  if (c.params == "numeric") {
    if (static_cast<int>(c.q.size()) != pair_count(c.n))
      throw UsageError("--params numeric needs --q with " +
                       std::to_string(pair_count(c.n)) +
                       " values (q12, q13, ..., in row order)");
    std::vector<mpq_class> values;
    for (const auto &s : c.q)
      values.push_back(parse_rational(s));
    return ParamMode::numeric(c.n, std::move(values));
  }
  throw UsageError("unknown --params value '" + c.params + "'");
}

OracleOptions make_oracle_options(const RunConfig &c) {
  if (c.seeds < 1)
    throw UsageError("--seeds must be at least 1");
  OracleOptions o;
  o.exact = c.mode == "exact";
  o.specializations = c.seeds;
  o.seed = c.seed;
  return o;
}

json config_json(const RunConfig &c) {
  json j;
  j["n"] = c.n;
  if (c.command != "qdet")
    j["degree"] = c.degree;
  j["params"] = c.params;
  if (!c.q.empty())
    j["q"] = c.q;
  if (c.command != "qdet" && c.command != "classical") {
    j["mode"] = c.mode;
    j["seeds"] = c.seeds;
    j["seed"] = c.seed;
  }
  if (c.command == "qdet")
    j["subset"] = c.subset;
  if (c.command == "koszul")
    j["ell"] = c.ell;
  if (c.command == "classical") {
    j["seed"] = c.seed;
    if (!c.matrix_file.empty())
      j["matrix"] = c.matrix_file;
    else
      j["random"] = c.random;
  }
  return j;
}

std::string master_text(const MasterReport &r) {
  std::ostringstream s;
  for (const auto &d : r.degrees)
    s << "degree " << d.degree << ": " << d.residual_terms_before_reduction
      << " residual terms, " << d.oracle_mode << ": " << to_string(d.verdict)
      << "\n";
  return s.str();
}

Outcome cmd_verify(const RunConfig &c) {
  require_n(c);
  require_degree(c);
  IdealOracle oracle(c.n, make_mode(c), make_oracle_options(c));
  const MasterReport r = verify_master(oracle, c.degree);
  Outcome o;
  o.results.push_back(to_json(r));
  o.code = code_of(r.verdict());
  o.text = master_text(r);
  return o;
}

Outcome cmd_twisted(const RunConfig &c) {
  require_n(c);
  require_degree(c);
  if (c.params != "single")
    throw UsageError("the twisted identity needs --params single");
  IdealOracle oracle(c.n, make_mode(c), make_oracle_options(c));
  const MasterReport r = verify_twisted(oracle, c.degree);
  Outcome o;
  o.results.push_back(to_json(r));
  o.code = code_of(r.verdict());
  o.text = master_text(r) + "weights match torus action: " +
           (r.weights_consistent ? "yes" : "no") + "\n";
  return o;
}

Subset parse_subset(const std::string &text) {
  Subset J;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    static const std::regex digits(R"(\s*[0-9]+\s*)");
    if (!std::regex_match(item, digits))
      throw UsageError("bad subset entry '" + item + "'");
    J.push_back(std::stoi(item));
  }
  return J;
}

Outcome cmd_qdet(const RunConfig &c) {
  require_n(c);
  const Subset J = parse_subset(c.subset);
  validate_subset(c.n, J);
  const ParamMode mode = make_mode(c);
  const NCPoly det = qdet(mode, c.n, J);
  Outcome o;
  o.results.push_back({{"subset", J},
                       {"qdet", det.to_string()},
                       {"terms", to_json(det)}});
  o.text = det.to_string() + "\n";
  return o;
}

Outcome cmd_koszul(const RunConfig &c) {
  require_n(c);
  if (c.ell < 0)
    throw UsageError("--ell must be positive");
  int lo = c.ell, hi = c.ell;
  if (c.ell == 0) {
    if (c.degree < 1)
      throw UsageError("koszul needs --ell or a positive --degree to sweep");
    lo = 1;
    hi = c.degree;
  }
  if (c.seeds < 1)
    throw UsageError("--seeds must be at least 1");
  const ParamMode mode = make_mode(c);
  ExactnessOptions options;
  options.exact = c.mode == "exact";
  options.specializations = c.seeds;
  options.seed = c.seed;
  Outcome o;
  std::ostringstream text;
  for (int ell = lo; ell <= hi; ++ell) {
    const KoszulComplex complex = build_complex(mode, c.n, ell);
    const bool dd = d_squared_zero(complex);
    const ExactnessReport r = check_exactness(complex, options);
    json j = to_json(r);
    j["d_squared_zero"] = dd;
    o.results.push_back(std::move(j));
    int code = r.verdict == Verdict::Inconclusive ? Inconclusive
               : (dd && r.exact_sequence())      ? Pass
                                                 : Fail;
    o.code = combine(o.code, code);
    text << "l=" << ell << " dims";
    for (auto d : r.dims)
      text << " " << d;
    text << " ranks";
    for (auto d : r.ranks)
      text << " " << d;
    text << " homology";
    for (auto h : r.homology)
      text << " " << h;
    text << " d^2=0 " << (dd ? "yes" : "no") << " [" << r.mode << "]\n";
  }
  o.text = text.str();
  return o;
}

RationalMatrix read_matrix(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open matrix file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw UsageError("matrix file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_array() || j.empty())
    throw UsageError("matrix must be a nonempty array of rows");
  RationalMatrix M;
  for (const auto &row : j) {
    if (!row.is_array() || row.size() != j.size())
      throw UsageError("matrix must be square");
    std::vector<mpq_class> r;
    for (const auto &e : row) {
      if (e.is_string())
        r.push_back(parse_rational(e.get<std::string>()));
      else if (e.is_number_integer())
        r.emplace_back(e.get<long>());
      else
        throw UsageError("matrix entries must be rational strings \"p/q\"");
    }
    M.push_back(std::move(r));
  }
  return M;
}

json rational_list(const std::vector<mpq_class> &v) {
  json j = json::array();
  for (const auto &x : v)
    j.push_back(x.get_str());
  return j;
}

Outcome cmd_classical(RunConfig &c) {
  if (c.degree < 0)
    c.degree = 6;
  std::vector<RationalMatrix> matrices;
  if (!c.matrix_file.empty()) {
    if (c.random != 0)
      throw UsageError("give either --matrix or --random, not both");
    matrices.push_back(read_matrix(c.matrix_file));
    c.n = static_cast<int>(matrices.front().size());
  } else if (c.random > 0) {
    if (c.n == 0)
      c.n = 2;
    require_n(c);
    matrices = random_rational_matrices(c.n, c.random, c.seed);
  } else {
    throw UsageError("classical needs --matrix FILE or --random K");
  }
  const ClassicalChecker checker(c.n, c.degree);
  Outcome o;
  std::ostringstream text;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const ClassicalResult r = checker.check(matrices[k]);
    json rows = json::array();
    for (const auto &row : matrices[k])
      rows.push_back(rational_list(row));
    o.results.push_back({{"index", k},
                         {"matrix", rows},
                         {"bos", rational_list(r.bos)},
                         {"det_one_minus_tz", rational_list(r.determinant)},
                         {"product", rational_list(r.product)},
                         {"pass", r.pass}});
    o.code = combine(o.code, r.pass ? Pass : Fail);
    text << "matrix " << k << ": series";
    for (const auto &x : r.bos)
      text << " " << x.get_str();
    text << " | det(I-tZ)";
    for (const auto &x : r.determinant)
      text << " " << x.get_str();
    text << " | " << (r.pass ? "pass" : "fail") << "\n";
  }
  o.text = text.str();
  return o;
}

void add_common(CLI::App *sub, RunConfig &c, bool oracle_flags) {
  sub->add_option("--n", c.n, "matrix size n")->check(CLI::PositiveNumber);
  sub->add_option("--params", c.params, "multi | single | numeric")
      ->check(CLI::IsMember({"multi", "single", "numeric"}));
  sub->add_option("--q", c.q, "numeric parameters q12,q13,... as p/q")
      ->delimiter(',');
  sub->add_option("--output", c.output, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  if (oracle_flags) {
    sub->add_option("--mode", c.mode, "exact | specialize")
        ->check(CLI::IsMember({"exact", "specialize"}));
    sub->add_option("--seeds", c.seeds,
                    "number of random specializations (default 3)");
    sub->add_option("--seed", c.seed, "base seed of the specialization draws");
  }
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  RunConfig c;
  CLI::App app{"Exact verification of the quantum MacMahon master identity"};
  app.require_subcommand(1);

  auto *verify = app.add_subcommand("verify", "check Bos * Ferm = 1 up to --degree");
  add_common(verify, c, true);
  verify->add_option("--degree", c.degree, "truncation degree")->required();

  auto *qdet_cmd = app.add_subcommand("qdet", "print the quantum minor of --subset");
  add_common(qdet_cmd, c, false);
  qdet_cmd->add_option("--subset", c.subset, "comma separated indices")->required();

  auto *koszul_cmd = app.add_subcommand("koszul", "homology of the Koszul complexes");
  add_common(koszul_cmd, c, true);
  koszul_cmd->add_option("--ell", c.ell, "internal degree l");
  koszul_cmd->add_option("--degree", c.degree, "sweep l = 1..degree");

  auto *twisted = app.add_subcommand("twisted", "check the torus-twisted identity");
  add_common(twisted, c, true);
  twisted->add_option("--degree", c.degree, "truncation degree")->required();

  auto *classical = app.add_subcommand("classical", "commutative check at q = 1");
  classical->add_option("--n", c.n, "matrix size for --random")
      ->check(CLI::PositiveNumber);
  classical->add_option("--degree", c.degree, "truncation degree (default 6)");
  classical->add_option("--matrix", c.matrix_file, "JSON array of rows of \"p/q\"");
  classical->add_option("--random", c.random, "number of random matrices")
      ->check(CLI::PositiveNumber);
  classical->add_option("--seed", c.seed, "seed for --random");
  classical->add_option("--output", c.output, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Pass : Usage;
  }

  if (twisted->parsed() && twisted->count("--params") == 0)
    c.params = "single";
  c.command = app.get_subcommands().front()->get_name();

  Outcome o;
  try {
    if (c.command == "verify")
      o = cmd_verify(c);
    else if (c.command == "qdet")
      o = cmd_qdet(c);
    else if (c.command == "koszul")
      o = cmd_koszul(c);
    else if (c.command == "twisted")
      o = cmd_twisted(c);
    else
      o = cmd_classical(c);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return Fail;
  }

  if (c.output == "json") {
    json report;
    report["command"] = c.command;
    report["config"] = config_json(c);
    report["results"] = std::move(o.results);
    report["pass"] = o.code == Pass;
    out << report.dump(2) << "\n";
  } else {
    out << o.text;
    if (c.command != "qdet")
      out << status_word(o.code) << "\n";
  }
  return o.code;
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  std::vector<const char *> argv;
  argv.push_back("qmm");
  for (const auto &a : args)
    argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace qmm::cli
