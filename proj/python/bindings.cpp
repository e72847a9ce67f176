#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qmm/cli.hpp"
#include "qmm/koszul.hpp"
#include "qmm/macmahon.hpp"

namespace py = pybind11;
using namespace qmm;

namespace {

ParamMode mode_from(const std::string &params, int n) {
  if (params == "multi")
    return ParamMode::multi(n);
  if (params == "single")
    return ParamMode::single();
  throw UsageError("params must be 'multi' or 'single'");
}

OracleOptions oracle_from(const std::string &mode, int seeds, std::uint64_t seed) {
  if (mode != "exact" && mode != "specialize")
    throw UsageError("mode must be 'exact' or 'specialize'");
  OracleOptions o;
  o.exact = mode == "exact";
  o.specializations = seeds;
  o.seed = seed;
  return o;
}

using Term = std::tuple<long, std::vector<int>, std::vector<std::pair<int, int>>>;

NCPoly poly_from(int n, const ParamMode &mode, const std::vector<Term> &terms) {
  NCPoly p(Alphabet::z(n), mode);
  for (const auto &[coeff, exponents, letters] : terms) {
    Word w;
    for (const auto &[i, j] : letters) {
      if (i < 1 || i > n || j < 1 || j > n)
        throw UsageError("letter index outside 1..n");
      w.push_back(z_code(n, i, j));
    }
    ParamScalar c = exponents.empty()
                        ? ParamScalar(coeff) * ParamScalar::one(mode)
                        : ParamScalar::monomial(mode, exponents, mpz_class(coeff));
    p.add_term(w, c);
  }
  return p;
}

} // namespace

PYBIND11_MODULE(_qmm, m) {
  m.doc() = "Exact quantum MacMahon master identity checks";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def(
      "qdet",
      [](int n, const std::vector<int> &subset, const std::string &params) {
        return qdet(mode_from(params, n), n, subset).to_string();
      },
      py::arg("n"), py::arg("subset"), py::arg("params") = "multi");

  m.def(
      "verify_master",
      [](int n, int degree, const std::string &params, const std::string &mode,
         int seeds, std::uint64_t seed) {
        IdealOracle oracle(n, mode_from(params, n), oracle_from(mode, seeds, seed));
        return to_json(verify_master(oracle, degree)).dump();
      },
      py::arg("n"), py::arg("degree"), py::arg("params") = "multi",
      py::arg("mode") = "specialize", py::arg("seeds") = 3, py::arg("seed") = 1);

  m.def(
      "verify_twisted",
      [](int n, int degree, const std::string &mode, int seeds,
         std::uint64_t seed) {
        IdealOracle oracle(n, ParamMode::single(), oracle_from(mode, seeds, seed));
        return to_json(verify_twisted(oracle, degree)).dump();
      },
      py::arg("n"), py::arg("degree"), py::arg("mode") = "specialize",
      py::arg("seeds") = 3, py::arg("seed") = 1);

  m.def(
      "koszul",
      [](int n, int ell, const std::string &params, const std::string &mode,
         int seeds, std::uint64_t seed) {
        const KoszulComplex c = build_complex(mode_from(params, n), n, ell);
        ExactnessOptions o;
        o.exact = mode == "exact";
        o.specializations = seeds;
        o.seed = seed;
        auto j = to_json(check_exactness(c, o));
        j["d_squared_zero"] = d_squared_zero(c);
        return j.dump();
      },
      py::arg("n"), py::arg("ell"), py::arg("params") = "multi",
      py::arg("mode") = "specialize", py::arg("seeds") = 3, py::arg("seed") = 1);

  m.def(
      "classical_check",
      [](const std::vector<std::vector<std::string>> &matrix, int degree) {
        RationalMatrix M;
        for (const auto &row : matrix) {
          std::vector<mpq_class> r;
          for (const auto &e : row)
            r.push_back(cli::parse_rational(e));
          M.push_back(std::move(r));
        }
        const ClassicalResult r = classical_check(M, degree);
        std::vector<std::string> bos;
        for (const auto &x : r.bos)
          bos.push_back(x.get_str());
        return py::make_tuple(r.pass, bos);
      },
      py::arg("matrix"), py::arg("degree") = 6);

  m.def(
      "ideal_member",
      [](int n, const std::vector<Term> &terms, const std::string &params,
         const std::string &mode, int seeds, std::uint64_t seed) {
        const ParamMode pm = mode_from(params, n);
        IdealOracle oracle(n, pm, oracle_from(mode, seeds, seed));
        return std::string(to_string(oracle.check(poly_from(n, pm, terms)).verdict));
      },
      py::arg("n"), py::arg("terms"), py::arg("params") = "multi",
      py::arg("mode") = "specialize", py::arg("seeds") = 3, py::arg("seed") = 1,
      "terms: list of (coefficient, q-exponents, [(lower, upper), ...]); "
      "returns 'member', 'non-member' or 'inconclusive'");

  m.def(
      "relations",
      [](int n, const std::string &params) {
        std::vector<std::string> out;
        for (const auto &r : build_relations(n, mode_from(params, n)).relations)
          out.push_back(r.element.to_string());
        return out;
      },
      py::arg("n"), py::arg("params") = "multi");

  m.def(
      "run_cli",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "arguments after the program name; returns (code, stdout, stderr)");
}
