#include "doctest.h"

#include "qmm/koszul.hpp"
#include "qmm/macmahon.hpp"
#include "support.hpp"

using namespace qmm;

namespace {

ParamScalar q(const ParamMode &m, int i, int j, int e = 1) {
  return ParamScalar::q(m, i, j, e);
}

ExactnessOptions exact_ranks() {
  ExactnessOptions o;
  o.exact = true;
  return o;
}

} // namespace

TEST_CASE("one variable") {
  const auto m = ParamMode::multi(1);
  const auto c1 = build_complex(m, 1, 1);
  CHECK(c1.dimensions() == std::vector<std::size_t>{1, 1});
  CHECK(c1.differentials[0].entries[0][0].is_one());

  const auto c5 = build_complex(m, 1, 5);
  CHECK(c5.dimensions() == std::vector<std::size_t>{0, 0, 0, 0, 1, 1});
  const auto r = check_exactness(c5, exact_ranks());
  CHECK(r.exact_sequence());
  CHECK_THROWS_AS(build_complex(m, 1, 0), UsageError);
}

TEST_CASE("n = 2, l = 2") {
  const auto m = ParamMode::multi(2);
  const auto c = build_complex(m, 2, 2);
  CHECK(c.dimensions() == std::vector<std::size_t>{1, 4, 3});
  const auto &d0 = c.differentials[0];
  CHECK(d0.rows == 4);
  CHECK(d0.cols == 1);
  const std::size_t a = c.index_of(1, {{1}, {{0, 1}}});
  const std::size_t b = c.index_of(1, {{2}, {{1, 0}}});
  CHECK(d0.entries[a][0].is_one());
  CHECK(d0.entries[b][0] == -q(m, 1, 2, -1));
  CHECK(d0.entries[c.index_of(1, {{1}, {{1, 0}}})][0].is_zero());

  // last map: wedge(j) (x) x^r -> x_j x^r normalized
  const auto &d1 = c.differentials[1];
  const std::size_t from = c.index_of(1, {{2}, {{1, 0}}});
  CHECK(d1.entries[c.index_of(2, {{}, {{1, 1}}})][from] == q(m, 1, 2));
  CHECK(d1.entries[c.index_of(2, {{}, {{2, 0}}})][from].is_zero());
  CHECK(multiply(d1, d0, m).is_zero());
}

TEST_CASE("square of the differential vanishes") {
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 4; ++l) {
      CHECK(d_squared_zero(build_complex(ParamMode::multi(n), n, l)));
      CHECK(d_squared_zero(build_complex(ParamMode::single(), n, l)));
    }
}

TEST_CASE("exactness over the Laurent ring") {
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 3; ++l) {
      const auto r = check_exactness(build_complex(ParamMode::multi(n), n, l),
                                     exact_ranks());
      CHECK(r.exact_sequence());
      CHECK(r.mode == "exact");
      for (auto h : r.homology)
        CHECK(h == 0);
      CHECK(r.dims.size() == static_cast<std::size_t>(l + 1));
      CHECK(r.ranks.size() == static_cast<std::size_t>(l));
    }
}

TEST_CASE("exactness under specialization") {
  const auto r = check_exactness(build_complex(ParamMode::multi(3), 3, 2));
  CHECK(r.verdict == Verdict::Member);
  CHECK(r.exact_sequence());
  const auto r2 = check_exactness(build_complex(ParamMode::multi(2), 2, 4));
  CHECK(r2.exact_sequence());
}

TEST_CASE("dimensions and Euler characteristic") {
  for (int n = 1; n <= 5; ++n)
    for (int l = 1; l <= 8; ++l) {
      CHECK(euler_characteristic(n, l) == 0);
      for (int i = 0; i <= l; ++i)
        CHECK(koszul_dimension(n, l, i) == binomial(n, l - i) * binomial(n + i - 1, i));
    }
  for (int n = 1; n <= 3; ++n)
    for (int l = 1; l <= 4; ++l) {
      const auto c = build_complex(ParamMode::multi(n), n, l);
      const auto dims = c.dimensions();
      for (int i = 0; i <= l; ++i)
        CHECK(dims[i] == koszul_dimension(n, l, i));
    }
}

TEST_CASE("ranks") {
  const auto m = ParamMode::multi(2);
  ScalarMatrix a(2, 2, m);
  a.entries[0][0] = q(m, 1, 2);
  a.entries[0][1] = ParamScalar::one(m);
  a.entries[1][0] = q(m, 1, 2) * q(m, 1, 2);
  a.entries[1][1] = q(m, 1, 2);
  CHECK(exact_rank(a) == 1);
  a.entries[1][1] = ParamScalar::one(m);
  CHECK(exact_rank(a) == 2);
  // 1 - q12 vanishes at q12 = 1 only
  ScalarMatrix b(1, 1, m);
  b.entries[0][0] = ParamScalar::one(m) - q(m, 1, 2);
  CHECK(exact_rank(b) == 1);
  CHECK(specialized_rank(b, {mpq_class(1)}) == 0);
  CHECK(specialized_rank(b, {mpq_class(3)}) == 1);
  CHECK(exact_rank(ScalarMatrix(3, 2, m)) == 0);
}

TEST_CASE("wedge decomposition") {
  const auto m = ParamMode::multi(3);
  const NCPoly w = wedge_expand(m, 3, {1, 3}).expansion * ParamScalar(3) +
                   wedge_expand(m, 3, {2, 3}).expansion * q(m, 1, 2);
  const auto parts = wedge_decompose(m, 3, 2, w);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == Subset{1, 3});
  CHECK(parts[0].second == ParamScalar(3));
  CHECK(parts[1].first == Subset{2, 3});
  CHECK(parts[1].second == q(m, 1, 2));
  CHECK_THROWS_AS(
      wedge_decompose(m, 3, 2, NCPoly::monomial(Alphabet::x(3), m, Word::x({1, 1}))),
      ConsistencyError);
}

TEST_CASE("coaction matrix of the dual wedges") {
  const auto m = ParamMode::multi(2);
  CHECK(wedge_coaction_entry(m, 2, {1}, {2}) ==
        NCPoly::monomial(Alphabet::z(2), m, Word::z(2, {{2, 1}})));
  CHECK(wedge_coaction_entry(m, 2, {1, 2}, {1, 2}) == qdet(m, 2, {1, 2}));
}

TEST_CASE("differentials commute with the coaction") {
  const auto m = ParamMode::multi(2);
  OracleOptions o;
  o.exact = true;
  const IdealOracle oracle(2, m, o);
  for (int l = 1; l <= 2; ++l) {
    const auto r = comodule_compat_check(oracle, l);
    CHECK(r.verdict == Verdict::Member);
    CHECK(r.entries_checked > 0);
  }
  const auto r3 = comodule_compat_check(IdealOracle(3, ParamMode::multi(3)), 1);
  CHECK(r3.verdict == Verdict::Member);
}

TEST_CASE("report json") {
  const auto r = check_exactness(build_complex(ParamMode::multi(2), 2, 3), exact_ranks());
  const auto j = to_json(r);
  CHECK(j["exact"] == true);
  CHECK(j["dims"] == nlohmann::ordered_json::array({0, 2, 6, 4}));
  CHECK(j["homology"] == nlohmann::ordered_json::array({0, 0, 0, 0}));
}
