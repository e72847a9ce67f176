#include "doctest.h"

#include "qmm/macmahon.hpp"
#include "support.hpp"

using namespace qmm;
using qmm::testing::random_poly;

namespace {

ParamScalar q(const ParamMode &m, int i, int j, int e = 1) {
  return ParamScalar::q(m, i, j, e);
}

NCPoly zmono(int n, const ParamMode &m, std::initializer_list<std::pair<int, int>> l) {
  return NCPoly::monomial(Alphabet::z(n), m, Word::z(n, l));
}

OracleOptions exact_options() {
  OracleOptions o;
  o.exact = true;
  return o;
}

ParamScalar qs(int e) {
  return ParamScalar::monomial(ParamMode::single(), {e}, mpz_class(1));
}

std::vector<mpq_class> ints(std::initializer_list<int> v) {
  return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("diagonal coefficients G(m)") {
  const auto m1 = ParamMode::multi(1);
  for (int l = 0; l <= 4; ++l) {
    NCPoly expect = NCPoly::one(Alphabet::z(1), m1);
    for (int k = 0; k < l; ++k)
      expect = expect * zmono(1, m1, {{1, 1}});
    CHECK(g_coefficient(m1, 1, {{l}}).value == expect);
  }

  const auto m2 = ParamMode::multi(2);
  NCPoly g11 = zmono(2, m2, {{1, 1}, {2, 2}});
  g11.add_term(Word::z(2, {{1, 2}, {2, 1}}), q(m2, 1, 2));
  CHECK(g_coefficient(m2, 2, {{1, 1}}).value == g11);
  CHECK(g_coefficient(m2, 2, {{0, 2}}).value == zmono(2, m2, {{2, 2}, {2, 2}}));
}

TEST_CASE("G(m) agrees with the full coaction on A") {
  for (int n = 1; n <= 3; ++n) {
    const auto mode = ParamMode::multi(n);
    for (int l = 0; l <= 4; ++l)
      for (const auto &m : affine_basis(n, l)) {
        const auto c = coaction_affine(mode, n, m);
        CHECK(g_coefficient(mode, n, m).value == c.at(m));
      }
  }
}

TEST_CASE("generating series") {
  const auto m1 = ParamMode::multi(1);
  const NCPoly z = zmono(1, m1, {{1, 1}});
  const auto bos = bos_series(m1, 1, 3);
  CHECK(bos.kind == SeriesKind::Bos);
  CHECK(bos.body[0] == NCPoly::one(Alphabet::z(1), m1));
  CHECK(bos.body[3] == z * z * z);
  const auto ferm = ferm_series(m1, 1, 3);
  CHECK(ferm.body[1] == -z);
  CHECK(ferm.body[2].is_zero());
  CHECK(ferm.body[3].is_zero());

  const auto m2 = ParamMode::multi(2);
  const auto f2 = ferm_series(m2, 2, 3);
  CHECK(f2.body[1] == -(zmono(2, m2, {{1, 1}}) + zmono(2, m2, {{2, 2}})));
  CHECK(f2.body[2] == qdet(m2, 2, {1, 2}));
  CHECK(f2.body[3].is_zero());
  CHECK(bos_series(m2, 2, 2).body[1] == -f2.body[1]);
}

TEST_CASE("master identity") {
  SUBCASE("one variable has zero residuals before reduction") {
    const auto r = verify_master(IdealOracle(1, ParamMode::multi(1)), 10);
    CHECK(r.pass());
    REQUIRE(r.degrees.size() == 11);
    for (const auto &d : r.degrees)
      CHECK(d.residual_terms_before_reduction == 0);
  }
  SUBCASE("degrees zero and one are free-algebra identities") {
    const auto r = verify_master(IdealOracle(3, ParamMode::multi(3)), 1);
    CHECK(r.pass());
    CHECK(r.degrees[0].residual_terms_before_reduction == 0);
    CHECK(r.degrees[1].residual_terms_before_reduction == 0);
  }
  SUBCASE("n = 2 up to degree 3 in both modes") {
    const auto m2 = ParamMode::multi(2);
    const auto exact = verify_master(IdealOracle(2, m2, exact_options()), 3);
    const auto spec = verify_master(IdealOracle(2, m2), 3);
    CHECK(exact.pass());
    CHECK(spec.pass());
    CHECK(exact.verdict() == Verdict::Member);
    CHECK(exact.degrees[2].residual_terms_before_reduction > 0);
    CHECK(exact.degrees[2].oracle_mode == "exact");
    CHECK(spec.degrees[2].oracle_mode == "specialized(k=3,seed=1)");
  }
  SUBCASE("single parameter") {
    CHECK(verify_master(IdealOracle(2, ParamMode::single()), 4).pass());
  }
}

TEST_CASE("unweighted determinant breaks the identity") {
  const auto m2 = ParamMode::multi(2);
  const IdealOracle oracle(2, m2, exact_options());
  const NCPoly trace = zmono(2, m2, {{1, 1}}) + zmono(2, m2, {{2, 2}});
  const NCPoly bos2 = bos_series(m2, 2, 2).body[2];
  // coefficient of t^2 in Bos * Ferm with a given degree-2 minor
  const NCPoly good = bos2 - bos_series(m2, 2, 2).body[1] * trace + qdet(m2, 2, {1, 2});
  CHECK(oracle.member(good));
  const NCPoly plain = zmono(2, m2, {{1, 1}, {2, 2}}) - zmono(2, m2, {{2, 1}, {1, 2}});
  const NCPoly bad = bos2 - bos_series(m2, 2, 2).body[1] * trace + plain;
  CHECK_FALSE(oracle.member(bad));
}

TEST_CASE("diagonal of the wedge coaction is the quantum minor") {
  for (int n = 1; n <= 4; ++n) {
    const auto mode = ParamMode::multi(n);
    for (int m = 1; m <= n; ++m)
      for (const auto &J : subsets_of_size(n, m))
        CHECK(wedge_coaction_diagonal(mode, n, J) == qdet(mode, n, J));
  }
  const auto m3 = ParamMode::multi(3);
  NCPoly q13 = zmono(3, m3, {{1, 1}, {3, 3}});
  q13.add_term(Word::z(3, {{3, 1}, {1, 3}}), -q(m3, 1, 3, -1));
  CHECK(qdet(m3, 3, {1, 3}) == q13);
  CHECK(qdet(m3, 3, {2}) == zmono(3, m3, {{2, 2}}));
}

TEST_CASE("quantum determinant spans the top wedge under the coaction") {
  const auto r1 = verify_qdet_coaction(IdealOracle(1, ParamMode::multi(1)));
  CHECK(r1.verdict == Verdict::Member);
  CHECK(r1.nonzero_before_reduction == 0);

  const auto r2 = verify_qdet_coaction(
      IdealOracle(2, ParamMode::multi(2), exact_options()));
  CHECK(r2.verdict == Verdict::Member);
  CHECK(r2.words_checked == 4);
  CHECK(r2.nonzero_before_reduction > 0);

  const auto r3 = verify_qdet_coaction(IdealOracle(3, ParamMode::multi(3)));
  CHECK(r3.verdict == Verdict::Member);
  CHECK(r3.words_checked == 27);
}

TEST_CASE("non-increasing coefficients of the wedge coaction do not vanish") {
  // The coefficient of x2 x1 is qdet times the wedge coefficient -q12^-1,
  // not zero.
  const auto m2 = ParamMode::multi(2);
  const IdealOracle oracle(2, m2, exact_options());
  const auto delta = coaction_tensor(wedge_expand(m2, 2, {1, 2}).expansion);
  const NCPoly c21 = delta.at(Word::x({2, 1}));
  CHECK_FALSE(oracle.member(c21));
  CHECK(oracle.member(c21 + qdet(m2, 2, {1, 2}) * q(m2, 1, 2, -1)));
}

TEST_CASE("quantum determinant is group-like") {
  CHECK(verify_qdet_grouplike(IdealOracle(2, ParamMode::multi(2), exact_options())) ==
        Verdict::Member);
  CHECK(verify_qdet_grouplike(IdealOracle(2, ParamMode::multi(2))) ==
        Verdict::Member);
}

TEST_CASE("torus action") {
  const auto s = ParamMode::single();
  TorusElement g{{qs(1), ParamScalar::one(s)}, {ParamScalar::one(s), qs(2)}};
  CHECK(torus_act(g, zmono(2, s, {{1, 2}})) == zmono(2, s, {{1, 2}}) * qs(-1));
  CHECK(torus_act(g, zmono(2, s, {{1, 1}, {2, 1}})) == zmono(2, s, {{1, 1}, {2, 1}}) * qs(1));

  const auto tau = special_torus(3);
  CHECK(tau.c[0] == qs(2));
  CHECK(tau.c[1].is_one());
  CHECK(tau.c[2] == qs(-2));

  const Alphabet za = Alphabet::z(2);
  TorusElement h{{qs(3), qs(-1)}, {qs(1), qs(2)}};
  for (int trial = 0; trial < 20; ++trial) {
    const NCPoly a = random_poly(za, s, qmm::testing::uniform(0, 2), 3);
    const NCPoly b = random_poly(za, s, qmm::testing::uniform(0, 2), 3);
    CHECK(torus_act(g, a * b) == torus_act(g, a) * torus_act(g, b));
    CHECK(torus_act(g, a + b) == torus_act(g, a) + torus_act(g, b));
    TorusElement gh{{g.c[0] * h.c[0], g.c[1] * h.c[1]}, {g.d[0] * h.d[0], g.d[1] * h.d[1]}};
    CHECK(torus_act(g, torus_act(h, a)) == torus_act(gh, a));
  }
  CHECK_THROWS_AS(torus_act(tau, zmono(2, s, {{1, 1}})), UsageError);
}

TEST_CASE("twisted weights") {
  CHECK(twisted_exponent(2, AffineMonomial{{1, 0}}) == 1);
  CHECK(twisted_exponent(2, AffineMonomial{{0, 1}}) == -1);
  CHECK(twisted_exponent(3, AffineMonomial{{2, 0, 1}}) == 2);
  CHECK(twisted_exponent(2, Subset{1, 2}) == 0);
  CHECK(twisted_exponent(3, Subset{1}) == 2);
  for (int l = 0; l <= 5; ++l)
    CHECK(twisted_exponent(1, AffineMonomial{{l}}) == 0);

  const auto tb = twisted_bos_series(2, 2);
  const auto s = ParamMode::single();
  NCPoly expect = zmono(2, s, {{1, 1}}) * qs(1) + zmono(2, s, {{2, 2}}) * qs(-1);
  CHECK(tb.body[1] == expect);
  CHECK(tb.kind == SeriesKind::BosTwisted);
  CHECK(twisted_ferm_series(1, 4).body[1] == ferm_series(s, 1, 4).body[1]);
}

TEST_CASE("twisted identity") {
  const auto s = ParamMode::single();
  for (int n = 2; n <= 3; ++n) {
    const auto r = verify_twisted(IdealOracle(n, s), n == 2 ? 4 : 3);
    CHECK(r.pass());
    CHECK(r.weights_consistent);
  }
  const auto r1 = verify_twisted(IdealOracle(1, s), 5);
  CHECK(r1.pass());
  for (const auto &d : r1.degrees)
    CHECK(d.residual_terms_before_reduction == 0);
  CHECK(twisted_bos_series(1, 5).body == bos_series(s, 1, 5).body);
  CHECK_THROWS_AS(verify_twisted(IdealOracle(2, ParamMode::multi(2)), 2), UsageError);
}

TEST_CASE("commutative identity: examples") {
  const auto id = classical_check(RationalMatrix{{1, 0}, {0, 1}}, 6);
  CHECK(id.pass);
  CHECK(id.bos == ints({1, 2, 3, 4, 5, 6, 7}));
  CHECK(id.determinant == ints({1, -2, 1}));
  CHECK(id.product == ints({1, 0, 0, 0, 0, 0, 0}));

  const auto swap = classical_check(RationalMatrix{{0, 1}, {1, 0}}, 6);
  CHECK(swap.pass);
  CHECK(swap.bos == ints({1, 0, 1, 0, 1, 0, 1}));
  CHECK(swap.determinant == ints({1, 0, -1}));

  const auto zero = classical_check(RationalMatrix{{0, 0}, {0, 0}}, 4);
  CHECK(zero.pass);
  CHECK(zero.bos == ints({1, 0, 0, 0, 0}));

  CHECK(det_one_minus_tz(RationalMatrix{{1, 2}, {3, 4}}) == ints({1, -5, -2}));
  CHECK(det_one_minus_tz(RationalMatrix{{2}}) == ints({1, -2}));
}

TEST_CASE("commutative identity: random matrices") {
  for (int n = 2; n <= 3; ++n) {
    const ClassicalChecker checker(n, 6);
    const auto mats = random_rational_matrices(n, 10, 7);
    for (const auto &Z : mats) {
      const auto r = checker.check(Z);
      CHECK(r.pass);
      CHECK(r.bos.size() == 7);
      CHECK(r.determinant.size() == static_cast<std::size_t>(n + 1));
    }
  }
  const auto a = random_rational_matrices(3, 4, 11);
  CHECK(a == random_rational_matrices(3, 4, 11));
  for (const auto &M : a)
    for (const auto &row : M)
      for (const auto &e : row) {
        CHECK(abs(e.get_num()) <= 5);
        CHECK(e.get_den() <= 5);
      }
}

TEST_CASE("commutative identity fails for a perturbed determinant") {
  const ClassicalChecker checker(2, 4);
  const RationalMatrix Z{{1, 2}, {mpq_class(1, 3), -1}};
  auto r = checker.check(Z);
  REQUIRE(r.pass);
  // replace det(I - tZ) by the permanent version and multiply again
  const std::vector<mpq_class> perm{1, -(Z[0][0] + Z[1][1]),
                                    Z[0][0] * Z[1][1] + Z[0][1] * Z[1][0]};
  std::vector<mpq_class> prod(5, 0);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 2 && i + j <= 4; ++j)
      prod[i + j] += r.bos[i] * perm[j];
  CHECK(prod != ints({1, 0, 0, 0, 0}));
}

TEST_CASE("characters and dimensions") {
  for (int n = 1; n <= 3; ++n) {
    const auto mode = ParamMode::multi(n);
    const NCPoly trace = tensor_power_character(mode, n, 1);
    CHECK(tensor_power_character(mode, n, 2) == trace * trace);
    CHECK(tensor_power_character(mode, n, 3) == trace * trace * trace);
    NCPoly sum(Alphabet::z(n), mode);
    for (const auto &J : subsets_of_size(n, std::min(n, 2)))
      sum += qdet(mode, n, J);
    CHECK(exterior_character(mode, n, std::min(n, 2)) == sum);
  }
  for (int n = 1; n <= 5; ++n)
    for (int l = 0; l <= 8; ++l) {
      CHECK(affine_dimension(n, l) == binomial(n + l - 1, l));
      CHECK(exterior_dimension(n, l) == binomial(n, l));
    }
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 3) == 0);
}

TEST_CASE("report json") {
  const auto r = verify_master(IdealOracle(2, ParamMode::multi(2)), 2);
  const auto j = to_json(r);
  CHECK(j["n"] == 2);
  CHECK(j["pass"] == true);
  CHECK(j.dump() == to_json(verify_master(IdealOracle(2, ParamMode::multi(2)), 2)).dump());
}
