#include "qmm/macmahon.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace qmm {

GCoefficient g_coefficient(const ParamMode &mode, int n, const AffineMonomial &m) {
  if (static_cast<int>(m.exponents.size()) != n)
    throw UsageError("multidegree has wrong length");
  for (int e : m.exponents)
    if (e < 0)
      throw UsageError("multidegree entries must be nonnegative");
  AffineCoaction coaction = coaction_affine(mode, n, m);
  auto it = coaction.find(m);
  if (it == coaction.end())
    return {m, NCPoly(Alphabet::z(n), mode)};
  return {m, std::move(it->second)};
}

NCPoly affine_character(const ParamMode &mode, int n, int l) {
  NCPoly out(Alphabet::z(n), mode);
  for (const auto &m : affine_basis(n, l))
    out += g_coefficient(mode, n, m).value;
  return out;
}

NCPoly exterior_character(const ParamMode &mode, int n, int m) {
  if (m == 0)
    return NCPoly::one(Alphabet::z(n), mode);
  NCPoly out(Alphabet::z(n), mode);
  for (const auto &J : subsets_of_size(n, m))
    out += qdet(mode, n, J);
  return out;
}

NCPoly tensor_power_character(const ParamMode &mode, int n, int k) {
  NCPoly out(Alphabet::z(n), mode);
  for_each_word(n, k, [&](const Word &w) {
    const TensorCoaction c = coaction_tensor(mode, n, w);
    out += c.at(w);
  });
  return out;
}

std::size_t affine_dimension(int n, int l) { return affine_basis(n, l).size(); }

std::size_t exterior_dimension(int n, int m) {
  std::set<Word> normal_forms;
  const ParamMode mode = ParamMode::numeric_ones(n);
  for_each_word(n, m, [&](const Word &w) {
    NCPoly p = exterior_normalize(mode, n, w);
    if (!p.is_zero())
      normal_forms.insert(p.terms().begin()->first);
  });
  return normal_forms.size();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n)
    return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

const char *to_string(SeriesKind k) {
  switch (k) {
  case SeriesKind::Bos:
    return "bos";
  case SeriesKind::Ferm:
    return "ferm";
  case SeriesKind::BosTwisted:
    return "bos-twisted";
  case SeriesKind::FermTwisted:
    return "ferm-twisted";
  }
  return "?";
}

CharacterSeries bos_series(const ParamMode &mode, int n, int d) {
  TruncSeries s(Alphabet::z(n), mode, d);
  for (int l = 0; l <= d; ++l)
    s.set(l, l == 0 ? NCPoly::one(Alphabet::z(n), mode)
                    : affine_character(mode, n, l));
  return {SeriesKind::Bos, std::move(s)};
}

CharacterSeries ferm_series(const ParamMode &mode, int n, int d) {
  TruncSeries s(Alphabet::z(n), mode, d);
  for (int m = 0; m <= std::min(d, n); ++m) {
    NCPoly c = exterior_character(mode, n, m);
    if (m % 2)
      c = -c;
    s.set(m, std::move(c));
  }
  return {SeriesKind::Ferm, std::move(s)};
}

int twisted_exponent(int n, const AffineMonomial &m) {
  int e = 0;
  for (int i = 1; i <= n; ++i)
    e += m.exponents[i - 1] * (n + 1 - 2 * i);
  return e;
}

int twisted_exponent(int n, const Subset &J) {
  int e = 0;
  for (int j : J)
    e += n + 1 - 2 * j;
  return e;
}

namespace {

ParamScalar q_power(int e) {
  return ParamScalar::monomial(ParamMode::single(), {e}, mpz_class(1));
}

} // namespace

CharacterSeries twisted_bos_series(int n, int d) {
  const ParamMode mode = ParamMode::single();
  TruncSeries s(Alphabet::z(n), mode, d);
  s.set(0, NCPoly::one(Alphabet::z(n), mode));
  for (int l = 1; l <= d; ++l) {
    NCPoly c(Alphabet::z(n), mode);
    for (const auto &m : affine_basis(n, l))
      c += g_coefficient(mode, n, m).value * q_power(twisted_exponent(n, m));
    s.set(l, std::move(c));
  }
  return {SeriesKind::BosTwisted, std::move(s)};
}

CharacterSeries twisted_ferm_series(int n, int d) {
  const ParamMode mode = ParamMode::single();
  TruncSeries s(Alphabet::z(n), mode, d);
  s.set(0, NCPoly::one(Alphabet::z(n), mode));
  for (int m = 1; m <= std::min(d, n); ++m) {
    NCPoly c(Alphabet::z(n), mode);
    for (const auto &J : subsets_of_size(n, m))
      c += qdet(mode, n, J) * q_power(twisted_exponent(n, J));
    if (m % 2)
      c = -c;
    s.set(m, std::move(c));
  }
  return {SeriesKind::FermTwisted, std::move(s)};
}

bool MasterReport::pass() const {
  return weights_consistent &&
         std::all_of(degrees.begin(), degrees.end(),
                     [](const DegreeReport &r) { return r.pass; });
}

Verdict MasterReport::verdict() const {
  if (pass())
    return Verdict::Member;
  if (!weights_consistent)
    return Verdict::NonMember;
  for (const auto &r : degrees)
    if (r.verdict == Verdict::NonMember)
      return Verdict::NonMember;
  return Verdict::Inconclusive;
}

namespace {

MasterReport check_product(const IdealOracle &oracle, const TruncSeries &bos,
                           const TruncSeries &ferm) {
  MasterReport report;
  report.n = oracle.n();
  report.bound = bos.bound();
  report.params = oracle.mode().name();
  const TruncSeries product = series_mul(bos, ferm);
  for (int k = 0; k <= bos.bound(); ++k) {
    NCPoly residual = product[k];
    if (k == 0)
      residual -= NCPoly::one(residual.alphabet(), residual.mode());
    DegreeReport r;
    r.degree = k;
    r.residual_terms_before_reduction = residual.size();
    r.oracle_mode = oracle.label();
    if (residual.is_zero())
      r.verdict = Verdict::Member;
    else if (k == 0)
      r.verdict = Verdict::NonMember;
    else
      r.verdict = oracle.check(residual).verdict;
    r.pass = r.verdict == Verdict::Member;
    report.degrees.push_back(std::move(r));
  }
  return report;
}

} // namespace

MasterReport verify_master(const IdealOracle &oracle, int d) {
  if (d < 0)
    throw UsageError("degree bound must be nonnegative");
  return check_product(oracle, bos_series(oracle.mode(), oracle.n(), d).body,
                       ferm_series(oracle.mode(), oracle.n(), d).body);
}

MasterReport verify_twisted(const IdealOracle &oracle, int d) {
  if (oracle.mode().kind() != ParamKind::Single)
    throw UsageError("the twisted identity is stated for the one-parameter mode");
  if (d < 0)
    throw UsageError("degree bound must be nonnegative");
  const int n = oracle.n();
  MasterReport report = check_product(oracle, twisted_bos_series(n, d).body,
                                      twisted_ferm_series(n, d).body);
  const TorusElement tau = special_torus(n);
  const ParamMode mode = ParamMode::single();
  for (int l = 1; l <= d && report.weights_consistent; ++l)
    for (const auto &m : affine_basis(n, l)) {
      const NCPoly g = g_coefficient(mode, n, m).value;
      if (!(torus_act(tau, g) == g * q_power(twisted_exponent(n, m)))) {
        report.weights_consistent = false;
        break;
      }
    }
  for (int m = 1; m <= std::min(d, n) && report.weights_consistent; ++m)
    for (const auto &J : subsets_of_size(n, m)) {
      const NCPoly det = qdet(mode, n, J);
      if (!(torus_act(tau, det) == det * q_power(twisted_exponent(n, J)))) {
        report.weights_consistent = false;
        break;
      }
    }
  return report;
}

NCPoly wedge_coaction_diagonal(const ParamMode &mode, int n, const Subset &J) {
  const WedgeElement wedge = wedge_expand(mode, n, J);
  const TensorCoaction delta = coaction_tensor(wedge.expansion);
  auto it = delta.find(Word::x(J));
  if (it == delta.end())
    return NCPoly(Alphabet::z(n), mode);
  return it->second;
}

QdetCoactionReport verify_qdet_coaction(const IdealOracle &oracle) {
  const int n = oracle.n();
  const ParamMode &mode = oracle.mode();
  Subset full(n);
  std::iota(full.begin(), full.end(), 1);
  const WedgeElement wedge = wedge_expand(mode, n, full);
  const TensorCoaction delta = coaction_tensor(wedge.expansion);
  const NCPoly det = qdet(mode, n, full);

  QdetCoactionReport report;
  bool undecided = false;
  for_each_word(n, n, [&](const Word &w) {
    if (report.verdict == Verdict::NonMember)
      return;
    ++report.words_checked;
    auto it = delta.find(w);
    NCPoly diff = it == delta.end() ? NCPoly(Alphabet::z(n), mode) : it->second;
    const ParamScalar c = wedge.expansion.coefficient_of(w);
    if (!c.is_zero())
      diff -= det * c;
    if (diff.is_zero())
      return;
    ++report.nonzero_before_reduction;
    const Verdict v = oracle.check(diff).verdict;
    if (v == Verdict::NonMember)
      report.verdict = Verdict::NonMember;
    else if (v == Verdict::Inconclusive)
      undecided = true;
  });
  if (report.verdict != Verdict::NonMember && undecided)
    report.verdict = Verdict::Inconclusive;
  return report;
}

Verdict verify_qdet_grouplike(const IdealOracle &oracle) {
  const int n = oracle.n();
  Subset full(n);
  std::iota(full.begin(), full.end(), 1);
  const NCPoly det = qdet(oracle.mode(), n, full);
  TensorPoly t = comultiply(det);
  t -= TensorPoly::tensor(det, det);
  return doubled_ideal_member(t, oracle);
}

NCPoly torus_act(const TorusElement &g, const NCPoly &p) {
  if (p.alphabet().kind != AlphabetKind::Z)
    throw UsageError("the torus acts on z-alphabet elements");
  const int n = p.alphabet().n;
  if (static_cast<int>(g.c.size()) != n || static_cast<int>(g.d.size()) != n)
    throw UsageError("torus element has the wrong size");
  std::vector<ParamScalar> d_inv;
  for (const auto &x : g.d) {
    if (!x.is_unit())
      throw UsageError("torus entries must be invertible");
    d_inv.push_back(x.inverse());
  }
  for (const auto &x : g.c)
    if (!x.is_unit())
      throw UsageError("torus entries must be invertible");
  NCPoly out(p.alphabet(), p.mode());
  for (const auto &[w, coeff] : p.terms()) {
    ParamScalar f = coeff;
    for (std::size_t k = 0; k < w.size(); ++k)
      f *= g.c[z_lower(n, w[k]) - 1] * d_inv[z_upper(n, w[k]) - 1];
    out.add_term(w, f);
  }
  return out;
}

TorusElement special_torus(int n) {
  TorusElement g;
  for (int i = 1; i <= n; ++i) {
    g.c.push_back(q_power(n + 1 - 2 * i));
    g.d.push_back(ParamScalar::one(ParamMode::single()));
  }
  return g;
}

// ------------------------------------------------------------- classical

namespace {

using RationalPoly = std::vector<mpq_class>;

RationalPoly poly_mul(const RationalPoly &a, const RationalPoly &b,
                      std::size_t keep) {
  RationalPoly r(std::min(keep, a.size() + b.size() - 1), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < r.size(); ++j)
      r[i + j] += a[i] * b[j];
  return r;
}

void check_square(const RationalMatrix &Z, int n) {
  if (static_cast<int>(Z.size()) != n)
    throw UsageError("matrix must be " + std::to_string(n) + " x " +
                     std::to_string(n));
  for (const auto &row : Z)
    if (static_cast<int>(row.size()) != n)
      throw UsageError("matrix must be square");
}

} // namespace

std::vector<mpq_class> det_one_minus_tz(const RationalMatrix &Z) {
  const int n = static_cast<int>(Z.size());
  check_square(Z, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RationalPoly total(n + 1, 0);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        inversions += perm[a] > perm[b];
    RationalPoly term{inversions % 2 ? -1 : 1};
    for (int i = 0; i < n; ++i) {
      RationalPoly entry{i == perm[i] ? 1 : 0, -Z[i][perm[i]]};
      term = poly_mul(term, entry, n + 1);
    }
    for (std::size_t k = 0; k < term.size(); ++k)
      total[k] += term[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

ClassicalChecker::ClassicalChecker(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0)
    throw UsageError("classical check needs n >= 1 and d >= 0");
  const ParamMode mode = ParamMode::numeric_ones(n);
  for (int l = 0; l <= d; ++l) {
    std::vector<NCPoly> gs;
    for (const auto &m : affine_basis(n, l))
      gs.push_back(g_coefficient(mode, n, m).value);
    g_by_degree_.push_back(std::move(gs));
  }
}

ClassicalResult ClassicalChecker::check(const RationalMatrix &Z) const {
  check_square(Z, n_);
  ClassicalResult r;
  for (int l = 0; l <= d_; ++l) {
    mpq_class sum = 0;
    for (const auto &g : g_by_degree_[l])
      for (const auto &[w, c] : g.terms()) {
        mpq_class term = c.numeric_value();
        for (std::size_t k = 0; k < w.size(); ++k)
          term *= Z[z_lower(n_, w[k]) - 1][z_upper(n_, w[k]) - 1];
        sum += term;
      }
    r.bos.push_back(sum);
  }
  r.determinant = det_one_minus_tz(Z);
  r.product = poly_mul(r.bos, r.determinant, static_cast<std::size_t>(d_) + 1);
  r.product.resize(static_cast<std::size_t>(d_) + 1, 0);
  r.pass = r.product[0] == 1 &&
           std::all_of(r.product.begin() + 1, r.product.end(),
                       [](const mpq_class &v) { return v == 0; });
  return r;
}

ClassicalResult classical_check(const RationalMatrix &Z, int d) {
  return ClassicalChecker(static_cast<int>(Z.size()), d).check(Z);
}

std::vector<RationalMatrix> random_rational_matrices(int n, int k,
                                                     std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<RationalMatrix> out;
  for (int t = 0; t < k; ++t) {
    RationalMatrix M(n, std::vector<mpq_class>(n));
    for (auto &row : M)
      for (auto &e : row) {
        const long p = static_cast<long>(gen() % 11) - 5;
        const long q = static_cast<long>(gen() % 5) + 1;
        e = mpq_class(p, q);
        e.canonicalize();
      }
    out.push_back(std::move(M));
  }
  return out;
}

nlohmann::ordered_json to_json(const MasterReport &r) {
  nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
  for (const auto &d : r.degrees)
    degrees.push_back({{"degree", d.degree},
                       {"residual_terms_before_reduction",
                        d.residual_terms_before_reduction},
                       {"oracle_mode", d.oracle_mode},
                       {"verdict", to_string(d.verdict)},
                       {"pass", d.pass}});
  return {{"n", r.n},
          {"bound", r.bound},
          {"params", r.params},
          {"degrees", degrees},
          {"weights_consistent", r.weights_consistent},
          {"pass", r.pass()}};
}

} // namespace qmm
