#include "qmm/koszul.hpp"

#include <algorithm>
#include <map>

namespace qmm {

ScalarMatrix::ScalarMatrix(std::size_t r, std::size_t c, const ParamMode &mode)
    : rows(r), cols(c),
      entries(r, std::vector<ParamScalar>(c, ParamScalar::zero(mode))) {}

bool ScalarMatrix::is_zero() const {
  for (const auto &row : entries)
    for (const auto &e : row)
      if (!e.is_zero())
        return false;
  return true;
}

ScalarMatrix multiply(const ScalarMatrix &a, const ScalarMatrix &b,
                      const ParamMode &mode) {
  if (a.cols != b.rows)
    throw UsageError("matrix shapes do not compose");
  ScalarMatrix out(a.rows, b.cols, mode);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a.entries[i][k].is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (!b.entries[k][j].is_zero())
          out.entries[i][j] += a.entries[i][k] * b.entries[k][j];
    }
  return out;
}

std::vector<std::size_t> KoszulComplex::dimensions() const {
  std::vector<std::size_t> d;
  for (const auto &s : spaces)
    d.push_back(s.size());
  return d;
}

std::size_t KoszulComplex::index_of(int i, const KoszulBasisVector &b) const {
  const auto &space = spaces.at(i);
  auto it = std::find(space.begin(), space.end(), b);
  if (it == space.end())
    throw ConsistencyError("basis vector not found in K^{l,i}");
  return static_cast<std::size_t>(it - space.begin());
}

namespace {

// Wedge expansions, computed once per subset.
class WedgeTable {
public:
  WedgeTable(const ParamMode &mode, int n) : mode_(mode), n_(n) {}

  const NCPoly &expansion(const Subset &J) {
    auto it = cache_.find(J);
    if (it == cache_.end()) {
      NCPoly e = J.empty() ? NCPoly::one(Alphabet::x(n_), mode_)
                           : wedge_expand(mode_, n_, J).expansion;
      it = cache_.emplace(J, std::move(e)).first;
    }
    return it->second;
  }

private:
  ParamMode mode_;
  int n_;
  std::map<Subset, NCPoly> cache_;
};

std::vector<std::pair<Subset, ParamScalar>>
decompose_with(WedgeTable &table, int n, int m, const NCPoly &element) {
  std::vector<std::pair<Subset, ParamScalar>> out;
  NCPoly residual = element;
  for (const auto &I : subsets_of_size(n, m)) {
    const ParamScalar a = residual.coefficient_of(Word::x(I));
    if (a.is_zero())
      continue;
    residual -= table.expansion(I) * a;
    out.emplace_back(I, a);
  }
  if (!residual.is_zero())
    throw ConsistencyError("tensor prefix does not lie in the span of the "
                           "wedge basis of degree " +
                           std::to_string(m));
  return out;
}

} // namespace

std::vector<std::pair<Subset, ParamScalar>>
wedge_decompose(const ParamMode &mode, int n, int m, const NCPoly &element) {
  WedgeTable table(mode, n);
  return decompose_with(table, n, m, element);
}

KoszulComplex build_complex(const ParamMode &mode, int n, int ell) {
  if (n < 1)
    throw UsageError("n must be at least 1");
  if (ell < 1)
    throw UsageError("the Koszul complex needs l >= 1");
  KoszulComplex c;
  c.n = n;
  c.ell = ell;
  c.mode = mode;
  for (int i = 0; i <= ell; ++i) {
    std::vector<KoszulBasisVector> space;
    for (const auto &J : subsets_of_size(n, ell - i))
      for (const auto &r : affine_basis(n, i))
        space.push_back({J, r});
    c.spaces.push_back(std::move(space));
  }

  WedgeTable table(mode, n);
  for (int i = 0; i < ell; ++i) {
    const auto &domain = c.spaces[i];
    const auto &codomain = c.spaces[i + 1];
    std::map<KoszulBasisVector, std::size_t> row_of;
    for (std::size_t k = 0; k < codomain.size(); ++k)
      row_of[codomain[k]] = k;
    ScalarMatrix d(codomain.size(), domain.size(), mode);
    const int m = ell - i - 1; // wedge degree on the codomain side
    for (std::size_t col = 0; col < domain.size(); ++col) {
      const auto &[J, r] = domain[col];
      // split wedge(J) by its last tensor factor
      std::map<int, NCPoly> prefix_by_last;
      for (const auto &[w, coeff] : table.expansion(J).terms()) {
        const int last = w[w.size() - 1] + 1;
        std::string head = w.codes().substr(0, w.size() - 1);
        prefix_by_last.try_emplace(last, Alphabet::x(n), mode)
            .first->second.add_term(Word(std::move(head)), coeff);
      }
      for (const auto &[t, prefix] : prefix_by_last) {
        Word affine_word = Word::x({t}) + increasing_word(r);
        auto [factor, s] = affine_normalize(mode, n, affine_word);
        for (const auto &[I, a] : decompose_with(table, n, m, prefix)) {
          const std::size_t row = row_of.at({I, s});
          d.entries[row][col] += a * factor;
        }
      }
    }
    c.differentials.push_back(std::move(d));
  }
  return c;
}

bool d_squared_zero(const KoszulComplex &c) {
  for (std::size_t i = 0; i + 1 < c.differentials.size(); ++i)
    if (!multiply(c.differentials[i + 1], c.differentials[i], c.mode).is_zero())
      return false;
  return true;
}

std::uint64_t koszul_dimension(int n, int ell, int i) {
  auto binom = [](int a, int b) -> std::uint64_t {
    if (b < 0 || a < 0 || b > a)
      return 0;
    std::uint64_t r = 1;
    for (int k = 1; k <= b; ++k)
      r = r * static_cast<std::uint64_t>(a - b + k) / static_cast<std::uint64_t>(k);
    return r;
  };
  return binom(n, ell - i) * binom(n + i - 1, i);
}

long euler_characteristic(int n, int ell) {
  long chi = 0;
  for (int i = 0; i <= ell; ++i) {
    const long d = static_cast<long>(koszul_dimension(n, ell, i));
    chi += i % 2 ? -d : d;
  }
  return chi;
}

bool ExactnessReport::exact_sequence() const {
  return verdict == Verdict::Member &&
         std::all_of(homology.begin(), homology.end(),
                     [](long h) { return h == 0; });
}

std::size_t exact_rank(const ScalarMatrix &m) {
  LaurentEchelon echelon(m.cols);
  for (const auto &row : m.entries) {
    SparseVec<ParamScalar> v;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero())
        v.emplace_back(static_cast<std::uint32_t>(j), row[j]);
    echelon.insert(std::move(v));
  }
  return echelon.rank();
}

std::size_t specialized_rank(const ScalarMatrix &m,
                             const std::vector<mpq_class> &values) {
  RationalEchelon echelon(m.cols);
  for (const auto &row : m.entries) {
    SparseVec<mpq_class> v;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) {
        mpq_class x = evaluate(row[j], values);
        if (x != 0)
          v.emplace_back(static_cast<std::uint32_t>(j), std::move(x));
      }
    echelon.insert(std::move(v));
  }
  return echelon.rank();
}

ExactnessReport check_exactness(const KoszulComplex &c,
                                const ExactnessOptions &options) {
  ExactnessReport report;
  report.n = c.n;
  report.ell = c.ell;
  report.dims = c.dimensions();
  const bool numeric = c.mode.kind() == ParamKind::Numeric;
  if (numeric || options.exact) {
    if (!numeric && !c.mode.is_laurent())
      throw UsageError("exact ranks need a Laurent parameter mode");
    report.mode = numeric ? "numeric" : "exact";
    for (const auto &d : c.differentials)
      report.ranks.push_back(exact_rank(d));
  } else {
    const auto draws = draw_specializations(c.mode.num_vars(),
                                            options.specializations, options.seed);
    report.mode = "specialized(k=" + std::to_string(draws.size()) +
                  ",seed=" + std::to_string(options.seed) + ")";
    for (const auto &d : c.differentials) {
      std::size_t best = 0;
      bool first = true;
      for (const auto &values : draws) {
        const std::size_t r = specialized_rank(d, values);
        if (!first && r != best)
          report.verdict = Verdict::Inconclusive;
        best = std::max(best, r);
        first = false;
      }
      report.ranks.push_back(best);
    }
  }
  for (int i = 0; i <= c.ell; ++i) {
    long h = static_cast<long>(report.dims[i]);
    if (i < c.ell)
      h -= static_cast<long>(report.ranks[i]);
    if (i > 0)
      h -= static_cast<long>(report.ranks[i - 1]);
    report.homology.push_back(h);
  }
  return report;
}

NCPoly wedge_coaction_entry(const ParamMode &mode, int n, const Subset &I,
                            const Subset &J) {
  if (I.size() != J.size())
    throw UsageError("wedge coaction entries need subsets of equal size");
  if (J.empty())
    return NCPoly::one(Alphabet::z(n), mode);
  const TensorCoaction delta =
      coaction_tensor(wedge_expand(mode, n, J).expansion);
  auto it = delta.find(Word::x(I));
  return it == delta.end() ? NCPoly(Alphabet::z(n), mode) : it->second;
}

namespace {

// Coaction matrix on K^{l,i}: entry [(I,s),(J,r)] = c_{I,J} b_{s,r}.
std::vector<std::vector<NCPoly>>
coaction_matrix(const KoszulComplex &c, int i) {
  const auto &space = c.spaces[i];
  const Alphabet za = Alphabet::z(c.n);
  std::map<Subset, TensorCoaction> wedge_delta;
  std::map<AffineMonomial, AffineCoaction> affine_delta;
  std::vector<std::vector<NCPoly>> out(
      space.size(), std::vector<NCPoly>(space.size(), NCPoly(za, c.mode)));
  for (std::size_t col = 0; col < space.size(); ++col) {
    const auto &[J, r] = space[col];
    if (!J.empty() && !wedge_delta.count(J))
      wedge_delta[J] = coaction_tensor(wedge_expand(c.mode, c.n, J).expansion);
    if (!affine_delta.count(r))
      affine_delta[r] = coaction_affine(c.mode, c.n, r);
    for (std::size_t row = 0; row < space.size(); ++row) {
      const auto &[I, s] = space[row];
      NCPoly wedge_part = NCPoly::one(za, c.mode);
      if (!J.empty()) {
        auto it = wedge_delta[J].find(Word::x(I));
        if (it == wedge_delta[J].end())
          continue;
        wedge_part = it->second;
      }
      auto jt = affine_delta[r].find(s);
      if (jt == affine_delta[r].end())
        continue;
      out[row][col] = wedge_part * jt->second;
    }
  }
  return out;
}

} // namespace

ComoduleReport comodule_compat_check(const IdealOracle &oracle, int ell) {
  const KoszulComplex c = build_complex(oracle.mode(), oracle.n(), ell);
  const Alphabet za = Alphabet::z(c.n);
  std::vector<std::vector<std::vector<NCPoly>>> coaction;
  for (int i = 0; i <= ell; ++i)
    coaction.push_back(coaction_matrix(c, i));

  ComoduleReport report;
  bool undecided = false;
  for (int i = 0; i < ell; ++i) {
    const ScalarMatrix &D = c.differentials[i];
    const auto &Cdom = coaction[i];
    const auto &Ccod = coaction[i + 1];
    for (std::size_t row = 0; row < D.rows; ++row)
      for (std::size_t col = 0; col < D.cols; ++col) {
        NCPoly diff(za, c.mode);
        // differential after coaction
        for (std::size_t k = 0; k < D.cols; ++k)
          if (!D.entries[row][k].is_zero() && !Cdom[k][col].is_zero())
            diff += Cdom[k][col] * D.entries[row][k];
        // coaction after differential
        for (std::size_t k = 0; k < D.rows; ++k)
          if (!D.entries[k][col].is_zero() && !Ccod[row][k].is_zero())
            diff -= Ccod[row][k] * D.entries[k][col];
        ++report.entries_checked;
        if (diff.is_zero())
          continue;
        ++report.nonzero_before_reduction;
        const Verdict v = oracle.check(diff).verdict;
        if (v == Verdict::NonMember)
          report.verdict = Verdict::NonMember;
        else if (v == Verdict::Inconclusive)
          undecided = true;
      }
  }
  if (report.verdict != Verdict::NonMember && undecided)
    report.verdict = Verdict::Inconclusive;
  return report;
}

nlohmann::ordered_json to_json(const ExactnessReport &r) {
  return {{"n", r.n},
          {"ell", r.ell},
          {"dims", r.dims},
          {"ranks", r.ranks},
          {"homology", r.homology},
          {"mode", r.mode},
          {"verdict", to_string(r.verdict)},
          {"exact", r.exact_sequence()}};
}

} // namespace qmm
