#include "qmm/quantum_spaces.hpp"

#include <algorithm>
#include <numeric>

namespace qmm {

void validate_subset(int n, const Subset &J) {
  if (J.empty())
    throw UsageError("subset must be nonempty");
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (J[k] < 1 || J[k] > n)
      throw UsageError("subset index " + std::to_string(J[k]) +
                       " outside 1.." + std::to_string(n));
    if (k > 0 && J[k] <= J[k - 1])
      throw UsageError("subset must be strictly increasing");
  }
}

std::vector<Subset> subsets_of_size(int n, int m) {
  std::vector<Subset> out;
  if (m < 0 || m > n)
    return out;
  Subset cur(m);
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.push_back(cur);
    int k = m - 1;
    while (k >= 0 && cur[k] == n - m + k + 1)
      --k;
    if (k < 0)
      return out;
    ++cur[k];
    for (int t = k + 1; t < m; ++t)
      cur[t] = cur[t - 1] + 1;
  }
}

int AffineMonomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

Word increasing_word(const AffineMonomial &m) {
  Word w;
  for (std::size_t i = 0; i < m.exponents.size(); ++i)
    for (int k = 0; k < m.exponents[i]; ++k)
      w.push_back(x_code(static_cast<int>(i) + 1));
  return w;
}

std::string to_string(const AffineMonomial &m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.exponents.size(); ++i)
    out += (i ? "," : "") + std::to_string(m.exponents[i]);
  return out + ")";
}

std::pair<ParamScalar, AffineMonomial>
affine_normalize(const ParamMode &mode, int n, const Word &w) {
  std::vector<int> letters(w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    letters[k] = w[k] + 1;
  ParamScalar c = ParamScalar::one(mode);
  // stable insertion sort; moving x_j left past x_i (i < j) costs q_ij
  for (std::size_t k = 1; k < letters.size(); ++k)
    for (std::size_t p = k; p > 0 && letters[p - 1] > letters[p]; --p) {
      c *= ParamScalar::q(mode, letters[p], letters[p - 1]);
      std::swap(letters[p - 1], letters[p]);
    }
  AffineMonomial m{std::vector<int>(n, 0)};
  for (int l : letters) {
    if (l < 1 || l > n)
      throw UsageError("letter x" + std::to_string(l) + " outside alphabet");
    ++m.exponents[l - 1];
  }
  return {c, m};
}

namespace {

void compositions(int n, int degree, std::vector<int> &cur, std::size_t slot,
                  std::vector<AffineMonomial> &out) {
  if (slot + 1 == static_cast<std::size_t>(n)) {
    cur[slot] = degree;
    out.push_back({cur});
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[slot] = e;
    compositions(n, degree - e, cur, slot + 1, out);
  }
}

} // namespace

std::vector<AffineMonomial> affine_basis(int n, int degree) {
  if (n < 1 || degree < 0)
    throw UsageError("affine_basis needs n >= 1 and degree >= 0");
  std::vector<AffineMonomial> out;
  std::vector<int> cur(n, 0);
  compositions(n, degree, cur, 0, out);
  return out;
}

NCPoly exterior_normalize(const ParamMode &mode, int n, const Word &w) {
  std::vector<int> letters(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    letters[k] = w[k] + 1;
    if (letters[k] > n)
      throw UsageError("dual letter outside alphabet");
  }
  ParamScalar c = ParamScalar::one(mode);
  for (std::size_t k = 1; k < letters.size(); ++k)
    for (std::size_t p = k; p > 0 && letters[p - 1] >= letters[p]; --p) {
      if (letters[p - 1] == letters[p])
        return NCPoly(Alphabet::dual(n), mode);
      // x^l x^k = -q_kl^{-1} x^k x^l for k < l
      c *= -ParamScalar::q(mode, letters[p], letters[p - 1], -1);
      std::swap(letters[p - 1], letters[p]);
    }
  Word sorted;
  for (int l : letters)
    sorted.push_back(x_code(l));
  return NCPoly::monomial(Alphabet::dual(n), mode, sorted, c);
}

std::vector<NCPoly> exterior_relations(const ParamMode &mode, int n) {
  std::vector<NCPoly> out;
  const Alphabet dual = Alphabet::dual(n);
  for (int l = 1; l <= n; ++l)
    out.push_back(NCPoly::monomial(dual, mode, Word::x({l, l})));
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l) {
      NCPoly r = NCPoly::monomial(dual, mode, Word::x({k, l}));
      r.add_term(Word::x({l, k}), ParamScalar::q(mode, k, l));
      out.push_back(std::move(r));
    }
  return out;
}

ParamScalar inversion_weight(const ParamMode &mode, const Subset &J,
                             const std::vector<int> &perm,
                             WeightConvention convention) {
  auto label = [&](int pos) {
    return convention == WeightConvention::SubsetLabels ? J[pos - 1] : pos;
  };
  ParamScalar w = ParamScalar::one(mode);
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b])
        w *= -ParamScalar::q(mode, label(perm[b]), label(perm[a]), -1);
  return w;
}

WedgeElement wedge_expand(const ParamMode &mode, int n, const Subset &J,
                          WeightConvention convention) {
  validate_subset(n, J);
  const int m = static_cast<int>(J.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  NCPoly expansion(Alphabet::x(n), mode);
  do {
    Word w;
    for (int p : perm)
      w.push_back(x_code(J[p - 1]));
    expansion.add_term(w, inversion_weight(mode, J, perm, convention));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {J, std::move(expansion)};
}

ParamScalar evaluation_pairing(const NCPoly &dual, const NCPoly &vectors) {
  if (dual.alphabet().kind != AlphabetKind::Dual ||
      vectors.alphabet().kind != AlphabetKind::X)
    throw UsageError("pairing needs a dual-alphabet and an x-alphabet element");
  ParamScalar total = ParamScalar::zero(vectors.mode());
  for (const auto &[w, c] : dual.terms()) {
    auto it = vectors.terms().find(w);
    if (it != vectors.terms().end())
      total += c * it->second;
  }
  return total;
}

bool wedge_pairing_check(const ParamMode &mode, int n, const Subset &J,
                         WeightConvention convention) {
  const WedgeElement wedge = wedge_expand(mode, n, J, convention);
  const int m = static_cast<int>(J.size());
  if (m < 2)
    return true;
  const auto relations = exterior_relations(mode, n);
  bool ok = true;
  for (int left = 0; left <= m - 2 && ok; ++left)
    for_each_word(n, left, [&](const Word &u) {
      for_each_word(n, m - 2 - left, [&](const Word &v) {
        for (const auto &r : relations) {
          if (!ok)
            return;
          ParamScalar s = ParamScalar::zero(mode);
          for (const auto &[w, c] : r.terms())
            s += c * wedge.expansion.coefficient_of(u + w + v);
          if (!s.is_zero())
            ok = false;
        }
      });
    });
  return ok;
}

AffineCoaction coaction_affine(const ParamMode &mode, int n,
                               const AffineMonomial &m) {
  if (static_cast<int>(m.exponents.size()) != n)
    throw UsageError("multidegree has wrong length");
  const Word lower = increasing_word(m);
  const int len = static_cast<int>(lower.size());
  AffineCoaction out;
  for_each_word(n, len, [&](const Word &targets) {
    Word zw;
    for (int k = 0; k < len; ++k)
      zw.push_back(z_code(n, lower[k] + 1, targets[k] + 1));
    auto [c, r] = affine_normalize(mode, n, targets);
    auto it = out.try_emplace(r, Alphabet::z(n), mode).first;
    it->second.add_term(zw, c);
  });
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

TensorCoaction coaction_tensor(const ParamMode &mode, int n, const Word &w) {
  TensorCoaction out;
  const int len = static_cast<int>(w.size());
  for_each_word(n, len, [&](const Word &targets) {
    Word zw;
    for (int k = 0; k < len; ++k)
      zw.push_back(z_code(n, w[k] + 1, targets[k] + 1));
    out.emplace(targets, NCPoly::monomial(Alphabet::z(n), mode, zw));
  });
  return out;
}

TensorCoaction coaction_tensor(const NCPoly &vectors) {
  if (vectors.alphabet().kind != AlphabetKind::X)
    throw UsageError("coaction_tensor expects an x-alphabet element");
  const int n = vectors.alphabet().n;
  TensorCoaction out;
  for (const auto &[w, c] : vectors.sorted_terms())
    for (auto &[target, coeff] : coaction_tensor(vectors.mode(), n, w)) {
      auto it = out.try_emplace(target, Alphabet::z(n), vectors.mode()).first;
      it->second += coeff * c;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

} // namespace qmm
