#pragma once

// Generators and brute-force oracles shared by the unit tests.

#include <random>
#include <vector>

#include "qmm/right_quantum.hpp"

namespace qmm::testing {

inline std::mt19937_64 &rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline int uniform(int lo, int hi) {
  return lo + static_cast<int>(rng()() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Laurent polynomial with up to `terms` monomials, exponents in [-2, 2],
/// coefficients in [-4, 4].
inline ParamScalar random_scalar(const ParamMode &mode, int terms = 3) {
  ParamScalar s = ParamScalar::zero(mode);
  const int count = uniform(0, terms);
  for (int t = 0; t < count; ++t) {
    if (mode.kind() == ParamKind::Numeric) {
      s += ParamScalar::rational(mpq_class(uniform(-4, 4), uniform(1, 3)));
      continue;
    }
    std::vector<int> e(mode.num_vars());
    for (auto &x : e)
      x = uniform(-2, 2);
    s += ParamScalar::monomial(mode, e, mpz_class(uniform(-4, 4)));
  }
  return s;
}

inline Word random_word(int letters, int length) {
  Word w;
  for (int k = 0; k < length; ++k)
    w.push_back(static_cast<std::uint8_t>(uniform(0, letters - 1)));
  return w;
}

inline NCPoly random_poly(const Alphabet &a, const ParamMode &mode, int degree,
                          int terms = 4) {
  NCPoly p(a, mode);
  for (int t = 0; t < terms; ++t)
    p.add_term(random_word(a.size(), degree), random_scalar(mode, 2));
  return p;
}

/// Random element of the degree-d ideal: a combination of u * r * v.
inline NCPoly random_ideal_element(const RelationSet &rels, int degree,
                                   int pieces = 3) {
  const Alphabet za = Alphabet::z(rels.n);
  NCPoly p(za, rels.mode);
  if (rels.relations.empty() || degree < 2)
    return p;
  for (int k = 0; k < pieces; ++k) {
    const int left = uniform(0, degree - 2);
    const auto &r = rels.relations[uniform(0, static_cast<int>(rels.relations.size()) - 1)];
    NCPoly u = NCPoly::monomial(za, rels.mode, random_word(za.size(), left));
    NCPoly v = NCPoly::monomial(za, rels.mode,
                                random_word(za.size(), degree - 2 - left));
    p += u * r.element * v * random_scalar(rels.mode, 2);
  }
  return p;
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0)
      ++p;
    if (p == m.size())
      continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] != 0) {
        const mpq_class f = m[r][c] / m[rank][c];
        for (std::size_t k = c; k < cols; ++k)
          m[r][k] -= f * m[rank][k];
      }
    ++rank;
  }
  return rank;
}

/// Brute-force membership: builds every u * r * v of degree d (no rewrite),
/// specializes at `values`, and compares dense ranks with and without p.
inline bool brute_force_member(const RelationSet &rels, const NCPoly &p, int d,
                               const std::vector<mpq_class> &values) {
  if (d < 2)
    return p.is_zero();
  const int s = rels.n * rels.n;
  std::size_t dim = 1;
  for (int k = 0; k < d; ++k)
    dim *= static_cast<std::size_t>(s);
  auto to_dense = [&](const NCPoly &q) {
    std::vector<mpq_class> row(dim, 0);
    for (const auto &[w, c] : q.terms())
      row[word_index(s, w)] += evaluate(c, values);
    return row;
  };
  std::vector<std::vector<mpq_class>> rows;
  const Alphabet za = Alphabet::z(rels.n);
  for (int left = 0; left <= d - 2; ++left)
    for_each_word(s, left, [&](const Word &u) {
      for (const auto &r : rels.relations)
        for_each_word(s, d - 2 - left, [&](const Word &v) {
          rows.push_back(to_dense(NCPoly::monomial(za, rels.mode, u) * r.element *
                                  NCPoly::monomial(za, rels.mode, v)));
        });
    });
  const std::size_t base = dense_rank(rows);
  rows.push_back(to_dense(p));
  return dense_rank(rows) == base;
}

} // namespace qmm::testing
