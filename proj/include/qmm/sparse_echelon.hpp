#pragma once

// Incremental sparse row echelon structure.  Rows are kept with their pivot
// at the smallest column they touch, so leading-term reduction decides span
// membership and full reduction yields a projection onto the non-pivot
// coordinates.
//
// Two coefficient domains are supported through a policy:
//  * RationalPolicy  - exact rationals, pivots normalized to 1;
//  * LaurentPolicy   - ParamScalar (Laurent polynomials over Z).  Rows with a
//    unit pivot are normalized to 1; otherwise elimination is fraction-free
//    (v <- a v - v_c P) followed by removal of the integer and monomial
//    content, which keeps the arithmetic inside the Laurent ring.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "qmm/param_ring.hpp"

namespace qmm {

template <class T> using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

/// alpha*a + beta*b for sorted sparse vectors; zero results are dropped.
/// alpha == nullptr means 1.
template <class T>
SparseVec<T> sparse_combine(const T *alpha, const SparseVec<T> &a,
                            const T &beta, const SparseVec<T> &b,
                            bool (*is_zero)(const T &)) {
  SparseVec<T> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, alpha ? T(*alpha * a[i].second) : a[i].second);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, T(beta * b[j].second));
      ++j;
    } else {
      T v = alpha ? T(*alpha * a[i].second) : a[i].second;
      v += T(beta * b[j].second);
      if (!is_zero(v))
        out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

struct RationalPolicy {
  using Value = mpq_class;

  static bool is_zero(const Value &v) { return sgn(v) == 0; }

  static void normalize(SparseVec<Value> &row) {
    const Value lead = row.front().second;
    if (lead == 1)
      return;
    for (auto &e : row)
      e.second /= lead;
  }

  // Eliminates v's entry at column `col` (whose value is `vc`) using a
  // normalized pivot row.
  static SparseVec<Value> eliminate(const SparseVec<Value> &v, const Value &vc,
                                    const SparseVec<Value> &pivot) {
    return sparse_combine<Value>(nullptr, v, Value(-vc), pivot, &is_zero);
  }
};

struct LaurentPolicy {
  using Value = ParamScalar;

  static bool is_zero(const Value &v) { return v.is_zero(); }

  static void strip_content(SparseVec<Value> &row) {
    if (row.empty() || row.front().second.kind() == ParamKind::Numeric)
      return;
    mpz_class g = 0;
    std::vector<int> low;
    bool first = true;
    for (const auto &[col, v] : row)
      for (const auto &t : v.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (first) {
          low = t.exponents;
          first = false;
        } else {
          for (std::size_t k = 0; k < low.size(); ++k)
            low[k] = std::min(low[k], t.exponents[k]);
        }
      }
    const bool shift = std::any_of(low.begin(), low.end(),
                                   [](int e) { return e != 0; });
    for (auto &k : low)
      k = -k;
    for (auto &[col, v] : row) {
      if (g > 1)
        v.divide_exact(g);
      if (shift)
        v.shift_exponents(low);
    }
  }

  static void normalize(SparseVec<Value> &row) {
    const Value &lead = row.front().second;
    if (lead.is_one())
      return;
    if (lead.is_unit()) {
      const Value inv = lead.inverse();
      for (auto &e : row)
        e.second *= inv;
      return;
    }
    strip_content(row);
  }

  static SparseVec<Value> eliminate(const SparseVec<Value> &v, const Value &vc,
                                    const SparseVec<Value> &pivot) {
    const Value &lead = pivot.front().second;
    if (lead.is_one())
      return sparse_combine<Value>(nullptr, v, -vc, pivot, &is_zero);
    SparseVec<Value> out =
        sparse_combine<Value>(&lead, v, -vc, pivot, &is_zero);
    strip_content(out);
    return out;
  }
};

template <class Policy> class SparseEchelon {
public:
  using Value = typename Policy::Value;
  using Vec = SparseVec<Value>;

  explicit SparseEchelon(std::size_t ncols) : pivot_of_(ncols, -1) {
    if (ncols > (std::size_t{1} << 28))
      throw UsageError("word space too large for the graded membership oracle");
  }

  std::size_t columns() const noexcept { return pivot_of_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<Vec> &rows() const noexcept { return rows_; }
  int pivot_row(std::uint32_t col) const { return pivot_of_[col]; }

  /// Adds v to the span; returns true if the rank grew.
  bool insert(Vec v) {
    reduce_leading(v);
    if (v.empty())
      return false;
    Policy::normalize(v);
    pivot_of_[v.front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  /// Reduces until the leading column has no pivot (or v vanishes).
  void reduce_leading(Vec &v) const {
    while (!v.empty()) {
      const int p = pivot_of_[v.front().first];
      if (p < 0)
        return;
      v = Policy::eliminate(v, v.front().second, rows_[p]);
    }
  }

  bool in_span(Vec v) const {
    reduce_leading(v);
    return v.empty();
  }

  /// Eliminates every pivot column from v.  For the rational policy this is
  /// the projection along the span onto the non-pivot coordinates.
  Vec normal_form(Vec v) const {
    std::size_t idx = 0;
    while (idx < v.size()) {
      const int p = pivot_of_[v[idx].first];
      if (p < 0) {
        ++idx;
        continue;
      }
      const Value vc = v[idx].second;
      // entries before idx are untouched: the pivot row starts at v[idx]
      v = Policy::eliminate(v, vc, rows_[p]);
    }
    return v;
  }

  /// Back-substitution: afterwards no row has a nonzero entry in another
  /// row's pivot column.
  void make_reduced() {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      order[r] = r;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rows_[a].front().first > rows_[b].front().first;
    });
    for (std::size_t r : order) {
      Vec &row = rows_[r];
      std::size_t idx = 1;
      while (idx < row.size()) {
        const int p = pivot_of_[row[idx].first];
        if (p < 0 || static_cast<std::size_t>(p) == r) {
          ++idx;
          continue;
        }
        const Value vc = row[idx].second;
        row = Policy::eliminate(row, vc, rows_[p]);
      }
      Policy::normalize(row);
    }
  }

  bool is_reduced() const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t k = 1; k < rows_[r].size(); ++k)
        if (pivot_of_[rows_[r][k].first] >= 0)
          return false;
    return true;
  }

private:
  std::vector<std::int32_t> pivot_of_;
  std::vector<Vec> rows_;
};

using RationalEchelon = SparseEchelon<RationalPolicy>;
using LaurentEchelon = SparseEchelon<LaurentPolicy>;

} // namespace qmm
