#pragma once

// The bialgebra B = end A of the quantum affine space: generators z_i^j,
// column and cross relations, a per-degree ideal membership oracle,
// comultiplication and counit, and quantum minors.

#include <cstdint>
#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "qmm/free_algebra.hpp"
#include "qmm/quantum_spaces.hpp"
#include "qmm/sparse_echelon.hpp"

namespace qmm {

enum class RelationKind { Column, Cross };

struct Relation {
  RelationKind kind;
  int i, j;       // lower indices, i < j
  int k, l;       // upper indices; k == l for column relations
  NCPoly element; // homogeneous of degree 2 over the z-alphabet
};

struct RelationSet {
  int n = 0;
  ParamMode mode = ParamMode::single();
  std::vector<Relation> relations;

  std::size_t column_count() const;
  std::size_t cross_count() const;
  std::vector<NCPoly> generators() const;
};

/// Column relations z_j^l z_i^l - q_ij z_i^l z_j^l (all l, i < j) followed by
/// cross relations
/// q_ij z_i^k z_j^l - q_kl z_j^l z_i^k - z_j^k z_i^l + q_kl q_ij z_i^l z_j^k
/// (i < j, k < l).
RelationSet build_relations(int n, const ParamMode &mode);

/// Rewrites adjacent pairs z_j^l z_i^l (i < j, same upper index) into
/// z_i^l z_j^l.  Returns the rewritten word and, for each pair slot (i,j),
/// how many factors q_ij were picked up.
struct ColumnRewrite {
  Word word;
  std::vector<int> swaps; // indexed by pair_index(n, i, j)
};
ColumnRewrite column_normal_form(int n, const Word &w);
bool is_column_normal(int n, const Word &w);

/// Mixed-radix slot of a word of fixed degree (first letter most
/// significant), which realizes the canonical word order.
std::uint64_t word_index(int alphabet_size, const Word &w);
Word word_at(int alphabet_size, int degree, std::uint64_t index);

/// Row-reduced spanning set of the degree-d component of the two-sided
/// ideal generated by the relations, over a fixed coefficient domain.
///
/// With column rewriting enabled, vectors live on column-normal words: the
/// column relations are applied as a confluent rewrite first and the rows
/// span the image of the ideal (generated there by u * cross * v).
class GradedIdealBasis {
public:
  struct Key {
    int n = 0;
    ParamKind kind = ParamKind::Multi;
    int degree = 0;
    bool exact = false;
    bool column_rewrite = true;
    std::vector<std::string> values; // specialization, as "p/q" strings
    auto operator<=>(const Key &) const = default;
    std::string file_stem() const;
  };

  /// Elimination over Q with the parameters set to `values` (one per
  /// variable slot of the relation mode; empty for Numeric mode).
  static std::shared_ptr<const GradedIdealBasis>
  build_specialized(const RelationSet &rels, int degree,
                    std::vector<mpq_class> values, bool column_rewrite);
  /// Fraction-free elimination over the Laurent ring.
  static std::shared_ptr<const GradedIdealBasis>
  build_exact(const RelationSet &rels, int degree, bool column_rewrite);

  const Key &key() const noexcept { return key_; }
  int degree() const noexcept { return key_.degree; }
  bool exact() const noexcept { return key_.exact; }
  std::size_t rank() const;
  std::size_t spanning_rows() const noexcept { return spanning_rows_; }
  /// Dimension of the ambient word space, (n^2)^d.
  std::uint64_t ambient_dimension() const noexcept { return ambient_; }
  bool is_reduced() const;

  /// Coordinates of a homogeneous degree-d polynomial (after the column
  /// rewrite when enabled).
  SparseVec<mpq_class> specialized_vector(const NCPoly &p) const;
  SparseVec<ParamScalar> exact_vector(const NCPoly &p) const;

  bool contains(const NCPoly &p) const;
  /// Projection of a rational vector along the ideal (specialized only).
  SparseVec<mpq_class> normal_form(SparseVec<mpq_class> v) const;
  const RationalEchelon &rational() const;
  const LaurentEchelon &laurent() const;

  /// JSON persistence of specialized bases (see QMM_CACHE_DIR).
  nlohmann::ordered_json to_json() const;
  static std::shared_ptr<const GradedIdealBasis>
  from_json(const nlohmann::ordered_json &j, const Key &expected);

private:
  GradedIdealBasis() = default;
  mpq_class rewrite_factor(const std::vector<int> &swaps) const;

  Key key_;
  int n_ = 0;
  ParamMode mode_ = ParamMode::single();
  std::vector<mpq_class> values_;
  std::uint64_t ambient_ = 0;
  std::size_t spanning_rows_ = 0;
  std::variant<std::monostate, RationalEchelon, LaurentEchelon> echelon_;
};

/// Process-wide cache of ideal bases.  Concurrent requests for the same key
/// build once; later readers share the immutable result.
std::shared_ptr<const GradedIdealBasis>
cached_specialized_basis(const RelationSet &rels, int degree,
                         const std::vector<mpq_class> &values,
                         bool column_rewrite);
std::shared_ptr<const GradedIdealBasis>
cached_exact_basis(const RelationSet &rels, int degree, bool column_rewrite);
void clear_basis_cache();

struct OracleOptions {
  bool exact = false;
  int specializations = 3;
  std::uint64_t seed = 1;
  bool column_rewrite = true;
};

/// k draws of pairwise distinct odd primes in [3, 97], one per variable
/// slot, from std::mt19937_64 seeded with `seed`.
std::vector<std::vector<mpq_class>> draw_specializations(int num_vars, int k,
                                                         std::uint64_t seed);

enum class Verdict { Member, NonMember, Inconclusive };
const char *to_string(Verdict v);

struct MembershipResult {
  Verdict verdict = Verdict::NonMember;
  std::vector<bool> per_specialization;
};

/// Decides whether a polynomial vanishes in B.
class IdealOracle {
public:
  IdealOracle(int n, ParamMode mode, OracleOptions options = {});

  int n() const noexcept { return n_; }
  const ParamMode &mode() const noexcept { return mode_; }
  const OracleOptions &options() const noexcept { return options_; }
  const RelationSet &relations() const noexcept { return relations_; }
  /// Parameter values per specialization (a single empty entry for exact
  /// and numeric oracles).
  const std::vector<std::vector<mpq_class>> &specializations() const noexcept {
    return specializations_;
  }
  bool is_exact() const noexcept;
  std::string label() const;

  MembershipResult check(const NCPoly &p) const;
  bool member(const NCPoly &p) const {
    return check(p).verdict == Verdict::Member;
  }

  std::shared_ptr<const GradedIdealBasis> basis(int degree,
                                                std::size_t which) const;

private:
  int n_;
  ParamMode mode_;
  OracleOptions options_;
  RelationSet relations_;
  std::vector<std::vector<mpq_class>> specializations_;
};

bool ideal_member(const NCPoly &p, const IdealOracle &oracle);

/// Quantum minor: sum_{pi in S_m} w(pi) z^{j_1}_{j_pi1} ... z^{j_m}_{j_pim}.
NCPoly qdet(const ParamMode &mode, int n, const Subset &J);

/// Element of T(z) (x) T(z).
class TensorPoly {
public:
  struct PairHash {
    std::size_t operator()(const std::pair<Word, Word> &p) const noexcept {
      return WordHash{}(p.first) * 1000003u ^ WordHash{}(p.second);
    }
  };
  using TermMap =
      std::unordered_map<std::pair<Word, Word>, ParamScalar, PairHash>;

  TensorPoly(int n, ParamMode mode) : n_(n), mode_(std::move(mode)) {}
  static TensorPoly tensor(const NCPoly &a, const NCPoly &b);

  int n() const noexcept { return n_; }
  const ParamMode &mode() const noexcept { return mode_; }
  const TermMap &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const Word &l, const Word &r, const ParamScalar &c);
  TensorPoly &operator-=(const TensorPoly &o);
  bool operator==(const TensorPoly &o) const;

private:
  int n_;
  ParamMode mode_;
  TermMap terms_;
};

/// Delta(z_i^j) = sum_l z_i^l (x) z_l^j, extended multiplicatively.
TensorPoly comultiply(const NCPoly &p);
/// (eps (x) id) and (id (x) eps) with eps(z_i^j) = delta_ij.
NCPoly counit_left(const TensorPoly &t);
NCPoly counit_right(const TensorPoly &t);

/// Membership in I (x) T + T (x) I, bidegree by bidegree.  Specialized
/// oracles project both factors along the ideal; exact oracles eliminate in
/// the doubled word space directly (feasible for small n and degree).
Verdict doubled_ideal_member(const TensorPoly &t, const IdealOracle &oracle);

/// n x n matrix, row = lower index i, column = upper index j.
using RationalMatrix = std::vector<std::vector<mpq_class>>;

/// Quantum minor evaluated on a matrix with commuting entries under a
/// numeric parameter assignment.
mpq_class qdet_numeric(const RationalMatrix &M, const ParamMode &numeric_mode,
                       const Subset &J);

/// True iff every relation generator vanishes when z_i^j -> M[i][j] with
/// commuting rational entries and the parameters of `numeric_mode`.
bool is_right_quantum(const RationalMatrix &M, const ParamMode &numeric_mode);
/// Same predicate for a matrix with entries in B itself, zero-tested by the
/// oracle.
bool is_right_quantum(const std::vector<std::vector<NCPoly>> &M,
                      const IdealOracle &oracle);

/// The generic matrix Z = (z_i^j) as single-letter polynomials.
std::vector<std::vector<NCPoly>> generic_matrix(int n, const ParamMode &mode);

} // namespace qmm
