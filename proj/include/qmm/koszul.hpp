#pragma once

// Koszul complexes K^{l,*} of quantum affine space:
//   0 -> A^!*_l (x) A_0 -> A^!*_{l-1} (x) A_1 -> ... -> A^!*_0 (x) A_l -> 0
// with explicit bases and differentials over the parameter ring.

#include <string>
#include <vector>

#include "qmm/quantum_spaces.hpp"
#include "qmm/right_quantum.hpp"

namespace qmm {

/// Basis vector wedge(J) (x) x^r; J may be empty (the unit of A^!*_0).
struct KoszulBasisVector {
  Subset J;
  AffineMonomial r;
  auto operator<=>(const KoszulBasisVector &) const = default;
};

/// Dense matrix over ParamScalar, entries[row][col].
struct ScalarMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<ParamScalar>> entries;

  ScalarMatrix() = default;
  ScalarMatrix(std::size_t r, std::size_t c, const ParamMode &mode);
  bool is_zero() const;
};

ScalarMatrix multiply(const ScalarMatrix &a, const ScalarMatrix &b,
                      const ParamMode &mode);

struct KoszulComplex {
  int n = 0;
  int ell = 0;
  ParamMode mode = ParamMode::single();
  /// spaces[i] is the basis of K^{l,i} = A^!*_{l-i} (x) A_i, i = 0..l.
  std::vector<std::vector<KoszulBasisVector>> spaces;
  /// differentials[i] : K^{l,i} -> K^{l,i+1}, i = 0..l-1; rows index the
  /// codomain basis.
  std::vector<ScalarMatrix> differentials;

  std::vector<std::size_t> dimensions() const;
  std::size_t index_of(int i, const KoszulBasisVector &b) const;
};

/// Splits off the last tensor factor of each wedge(J) and multiplies it
/// onto the affine side.
KoszulComplex build_complex(const ParamMode &mode, int n, int ell);

/// Decomposes an element of V^{(x)m} lying in A^!*_m over the wedge basis
/// by reading off coefficients of increasing words; throws
/// ConsistencyError when a remainder is left.
std::vector<std::pair<Subset, ParamScalar>>
wedge_decompose(const ParamMode &mode, int n, int m, const NCPoly &element);

/// Every composite d_{i+1} d_i is the zero matrix (exactly).
bool d_squared_zero(const KoszulComplex &c);

/// C(n, l-i) C(n+i-1, i), and the alternating sum over i.
std::uint64_t koszul_dimension(int n, int ell, int i);
long euler_characteristic(int n, int ell);

struct ExactnessOptions {
  bool exact = false;
  int specializations = 3;
  std::uint64_t seed = 1;
};

struct ExactnessReport {
  int n = 0;
  int ell = 0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks; // of d_0 .. d_{l-1}
  std::vector<long> homology;     // at positions 0 .. l
  std::string mode;
  /// Member: ranks decided.  Inconclusive: specializations disagree.
  Verdict verdict = Verdict::Member;

  bool exact_sequence() const;
};

/// Ranks by fraction-free elimination over the Laurent ring (exact) or over
/// several rational specializations that must agree.
ExactnessReport check_exactness(const KoszulComplex &c,
                                const ExactnessOptions &options = {});

/// Rank of a ScalarMatrix over the fraction field of the parameter ring.
std::size_t exact_rank(const ScalarMatrix &m);
/// Rank after substituting the parameters.
std::size_t specialized_rank(const ScalarMatrix &m,
                             const std::vector<mpq_class> &values);

/// Coefficient c_{I,J} in delta'(wedge(J)) = sum_I c_{I,J} (x) wedge(I):
/// the coefficient of the increasing word of I.
NCPoly wedge_coaction_entry(const ParamMode &mode, int n, const Subset &I,
                            const Subset &J);

/// The differentials of K^{l,*} commute with the coaction, modulo the ideal
/// of B.  Returns the combined verdict over every basis vector.
struct ComoduleReport {
  std::size_t entries_checked = 0;
  std::size_t nonzero_before_reduction = 0;
  Verdict verdict = Verdict::Member;
};
ComoduleReport comodule_compat_check(const IdealOracle &oracle, int ell);

nlohmann::ordered_json to_json(const ExactnessReport &r);

} // namespace qmm
