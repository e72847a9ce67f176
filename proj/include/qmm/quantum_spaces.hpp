#pragma once

// Quantum affine space A (x_j x_i = q_ij x_i x_j for i < j), its quadratic
// dual A^! (the quantum exterior algebra), the wedge basis of the dual
// components A^!*_m inside V^{(x)m}, and the coactions of the matrix
// bialgebra on A and on tensor words.

#include <compare>
#include <map>
#include <vector>

#include "qmm/free_algebra.hpp"

namespace qmm {

/// Strictly increasing list of 1-based indices.
using Subset = std::vector<int>;

/// Throws UsageError unless J is a nonempty strictly increasing subset of
/// {1..n}.
void validate_subset(int n, const Subset &J);
/// All m-element subsets of {1..n} in lexicographic order.
std::vector<Subset> subsets_of_size(int n, int m);

/// PBW monomial x^m = x_1^{m_1} ... x_n^{m_n}.
struct AffineMonomial {
  std::vector<int> exponents;

  int degree() const;
  auto operator<=>(const AffineMonomial &) const = default;
};

/// The x-word x_1^{m_1} ... x_n^{m_n}.
Word increasing_word(const AffineMonomial &m);
std::string to_string(const AffineMonomial &m);

/// c * x^m equal to w in A.
std::pair<ParamScalar, AffineMonomial>
affine_normalize(const ParamMode &mode, int n, const Word &w);

/// All monomials of the given degree, x_1-heavy first: (2,0),(1,1),(0,2).
std::vector<AffineMonomial> affine_basis(int n, int degree);

/// Normal form in A^! of a word over the dual alphabet; the result is a
/// single increasing word or zero.
NCPoly exterior_normalize(const ParamMode &mode, int n, const Word &w);

/// Spanning set of R(A^!): the n squares and the q-anticommutators
/// x^k x^l + q_kl x^l x^k (k < l), over the dual alphabet.
std::vector<NCPoly> exterior_relations(const ParamMode &mode, int n);

/// How the parameters in the inversion weight are labelled.  The subset
/// labelling is the one that makes the wedge element vanish on R_m(A^!);
/// the position labelling is kept only to demonstrate that it does not.
enum class WeightConvention { SubsetLabels, Positions };

/// w(pi) = prod over inversions a < b, pi(a) > pi(b) of
/// (-q_{label(pi b), label(pi a)})^{-1}.  `perm` holds pi(1..m), 1-based.
ParamScalar inversion_weight(const ParamMode &mode, const Subset &J,
                             const std::vector<int> &perm,
                             WeightConvention convention =
                                 WeightConvention::SubsetLabels);

struct WedgeElement {
  Subset subset;
  NCPoly expansion; // over the x-alphabet, homogeneous of degree |J|
};

/// sum_{pi in S_m} w(pi) x_{j_pi1} (x) ... (x) x_{j_pim}
WedgeElement wedge_expand(const ParamMode &mode, int n, const Subset &J,
                          WeightConvention convention =
                              WeightConvention::SubsetLabels);

/// Evaluation pairing <x^i, x_j> = delta_ij extended factorwise to words.
ParamScalar evaluation_pairing(const NCPoly &dual, const NCPoly &vectors);

/// True iff the wedge expansion of J pairs to zero with every spanning
/// element u (x) r (x) v of R_m(A^!).
bool wedge_pairing_check(const ParamMode &mode, int n, const Subset &J,
                         WeightConvention convention =
                             WeightConvention::SubsetLabels);

/// {b_{r,m}}: delta_A(x^m) = sum_r b_{r,m} (x) x^r, coefficients over the
/// z-alphabet.  Only nonzero entries are present.
using AffineCoaction = std::map<AffineMonomial, NCPoly>;
AffineCoaction coaction_affine(const ParamMode &mode, int n,
                               const AffineMonomial &m);

/// delta'(w) = sum over x-words c of (z-word) (x) c, without normalizing.
using TensorCoaction = std::map<Word, NCPoly>;
TensorCoaction coaction_tensor(const ParamMode &mode, int n, const Word &w);
/// Linear extension to an element of T(V).
TensorCoaction coaction_tensor(const NCPoly &vectors);

} // namespace qmm
