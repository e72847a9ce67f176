#pragma once

// Characters of the comodules A_l and A^!*_m, the generating series Bos and
// Ferm, verification of Bos * Ferm = 1 in B[[t]], its torus-twisted
// one-parameter form, and the commutative (all q = 1) identity.

#include <string>
#include <vector>

#include "qmm/quantum_spaces.hpp"
#include "qmm/right_quantum.hpp"

namespace qmm {

/// G(m): the diagonal coaction coefficient b_{m,m}, i.e. the coefficient of
/// x^m in X_1^{m_1} ... X_n^{m_n} with X_i = sum_j z_i^j (x) x_j.
struct GCoefficient {
  AffineMonomial m;
  NCPoly value;
};
GCoefficient g_coefficient(const ParamMode &mode, int n, const AffineMonomial &m);

/// Trace of the coaction on A_l: sum over |m| = l of G(m).
NCPoly affine_character(const ParamMode &mode, int n, int l);
/// Trace of the coaction on A^!*_m: sum over |J| = m of qdet(J).
NCPoly exterior_character(const ParamMode &mode, int n, int m);
/// Trace of the coaction on the tensor power V^{(x)k}.
NCPoly tensor_power_character(const ParamMode &mode, int n, int k);

/// dim A_l, counted from the PBW basis.
std::size_t affine_dimension(int n, int l);
/// dim A^!_m, counted as the number of distinct nonzero normal forms of
/// dual-alphabet words of length m.
std::size_t exterior_dimension(int n, int m);
std::uint64_t binomial(int n, int k);

enum class SeriesKind { Bos, Ferm, BosTwisted, FermTwisted };
const char *to_string(SeriesKind k);

struct CharacterSeries {
  SeriesKind kind;
  TruncSeries body;
};

/// sum_l (sum_{|m|=l} G(m)) t^l up to t^d.
CharacterSeries bos_series(const ParamMode &mode, int n, int d);
/// sum_m (-1)^m (sum_{|J|=m} qdet(J)) t^m up to t^d.
CharacterSeries ferm_series(const ParamMode &mode, int n, int d);

/// Exponent of q weighting G(m) in the twisted series: l(n+1) - 2 sum i m_i.
int twisted_exponent(int n, const AffineMonomial &m);
/// Exponent of q weighting qdet(J): sum_{j in J} (n + 1 - 2j).
int twisted_exponent(int n, const Subset &J);

/// Twisted series (one-parameter mode only).
CharacterSeries twisted_bos_series(int n, int d);
CharacterSeries twisted_ferm_series(int n, int d);

struct DegreeReport {
  int degree = 0;
  std::size_t residual_terms_before_reduction = 0;
  std::string oracle_mode;
  Verdict verdict = Verdict::Member;
  bool pass = false;
};

struct MasterReport {
  int n = 0;
  int bound = 0;
  std::string params;
  std::vector<DegreeReport> degrees;
  /// Only filled by verify_twisted: the weights agree with the torus action.
  bool weights_consistent = true;

  bool pass() const;
  /// Member if every degree passes, Inconclusive if a degree is undecided
  /// and none fails, NonMember otherwise.
  Verdict verdict() const;
};

/// Checks that every coefficient of Bos * Ferm - 1 up to t^d vanishes in B.
MasterReport verify_master(const IdealOracle &oracle, int d);

/// Same for the twisted series; the oracle must be in one-parameter mode.
/// Also checks that the weights are the eigenvalues of the special torus
/// element on G(m) and qdet(J).
MasterReport verify_twisted(const IdealOracle &oracle, int d);

/// Coefficient of the increasing word x_{j1} ... x_{jm} in
/// delta'(wedge(J)).  Equals qdet(J) as a free-algebra element.
NCPoly wedge_coaction_diagonal(const ParamMode &mode, int n, const Subset &J);

/// delta'(wedge([1..n])) = qdet (x) wedge([1..n]) in B (x) V^{(x)n}: for
/// every tensor word w, coef_w(delta'(wedge)) - qdet * coef_w(wedge) must
/// vanish in B.
struct QdetCoactionReport {
  std::size_t words_checked = 0;
  std::size_t nonzero_before_reduction = 0;
  Verdict verdict = Verdict::Member;
};
QdetCoactionReport verify_qdet_coaction(const IdealOracle &oracle);

/// Delta(qdet) - qdet (x) qdet in I (x) T + T (x) I, full subset.
Verdict verify_qdet_grouplike(const IdealOracle &oracle);

/// (tau, tau') acting by z_i^j -> c_i d_j^{-1} z_i^j.
struct TorusElement {
  std::vector<ParamScalar> c;
  std::vector<ParamScalar> d;
};
NCPoly torus_act(const TorusElement &g, const NCPoly &p);
/// tau = (q^{n-1}, q^{n-3}, ..., q^{1-n}), tau' = 1, in one-parameter mode.
TorusElement special_torus(int n);

/// Result of the commutative check for one matrix.
struct ClassicalResult {
  bool pass = false;
  std::vector<mpq_class> bos;         // sum_{|m|=l} G(m)(Z), l = 0..d
  std::vector<mpq_class> determinant; // det(I - tZ) coefficients
  std::vector<mpq_class> product;     // truncated to degree d
};

/// Evaluates G(m) at q = 1 on commuting rational entries.  G polynomials
/// are computed once per (n, d) and shared.
class ClassicalChecker {
public:
  ClassicalChecker(int n, int d);
  int n() const noexcept { return n_; }
  int bound() const noexcept { return d_; }
  ClassicalResult check(const RationalMatrix &Z) const;

private:
  int n_, d_;
  std::vector<std::vector<NCPoly>> g_by_degree_;
};

ClassicalResult classical_check(const RationalMatrix &Z, int d);

/// Coefficients of det(I - tZ) by permutation expansion (length n + 1).
std::vector<mpq_class> det_one_minus_tz(const RationalMatrix &Z);

/// k random n x n matrices with entries p/q, p in [-5, 5], q in [1, 5],
/// drawn from std::mt19937_64(seed) by raw-output modulo.
std::vector<RationalMatrix> random_rational_matrices(int n, int k,
                                                     std::uint64_t seed);

nlohmann::ordered_json to_json(const MasterReport &r);

} // namespace qmm
