#pragma once

// Coefficient ring for every object in the engine: Laurent polynomials with
// integer coefficients in the parameters q_ij (i < j), the one-parameter
// specialization q_ij = q, or plain rationals once numbers are plugged in.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmm {

/// Contract violation by the caller (bad mode, bad subset, bad flag...).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Internal invariant broke; never expected for the algebras built here.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class ParamKind { Constant, Multi, Single, Numeric };

/// Which coefficient ring a computation lives in.
///
/// Multi(n) has one Laurent variable per pair i < j, numbered in the order
/// q12, q13, ..., q1n, q23, ...  Single has the one variable q.  Numeric
/// stores a nonzero rational for each q_ij in the same order.
class ParamMode {
public:
  static ParamMode multi(int n);
  static ParamMode single();
  static ParamMode numeric(int n, std::vector<mpq_class> values);
  /// Numeric mode with every q_ij = 1 (the commutative specialization).
  static ParamMode numeric_ones(int n);

  ParamKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int num_vars() const noexcept;
  bool is_laurent() const noexcept {
    return kind_ == ParamKind::Multi || kind_ == ParamKind::Single;
  }

  /// Index of q_ij (1-based i < j) among the Multi/Numeric slots.
  int var_index(int i, int j) const;
  std::pair<int, int> var_pair(int v) const;
  std::string var_name(int v) const;
  const std::vector<mpq_class> &values() const;
  std::string name() const;

  bool operator==(const ParamMode &o) const;

private:
  ParamMode(ParamKind k, int n) : kind_(k), n_(n) {}

  ParamKind kind_;
  int n_;
  std::shared_ptr<const std::vector<mpq_class>> values_;
};

/// Number of q_ij slots for size n: n(n-1)/2.
constexpr int pair_count(int n) { return n * (n - 1) / 2; }
int pair_index(int n, int i, int j);

/// Value map used by specialize(): variable slot -> nonzero rational.
using Assignment = std::map<int, mpq_class>;

/// Exact element of the coefficient ring.
///
/// Laurent modes keep a list of terms sorted by exponent vector with no
/// zero coefficients, so structural equality is ring equality.  A
/// default-constructed scalar (or one built from an integer) is a mode-free
/// constant that adopts the mode of whatever it is combined with.
class ParamScalar {
public:
  struct Term {
    std::vector<int> exponents;
    mpz_class coeff;
  };

  ParamScalar() = default;
  ParamScalar(long c); // NOLINT: integers convert implicitly
  explicit ParamScalar(const mpz_class &c);

  static ParamScalar zero(const ParamMode &mode);
  static ParamScalar one(const ParamMode &mode);
  /// q_ij^e.  For i > j this is q_ji^{-e}; q_ii = 1.
  static ParamScalar q(const ParamMode &mode, int i, int j, int e = 1);
  /// coeff * prod_v q_v^{exponents[v]} in a Laurent mode.
  static ParamScalar monomial(const ParamMode &mode, std::vector<int> exponents,
                              const mpz_class &coeff);
  static ParamScalar rational(const mpq_class &value);

  ParamKind kind() const noexcept { return kind_; }
  int num_vars() const noexcept { return nvars_; }
  const std::vector<Term> &terms() const noexcept { return terms_; }
  const mpq_class &numeric_value() const;

  bool is_zero() const noexcept;
  bool is_one() const;
  /// True for +-monomials (and nonzero numerics), which are invertible.
  bool is_unit() const;
  ParamScalar inverse() const;
  ParamScalar pow(int e) const;

  ParamScalar operator-() const;
  ParamScalar &operator+=(const ParamScalar &o);
  ParamScalar &operator-=(const ParamScalar &o);
  ParamScalar &operator*=(const ParamScalar &o);
  friend ParamScalar operator+(ParamScalar a, const ParamScalar &b) {
    return a += b;
  }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar &b) {
    return a -= b;
  }
  friend ParamScalar operator*(const ParamScalar &a, const ParamScalar &b);
  bool operator==(const ParamScalar &o) const;

  /// Divide by an integer that is known to divide every coefficient.
  void divide_exact(const mpz_class &d);
  /// Multiply by the monomial prod_v q_v^{shift[v]}.
  void shift_exponents(std::span<const int> shift);

  std::string to_string(const ParamMode &mode) const;
  std::string to_string() const;

private:
  void promote_to(const ParamScalar &other);
  void canonicalize();

  ParamKind kind_ = ParamKind::Constant;
  int nvars_ = 0;
  std::vector<Term> terms_;
  mpq_class value_;
};

ParamScalar scalar_mul(const ParamScalar &a, const ParamScalar &b);

/// Evaluation homomorphism.  Every variable that occurs must be assigned and
/// every assigned value must be nonzero.
mpq_class specialize(const ParamScalar &a, const Assignment &assignment);
/// Dense variant for hot loops: values[v] is the value of slot v.
mpq_class evaluate(const ParamScalar &a, std::span<const mpq_class> values);

/// Multi -> Single: every q_ij becomes q.
ParamScalar to_single(const ParamScalar &a);

nlohmann::ordered_json to_json(const ParamScalar &a);

} // namespace qmm
