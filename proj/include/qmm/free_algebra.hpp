#pragma once

// Words, noncommutative polynomials and degree-truncated power series over
// ParamScalar.  Three alphabets occur: the affine generators x_1..x_n, their
// duals x^1..x^n, and the matrix generators z_i^j (lower index i, upper j).

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmm/param_ring.hpp"

namespace qmm {

enum class AlphabetKind : std::uint8_t { X, Dual, Z };

struct Alphabet {
  AlphabetKind kind = AlphabetKind::X;
  int n = 1;

  static Alphabet x(int n) { return {AlphabetKind::X, n}; }
  static Alphabet dual(int n) { return {AlphabetKind::Dual, n}; }
  static Alphabet z(int n) { return {AlphabetKind::Z, n}; }

  int size() const { return kind == AlphabetKind::Z ? n * n : n; }
  bool operator==(const Alphabet &) const = default;
};

/// Letter codes: X(i) and Dual(i) -> i-1, Z(i,j) -> (i-1)*n + (j-1).  The
/// codes realize the canonical letter order X(1) < ... < X(n) and
/// Z(1,1) < Z(1,2) < ... < Z(n,n).
constexpr std::uint8_t x_code(int i) { return static_cast<std::uint8_t>(i - 1); }
constexpr std::uint8_t z_code(int n, int lower, int upper) {
  return static_cast<std::uint8_t>((lower - 1) * n + (upper - 1));
}
constexpr int z_lower(int n, std::uint8_t c) { return c / n + 1; }
constexpr int z_upper(int n, std::uint8_t c) { return c % n + 1; }

/// A word in one alphabet, packed one byte per letter.
class Word {
public:
  Word() = default;
  explicit Word(std::string codes) : codes_(std::move(codes)) {}

  /// x_{i1} x_{i2} ... (1-based indices)
  static Word x(std::initializer_list<int> indices);
  static Word x(const std::vector<int> &indices);
  /// z_{i1}^{j1} z_{i2}^{j2} ... given (lower, upper) pairs
  static Word z(int n, std::initializer_list<std::pair<int, int>> letters);

  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  std::uint8_t operator[](std::size_t k) const {
    return static_cast<std::uint8_t>(codes_[k]);
  }
  void push_back(std::uint8_t c) { codes_.push_back(static_cast<char>(c)); }
  const std::string &codes() const noexcept { return codes_; }
  Word operator+(const Word &o) const { return Word(codes_ + o.codes_); }

  bool operator==(const Word &o) const { return codes_ == o.codes_; }
  /// Degree-lexicographic order.
  std::strong_ordering operator<=>(const Word &o) const;

private:
  std::string codes_;
};

struct WordHash {
  std::size_t operator()(const Word &w) const noexcept {
    return std::hash<std::string>{}(w.codes());
  }
};

std::string letter_name(const Alphabet &a, std::uint8_t code);
std::string to_string(const Alphabet &a, const Word &w);

/// Calls f(word) for every word of the given length over an alphabet of
/// size `letters`, in lexicographic order.
void for_each_word(int letters, int length,
                   const std::function<void(const Word &)> &f);

/// Finitely supported map Word -> ParamScalar without zero coefficients.
class NCPoly {
public:
  using TermMap = std::unordered_map<Word, ParamScalar, WordHash>;

  NCPoly(Alphabet alphabet, ParamMode mode)
      : alphabet_(alphabet), mode_(std::move(mode)) {}

  static NCPoly monomial(Alphabet alphabet, ParamMode mode, const Word &w,
                         const ParamScalar &coeff = 1);
  static NCPoly one(Alphabet alphabet, ParamMode mode) {
    return monomial(alphabet, std::move(mode), Word());
  }

  const Alphabet &alphabet() const noexcept { return alphabet_; }
  const ParamMode &mode() const noexcept { return mode_; }
  const TermMap &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Word &w, const ParamScalar &c);
  ParamScalar coefficient_of(const Word &w) const;

  /// Terms in canonical word order.
  std::vector<std::pair<Word, ParamScalar>> sorted_terms() const;
  /// Degree if every word has the same length (zero counts as homogeneous
  /// of any degree and reports nullopt).
  std::optional<int> degree() const;
  bool is_homogeneous_of(int d) const;

  NCPoly &operator+=(const NCPoly &o);
  NCPoly &operator-=(const NCPoly &o);
  NCPoly &operator*=(const ParamScalar &c);
  friend NCPoly operator+(NCPoly a, const NCPoly &b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly &b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const ParamScalar &c) { return a *= c; }
  friend NCPoly operator*(const NCPoly &a, const NCPoly &b);
  NCPoly operator-() const { return *this * ParamScalar(-1); }
  bool operator==(const NCPoly &o) const;

  /// Apply f to every coefficient, dropping zeros; the mode may change.
  NCPoly map_coefficients(const ParamMode &mode,
                          const std::function<ParamScalar(const ParamScalar &)>
                              &f) const;

  std::string to_string() const;

private:
  void check_same_alphabet(const NCPoly &o) const;

  Alphabet alphabet_;
  ParamMode mode_;
  TermMap terms_;
};

NCPoly nc_mul(const NCPoly &a, const NCPoly &b);
ParamScalar coefficient_of(const NCPoly &p, const Word &w);

/// Truncated power series sum_k coeffs[k] t^k with coeffs[k] homogeneous of
/// word length k.
class TruncSeries {
public:
  TruncSeries(Alphabet alphabet, ParamMode mode, int bound);
  static TruncSeries one(Alphabet alphabet, ParamMode mode, int bound);

  int bound() const noexcept { return bound_; }
  const Alphabet &alphabet() const noexcept { return alphabet_; }
  const ParamMode &mode() const noexcept { return mode_; }
  const NCPoly &operator[](int k) const { return coeffs_.at(k); }
  const std::vector<NCPoly> &coefficients() const noexcept { return coeffs_; }
  void set(int k, NCPoly p);

  bool operator==(const TruncSeries &o) const;

private:
  Alphabet alphabet_;
  ParamMode mode_;
  int bound_;
  std::vector<NCPoly> coeffs_;
};

TruncSeries series_mul(const TruncSeries &a, const TruncSeries &b);

nlohmann::ordered_json to_json(const Alphabet &a, const Word &w);
nlohmann::ordered_json to_json(const NCPoly &p);
nlohmann::ordered_json to_json(const TruncSeries &s);

} // namespace qmm
