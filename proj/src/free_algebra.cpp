#include "qmm/free_algebra.hpp"

#include <algorithm>

namespace qmm {

Word Word::x(std::initializer_list<int> indices) {
  Word w;
  for (int i : indices)
    w.push_back(x_code(i));
  return w;
}

Word Word::x(const std::vector<int> &indices) {
  Word w;
  for (int i : indices)
    w.push_back(x_code(i));
  return w;
}

Word Word::z(int n, std::initializer_list<std::pair<int, int>> letters) {
  Word w;
  for (auto [i, j] : letters)
    w.push_back(z_code(n, i, j));
  return w;
}

std::strong_ordering Word::operator<=>(const Word &o) const {
  if (codes_.size() != o.codes_.size())
    return codes_.size() <=> o.codes_.size();
  const int c = codes_.compare(o.codes_);
  return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

std::string letter_name(const Alphabet &a, std::uint8_t code) {
  switch (a.kind) {
  case AlphabetKind::X:
    return "x" + std::to_string(code + 1);
  case AlphabetKind::Dual:
    return "x^" + std::to_string(code + 1);
  case AlphabetKind::Z: {
    const int i = z_lower(a.n, code), j = z_upper(a.n, code);
    if (a.n <= 9)
      return "z" + std::to_string(i) + std::to_string(j);
    return "z" + std::to_string(i) + "," + std::to_string(j);
  }
  }
  return "?";
}

std::string to_string(const Alphabet &a, const Word &w) {
  if (w.empty())
    return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k)
      out += "·";
    out += letter_name(a, w[k]);
  }
  return out;
}

void for_each_word(int letters, int length,
                   const std::function<void(const Word &)> &f) {
  std::string codes(static_cast<std::size_t>(length), '\0');
  while (true) {
    f(Word(codes));
    int pos = length - 1;
    while (pos >= 0 && static_cast<std::uint8_t>(codes[pos]) + 1 == letters) {
      codes[pos] = '\0';
      --pos;
    }
    if (pos < 0)
      return;
    codes[pos] = static_cast<char>(static_cast<std::uint8_t>(codes[pos]) + 1);
  }
}

// ------------------------------------------------------------------ NCPoly

NCPoly NCPoly::monomial(Alphabet alphabet, ParamMode mode, const Word &w,
                        const ParamScalar &coeff) {
  NCPoly p(alphabet, std::move(mode));
  p.add_term(w, coeff);
  return p;
}

void NCPoly::add_term(const Word &w, const ParamScalar &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

ParamScalar NCPoly::coefficient_of(const Word &w) const {
  auto it = terms_.find(w);
  if (it == terms_.end())
    return ParamScalar::zero(mode_);
  return it->second;
}

std::vector<std::pair<Word, ParamScalar>> NCPoly::sorted_terms() const {
  std::vector<std::pair<Word, ParamScalar>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  return out;
}

std::optional<int> NCPoly::degree() const {
  std::optional<int> d;
  for (const auto &[w, c] : terms_) {
    if (d && *d != static_cast<int>(w.size()))
      return std::nullopt;
    d = static_cast<int>(w.size());
  }
  return d;
}

bool NCPoly::is_homogeneous_of(int d) const {
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto &t) {
    return static_cast<int>(t.first.size()) == d;
  });
}

void NCPoly::check_same_alphabet(const NCPoly &o) const {
  if (!(alphabet_ == o.alphabet_))
    throw UsageError("alphabet mismatch between noncommutative polynomials");
}

NCPoly &NCPoly::operator+=(const NCPoly &o) {
  check_same_alphabet(o);
  for (const auto &[w, c] : o.terms_)
    add_term(w, c);
  return *this;
}

NCPoly &NCPoly::operator-=(const NCPoly &o) {
  check_same_alphabet(o);
  for (const auto &[w, c] : o.terms_)
    add_term(w, -c);
  return *this;
}

NCPoly &NCPoly::operator*=(const ParamScalar &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[w, coeff] : terms_)
    coeff *= c;
  return *this;
}

NCPoly operator*(const NCPoly &a, const NCPoly &b) {
  a.check_same_alphabet(b);
  NCPoly r(a.alphabet_, a.mode_);
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto &[u, cu] : a.terms_)
    for (const auto &[v, cv] : b.terms_)
      r.add_term(u + v, cu * cv);
  return r;
}

NCPoly nc_mul(const NCPoly &a, const NCPoly &b) { return a * b; }

ParamScalar coefficient_of(const NCPoly &p, const Word &w) {
  return p.coefficient_of(w);
}

bool NCPoly::operator==(const NCPoly &o) const {
  if (!(alphabet_ == o.alphabet_) || terms_.size() != o.terms_.size())
    return false;
  for (const auto &[w, c] : terms_) {
    auto it = o.terms_.find(w);
    if (it == o.terms_.end() || !(it->second == c))
      return false;
  }
  return true;
}

NCPoly NCPoly::map_coefficients(
    const ParamMode &mode,
    const std::function<ParamScalar(const ParamScalar &)> &f) const {
  NCPoly r(alphabet_, mode);
  for (const auto &[w, c] : terms_)
    r.add_term(w, f(c));
  return r;
}

namespace {

// Sign and magnitude of a coefficient for display; multi-term Laurent
// coefficients are parenthesized and keep a positive sign.
std::pair<bool, std::string> display_coefficient(const ParamScalar &c,
                                                 const ParamMode &mode) {
  if (c.kind() == ParamKind::Numeric) {
    const mpq_class &v = c.numeric_value();
    mpq_class mag = abs(v);
    return {v < 0, mag == 1 ? "" : mag.get_str()};
  }
  if (c.terms().size() == 1) {
    ParamScalar mag = c.terms()[0].coeff < 0 ? -c : c;
    const bool neg = c.terms()[0].coeff < 0;
    if (mag.is_one())
      return {neg, ""};
    return {neg, mag.to_string(mode)};
  }
  return {false, "(" + c.to_string(mode) + ")"};
}

} // namespace

std::string NCPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[w, c] : sorted_terms()) {
    auto [neg, mag] = display_coefficient(c, mode_);
    if (first)
      out += neg ? "−" : "";
    else
      out += neg ? " − " : " + ";
    first = false;
    if (mag.empty())
      out += qmm::to_string(alphabet_, w);
    else if (w.empty())
      out += mag;
    else
      out += mag + "·" + qmm::to_string(alphabet_, w);
  }
  return out;
}

// ------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(Alphabet alphabet, ParamMode mode, int bound)
    : alphabet_(alphabet), mode_(std::move(mode)), bound_(bound) {
  if (bound < 0)
    throw UsageError("truncation bound must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(bound) + 1, NCPoly(alphabet_, mode_));
}

TruncSeries TruncSeries::one(Alphabet alphabet, ParamMode mode, int bound) {
  TruncSeries s(alphabet, mode, bound);
  s.coeffs_[0] = NCPoly::one(alphabet, std::move(mode));
  return s;
}

void TruncSeries::set(int k, NCPoly p) {
  if (k < 0 || k > bound_)
    throw UsageError("series degree out of range");
  if (!(p.alphabet() == alphabet_))
    throw UsageError("alphabet mismatch in series coefficient");
  if (!p.is_homogeneous_of(k))
    throw UsageError("series coefficient of t^" + std::to_string(k) +
                     " must be homogeneous of degree " + std::to_string(k));
  coeffs_[k] = std::move(p);
}

bool TruncSeries::operator==(const TruncSeries &o) const {
  return bound_ == o.bound_ && coeffs_ == o.coeffs_;
}

TruncSeries series_mul(const TruncSeries &a, const TruncSeries &b) {
  if (a.bound() != b.bound())
    throw UsageError("truncation bounds differ: " + std::to_string(a.bound()) +
                     " vs " + std::to_string(b.bound()));
  TruncSeries r(a.alphabet(), a.mode(), a.bound());
  for (int d = 0; d <= a.bound(); ++d) {
    NCPoly acc(a.alphabet(), a.mode());
    for (int k = 0; k <= d; ++k)
      if (!a[k].is_zero() && !b[d - k].is_zero())
        acc += a[k] * b[d - k];
    r.set(d, std::move(acc));
  }
  return r;
}

// -------------------------------------------------------------------- JSON

nlohmann::ordered_json to_json(const Alphabet &a, const Word &w) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < w.size(); ++k) {
    switch (a.kind) {
    case AlphabetKind::X:
      out.push_back({"x", w[k] + 1});
      break;
    case AlphabetKind::Dual:
      out.push_back({"dual", w[k] + 1});
      break;
    case AlphabetKind::Z:
      out.push_back({"z", z_lower(a.n, w[k]), z_upper(a.n, w[k])});
      break;
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const NCPoly &p) {
  auto out = nlohmann::ordered_json::array();
  for (const auto &[w, c] : p.sorted_terms())
    out.push_back({{"word", to_json(p.alphabet(), w)}, {"coeff", to_json(c)}});
  return out;
}

nlohmann::ordered_json to_json(const TruncSeries &s) {
  auto out = nlohmann::ordered_json::array();
  for (const auto &c : s.coefficients())
    out.push_back(to_json(c));
  return out;
}

} // namespace qmm
