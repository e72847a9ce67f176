#include "qmm/param_ring.hpp"

#include <algorithm>
#include <sstream>

namespace qmm {

namespace {

bool is_laurent_kind(ParamKind k) {
  return k == ParamKind::Multi || k == ParamKind::Single;
}

const char *kind_name(ParamKind k) {
  switch (k) {
  case ParamKind::Constant:
    return "constant";
  case ParamKind::Multi:
    return "multi";
  case ParamKind::Single:
    return "single";
  case ParamKind::Numeric:
    return "numeric";
  }
  return "?";
}

mpq_class rational_pow(const mpq_class &base, int e) {
  if (e == 0)
    return 1;
  mpq_class b = base;
  if (e < 0) {
    if (b == 0)
      throw UsageError("zero raised to a negative power");
    b = 1 / b;
    e = -e;
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

} // namespace

// ---------------------------------------------------------------- ParamMode

int pair_index(int n, int i, int j) {
  if (i < 1 || j > n || i >= j)
    throw UsageError("parameter index q" + std::to_string(i) +
                     std::to_string(j) + " out of range for n=" +
                     std::to_string(n));
  // slots before row i: sum_{a<i} (n - a)
  return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

ParamMode ParamMode::multi(int n) {
  if (n < 1)
    throw UsageError("multiparameter mode needs n >= 1");
  return ParamMode(ParamKind::Multi, n);
}

ParamMode ParamMode::single() { return ParamMode(ParamKind::Single, 0); }

ParamMode ParamMode::numeric(int n, std::vector<mpq_class> values) {
  if (n < 1)
    throw UsageError("numeric mode needs n >= 1");
  if (static_cast<int>(values.size()) != pair_count(n))
    throw UsageError("numeric mode needs " + std::to_string(pair_count(n)) +
                     " parameter values, got " + std::to_string(values.size()));
  for (const auto &v : values)
    if (v == 0)
      throw UsageError("parameters q_ij must be nonzero");
  ParamMode m(ParamKind::Numeric, n);
  m.values_ = std::make_shared<const std::vector<mpq_class>>(std::move(values));
  return m;
}

ParamMode ParamMode::numeric_ones(int n) {
  return numeric(n, std::vector<mpq_class>(pair_count(n), mpq_class(1)));
}

int ParamMode::num_vars() const noexcept {
  switch (kind_) {
  case ParamKind::Multi:
    return pair_count(n_);
  case ParamKind::Single:
    return 1;
  default:
    return 0;
  }
}

int ParamMode::var_index(int i, int j) const {
  if (kind_ == ParamKind::Single)
    return 0;
  return pair_index(n_, i, j);
}

std::pair<int, int> ParamMode::var_pair(int v) const {
  for (int i = 1; i < n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (pair_index(n_, i, j) == v)
        return {i, j};
  throw UsageError("no parameter slot " + std::to_string(v));
}

std::string ParamMode::var_name(int v) const {
  if (kind_ == ParamKind::Single)
    return "q";
  auto [i, j] = var_pair(v);
  if (n_ <= 9)
    return "q" + std::to_string(i) + std::to_string(j);
  return "q" + std::to_string(i) + "," + std::to_string(j);
}

const std::vector<mpq_class> &ParamMode::values() const {
  if (!values_)
    throw UsageError("mode " + name() + " carries no numeric values");
  return *values_;
}

std::string ParamMode::name() const { return kind_name(kind_); }

bool ParamMode::operator==(const ParamMode &o) const {
  if (kind_ != o.kind_ || n_ != o.n_)
    return false;
  if (kind_ == ParamKind::Numeric)
    return *values_ == *o.values_;
  return true;
}

// -------------------------------------------------------------- ParamScalar

ParamScalar::ParamScalar(long c) {
  if (c != 0)
    terms_.push_back({{}, mpz_class(c)});
}

ParamScalar::ParamScalar(const mpz_class &c) {
  if (c != 0)
    terms_.push_back({{}, c});
}

ParamScalar ParamScalar::zero(const ParamMode &mode) {
  ParamScalar s;
  if (mode.kind() == ParamKind::Numeric) {
    s.kind_ = ParamKind::Numeric;
    s.value_ = 0;
  } else {
    s.kind_ = mode.kind();
    s.nvars_ = mode.num_vars();
  }
  return s;
}

ParamScalar ParamScalar::one(const ParamMode &mode) {
  ParamScalar s = zero(mode);
  if (s.kind_ == ParamKind::Numeric)
    s.value_ = 1;
  else
    s.terms_.push_back({std::vector<int>(s.nvars_, 0), mpz_class(1)});
  return s;
}

ParamScalar ParamScalar::q(const ParamMode &mode, int i, int j, int e) {
  if (i == j || e == 0)
    return one(mode);
  if (i > j) {
    std::swap(i, j);
    e = -e;
  }
  const int n = mode.kind() == ParamKind::Single ? j : mode.n();
  if (i < 1 || j > n)
    throw UsageError("parameter q" + std::to_string(i) + std::to_string(j) +
                     " out of range");
  ParamScalar s = zero(mode);
  if (mode.kind() == ParamKind::Numeric) {
    s.value_ = rational_pow(mode.values()[mode.var_index(i, j)], e);
    return s;
  }
  std::vector<int> ex(s.nvars_, 0);
  ex[mode.var_index(i, j)] = e;
  s.terms_.push_back({std::move(ex), mpz_class(1)});
  return s;
}

ParamScalar ParamScalar::monomial(const ParamMode &mode,
                                  std::vector<int> exponents,
                                  const mpz_class &coeff) {
  if (!mode.is_laurent())
    throw UsageError("monomial() needs a Laurent mode");
  if (static_cast<int>(exponents.size()) != mode.num_vars())
    throw UsageError("exponent vector has wrong length");
  ParamScalar s = zero(mode);
  if (coeff != 0)
    s.terms_.push_back({std::move(exponents), coeff});
  return s;
}

ParamScalar ParamScalar::rational(const mpq_class &value) {
  ParamScalar s;
  s.kind_ = ParamKind::Numeric;
  s.value_ = value;
  return s;
}

const mpq_class &ParamScalar::numeric_value() const {
  if (kind_ != ParamKind::Numeric)
    throw UsageError("not a numeric scalar");
  return value_;
}

bool ParamScalar::is_zero() const noexcept {
  if (kind_ == ParamKind::Numeric)
    return value_ == 0;
  return terms_.empty();
}

bool ParamScalar::is_one() const {
  if (kind_ == ParamKind::Numeric)
    return value_ == 1;
  if (terms_.size() != 1 || terms_[0].coeff != 1)
    return false;
  return std::all_of(terms_[0].exponents.begin(), terms_[0].exponents.end(),
                     [](int e) { return e == 0; });
}

bool ParamScalar::is_unit() const {
  if (kind_ == ParamKind::Numeric)
    return value_ != 0;
  return terms_.size() == 1 && abs(terms_[0].coeff) == 1;
}

ParamScalar ParamScalar::inverse() const {
  if (!is_unit())
    throw UsageError("scalar " + to_string() + " is not invertible");
  ParamScalar r = *this;
  if (kind_ == ParamKind::Numeric) {
    r.value_ = 1 / value_;
    return r;
  }
  for (int &e : r.terms_[0].exponents)
    e = -e;
  return r;
}

ParamScalar ParamScalar::pow(int e) const {
  if (e < 0)
    return inverse().pow(-e);
  ParamScalar result = 1;
  result.promote_to(*this);
  ParamScalar base = *this;
  while (e > 0) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e > 0)
      base *= base;
  }
  return result;
}

void ParamScalar::promote_to(const ParamScalar &other) {
  if (kind_ != ParamKind::Constant || other.kind_ == ParamKind::Constant)
    return;
  if (other.kind_ == ParamKind::Numeric) {
    value_ = terms_.empty() ? mpq_class(0) : mpq_class(terms_[0].coeff);
    terms_.clear();
  } else {
    for (auto &t : terms_)
      t.exponents.assign(other.nvars_, 0);
    nvars_ = other.nvars_;
  }
  kind_ = other.kind_;
}

namespace {

void check_compatible(const ParamScalar &a, const ParamScalar &b) {
  if (a.kind() == ParamKind::Constant || b.kind() == ParamKind::Constant)
    return;
  if (a.kind() != b.kind() || a.num_vars() != b.num_vars())
    throw UsageError(std::string("parameter mode mismatch: ") +
                     kind_name(a.kind()) + " vs " + kind_name(b.kind()));
}

bool exps_less(const std::vector<int> &a, const std::vector<int> &b) {
  return a < b;
}

} // namespace

void ParamScalar::canonicalize() {
  if (kind_ == ParamKind::Numeric)
    return;
  std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) {
    return exps_less(a.exponents, b.exponents);
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    mpz_class c = terms_[i].coeff;
    while (j < terms_.size() && terms_[j].exponents == terms_[i].exponents)
      c += terms_[j++].coeff;
    if (c != 0) {
      if (out != i)
        terms_[out].exponents = std::move(terms_[i].exponents);
      terms_[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r = *this;
  if (kind_ == ParamKind::Numeric)
    r.value_ = -value_;
  else
    for (auto &t : r.terms_)
      t.coeff = -t.coeff;
  return r;
}

ParamScalar &ParamScalar::operator+=(const ParamScalar &o) {
  check_compatible(*this, o);
  promote_to(o);
  ParamScalar other = o;
  other.promote_to(*this);
  if (kind_ == ParamKind::Numeric) {
    value_ += other.value_;
    return *this;
  }
  // merge two sorted term lists
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() ||
        (i < terms_.size() &&
         exps_less(terms_[i].exponents, other.terms_[j].exponents))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() ||
               exps_less(other.terms_[j].exponents, terms_[i].exponents)) {
      merged.push_back(std::move(other.terms_[j++]));
    } else {
      mpz_class c = terms_[i].coeff + other.terms_[j].coeff;
      if (c != 0)
        merged.push_back({std::move(terms_[i].exponents), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ParamScalar &ParamScalar::operator-=(const ParamScalar &o) {
  return *this += -o;
}

ParamScalar operator*(const ParamScalar &a, const ParamScalar &b) {
  check_compatible(a, b);
  ParamScalar x = a, y = b;
  x.promote_to(b);
  y.promote_to(a);
  ParamScalar r;
  r.kind_ = x.kind_;
  r.nvars_ = x.nvars_;
  if (r.kind_ == ParamKind::Numeric) {
    r.value_ = x.value_ * y.value_;
    return r;
  }
  r.terms_.reserve(x.terms_.size() * y.terms_.size());
  for (const auto &s : x.terms_)
    for (const auto &t : y.terms_) {
      ParamScalar::Term p{s.exponents, s.coeff * t.coeff};
      for (std::size_t v = 0; v < p.exponents.size(); ++v)
        p.exponents[v] += t.exponents[v];
      r.terms_.push_back(std::move(p));
    }
  // a monomial times a canonical list stays sorted and zero-free
  if (x.terms_.size() > 1 && y.terms_.size() > 1)
    r.canonicalize();
  return r;
}

ParamScalar &ParamScalar::operator*=(const ParamScalar &o) {
  *this = *this * o;
  return *this;
}

ParamScalar scalar_mul(const ParamScalar &a, const ParamScalar &b) {
  return a * b;
}

bool ParamScalar::operator==(const ParamScalar &o) const {
  ParamScalar d = *this - o;
  return d.is_zero();
}

void ParamScalar::divide_exact(const mpz_class &d) {
  if (kind_ == ParamKind::Numeric) {
    value_ /= d;
    return;
  }
  for (auto &t : terms_)
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
}

void ParamScalar::shift_exponents(std::span<const int> shift) {
  if (!is_laurent_kind(kind_))
    return;
  for (auto &t : terms_)
    for (std::size_t v = 0; v < t.exponents.size(); ++v)
      t.exponents[v] += shift[v];
}

namespace {

std::string monomial_string(const std::vector<int> &ex,
                            const std::vector<std::string> &names) {
  std::string out;
  for (std::size_t v = 0; v < ex.size(); ++v) {
    if (ex[v] == 0)
      continue;
    if (!out.empty())
      out += "·";
    out += names[v];
    if (ex[v] != 1)
      out += "^" + std::to_string(ex[v]);
  }
  return out;
}

} // namespace

std::string ParamScalar::to_string(const ParamMode &mode) const {
  if (kind_ == ParamKind::Numeric)
    return value_.get_str();
  if (terms_.empty())
    return "0";
  std::vector<std::string> names(nvars_);
  for (int v = 0; v < nvars_; ++v)
    names[v] = (kind_ == ParamKind::Single || mode.kind() != kind_)
                   ? (kind_ == ParamKind::Single ? "q"
                                                 : "v" + std::to_string(v))
                   : mode.var_name(v);
  std::string out;
  bool first = true;
  for (const auto &t : terms_) {
    std::string mono = monomial_string(t.exponents, names);
    mpz_class c = t.coeff;
    if (!first)
      out += c < 0 ? " − " : " + ";
    else if (c < 0)
      out += "−";
    c = abs(c);
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "·" + mono;
    first = false;
  }
  return out;
}

std::string ParamScalar::to_string() const {
  if (kind_ == ParamKind::Multi) {
    // recover n from the slot count
    int n = 1;
    while (pair_count(n) < nvars_)
      ++n;
    return to_string(ParamMode::multi(n));
  }
  return to_string(ParamMode::single());
}

mpq_class specialize(const ParamScalar &a, const Assignment &assignment) {
  for (const auto &[v, value] : assignment)
    if (value == 0)
      throw UsageError("specialization values must be nonzero");
  if (a.kind() == ParamKind::Numeric)
    return a.numeric_value();
  mpq_class total = 0;
  for (const auto &t : a.terms()) {
    mpq_class term = t.coeff;
    for (std::size_t v = 0; v < t.exponents.size(); ++v) {
      if (t.exponents[v] == 0)
        continue;
      auto it = assignment.find(static_cast<int>(v));
      if (it == assignment.end())
        throw UsageError("specialization is missing variable slot " +
                         std::to_string(v));
      term *= rational_pow(it->second, t.exponents[v]);
    }
    total += term;
  }
  return total;
}

mpq_class evaluate(const ParamScalar &a, std::span<const mpq_class> values) {
  if (a.kind() == ParamKind::Numeric)
    return a.numeric_value();
  mpq_class total = 0;
  for (const auto &t : a.terms()) {
    mpq_class term = t.coeff;
    for (std::size_t v = 0; v < t.exponents.size(); ++v)
      if (t.exponents[v] != 0) {
        if (v >= values.size())
          throw UsageError("specialization is missing variable slot " +
                           std::to_string(v));
        term *= rational_pow(values[v], t.exponents[v]);
      }
    total += term;
  }
  return total;
}

ParamScalar to_single(const ParamScalar &a) {
  if (a.kind() == ParamKind::Constant)
    return a;
  if (a.kind() != ParamKind::Multi)
    throw UsageError("to_single expects a multiparameter scalar");
  ParamScalar r = ParamScalar::zero(ParamMode::single());
  for (const auto &t : a.terms()) {
    int total = 0;
    for (int e : t.exponents)
      total += e;
    r += ParamScalar::monomial(ParamMode::single(), {total}, t.coeff);
  }
  return r;
}

nlohmann::ordered_json to_json(const ParamScalar &a) {
  auto out = nlohmann::ordered_json::array();
  if (a.kind() == ParamKind::Numeric) {
    if (!a.is_zero())
      out.push_back({{"exponents", nlohmann::ordered_json::array()},
                     {"coeff", a.numeric_value().get_str()}});
    return out;
  }
  for (const auto &t : a.terms())
    out.push_back({{"exponents", t.exponents}, {"coeff", t.coeff.get_str()}});
  return out;
}

} // namespace qmm
