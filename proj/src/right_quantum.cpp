#include "qmm/right_quantum.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>

namespace qmm {

// --------------------------------------------------------------- relations

std::size_t RelationSet::column_count() const {
  return static_cast<std::size_t>(
      std::count_if(relations.begin(), relations.end(), [](const Relation &r) {
        return r.kind == RelationKind::Column;
      }));
}

std::size_t RelationSet::cross_count() const {
  return relations.size() - column_count();
}

std::vector<NCPoly> RelationSet::generators() const {
  std::vector<NCPoly> out;
  out.reserve(relations.size());
  for (const auto &r : relations)
    out.push_back(r.element);
  return out;
}

RelationSet build_relations(int n, const ParamMode &mode) {
  if (n < 1)
    throw UsageError("n must be at least 1");
  RelationSet set;
  set.n = n;
  set.mode = mode;
  const Alphabet za = Alphabet::z(n);
  auto q = [&](int i, int j) { return ParamScalar::q(mode, i, j); };
  for (int l = 1; l <= n; ++l)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        NCPoly r = NCPoly::monomial(za, mode, Word::z(n, {{j, l}, {i, l}}));
        r.add_term(Word::z(n, {{i, l}, {j, l}}), -q(i, j));
        set.relations.push_back({RelationKind::Column, i, j, l, l, std::move(r)});
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          NCPoly r(za, mode);
          r.add_term(Word::z(n, {{i, k}, {j, l}}), q(i, j));
          r.add_term(Word::z(n, {{j, l}, {i, k}}), -q(k, l));
          r.add_term(Word::z(n, {{j, k}, {i, l}}), -1L);
          r.add_term(Word::z(n, {{i, l}, {j, k}}), q(k, l) * q(i, j));
          set.relations.push_back({RelationKind::Cross, i, j, k, l, std::move(r)});
        }
  return set;
}

ColumnRewrite column_normal_form(int n, const Word &w) {
  std::string codes = w.codes();
  std::vector<int> swaps(pair_count(n), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < codes.size(); ++k) {
      const auto a = static_cast<std::uint8_t>(codes[k]);
      const auto b = static_cast<std::uint8_t>(codes[k + 1]);
      if (z_upper(n, a) == z_upper(n, b) && z_lower(n, a) > z_lower(n, b)) {
        std::swap(codes[k], codes[k + 1]);
        ++swaps[pair_index(n, z_lower(n, b), z_lower(n, a))];
        changed = true;
      }
    }
  }
  return {Word(std::move(codes)), std::move(swaps)};
}

bool is_column_normal(int n, const Word &w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (z_upper(n, w[k]) == z_upper(n, w[k + 1]) &&
        z_lower(n, w[k]) > z_lower(n, w[k + 1]))
      return false;
  return true;
}

std::uint64_t word_index(int alphabet_size, const Word &w) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < w.size(); ++k)
    idx = idx * static_cast<std::uint64_t>(alphabet_size) + w[k];
  return idx;
}

Word word_at(int alphabet_size, int degree, std::uint64_t index) {
  std::string codes(static_cast<std::size_t>(degree), '\0');
  for (int k = degree - 1; k >= 0; --k) {
    codes[k] = static_cast<char>(index % alphabet_size);
    index /= alphabet_size;
  }
  return Word(std::move(codes));
}

// ------------------------------------------------------- GradedIdealBasis

namespace {

std::uint64_t checked_power(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > (std::uint64_t{1} << 40) / std::max<std::uint64_t>(base, 1))
      throw UsageError("degree too large for the membership oracle");
    r *= base;
  }
  return r;
}

std::vector<std::string> value_strings(const std::vector<mpq_class> &values) {
  std::vector<std::string> out;
  for (const auto &v : values)
    out.push_back(v.get_str());
  return out;
}

template <class T>
SparseVec<T> collect(std::vector<std::pair<std::uint32_t, T>> entries,
                     bool (*is_zero)(const T &)) {
  std::sort(entries.begin(), entries.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  SparseVec<T> out;
  for (auto &e : entries) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else {
      if (!out.empty() && is_zero(out.back().second))
        out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && is_zero(out.back().second))
    out.pop_back();
  return out;
}

// The (u, r, v) spanning words of the degree-d ideal component, in the
// canonical order: u outermost, then the relation, then v.
template <class F>
void for_each_spanning_product(const RelationSet &rels, int degree,
                               bool column_rewrite, F &&emit) {
  const int n = rels.n;
  const int s = n * n;
  for (int left = 0; left <= degree - 2; ++left)
    for_each_word(s, left, [&](const Word &u) {
      if (column_rewrite && !is_column_normal(n, u))
        return;
      for (const auto &r : rels.relations) {
        if (column_rewrite && r.kind == RelationKind::Column)
          continue;
        for_each_word(s, degree - 2 - left, [&](const Word &v) {
          if (column_rewrite && !is_column_normal(n, v))
            return;
          emit(u, r.element, v);
        });
      }
    });
}

} // namespace

std::string GradedIdealBasis::Key::file_stem() const {
  std::string kind_name = kind == ParamKind::Multi    ? "multi"
                          : kind == ParamKind::Single ? "single"
                                                      : "numeric";
  std::string stem = "gib-v1-n" + std::to_string(n) + "-d" +
                     std::to_string(degree) + "-" + kind_name +
                     (exact ? "-exact" : "-spec") + "-cr" +
                     (column_rewrite ? "1" : "0");
  for (const auto &v : values) {
    std::string safe = v;
    std::replace(safe.begin(), safe.end(), '/', 'o');
    std::replace(safe.begin(), safe.end(), '-', 'm');
    stem += "_" + safe;
  }
  return stem;
}

mpq_class GradedIdealBasis::rewrite_factor(const std::vector<int> &swaps) const {
  mpq_class f = 1;
  for (std::size_t slot = 0; slot < swaps.size(); ++slot) {
    if (swaps[slot] == 0)
      continue;
    const mpq_class &base = mode_.kind() == ParamKind::Numeric
                                ? mode_.values()[slot]
                            : mode_.kind() == ParamKind::Single ? values_[0]
                                                                : values_[slot];
    for (int k = 0; k < swaps[slot]; ++k)
      f *= base;
  }
  return f;
}

std::shared_ptr<const GradedIdealBasis>
GradedIdealBasis::build_specialized(const RelationSet &rels, int degree,
                                    std::vector<mpq_class> values,
                                    bool column_rewrite) {
  if (static_cast<int>(values.size()) != rels.mode.num_vars())
    throw UsageError("specialization needs one value per parameter slot");
  for (const auto &v : values)
    if (v == 0)
      throw UsageError("specialization values must be nonzero");
  std::shared_ptr<GradedIdealBasis> b(new GradedIdealBasis());
  b->n_ = rels.n;
  b->mode_ = rels.mode;
  b->values_ = std::move(values);
  b->key_ = {rels.n,         rels.mode.kind(), degree, false,
             column_rewrite, value_strings(b->values_)};
  if (rels.mode.kind() == ParamKind::Numeric)
    b->key_.values = value_strings(rels.mode.values());
  b->ambient_ = checked_power(static_cast<std::uint64_t>(rels.n) * rels.n,
                              std::max(degree, 0));
  RationalEchelon echelon(b->ambient_);

  // specialize the generators once
  std::vector<std::vector<std::pair<Word, mpq_class>>> spec;
  for (const auto &r : rels.relations) {
    std::vector<std::pair<Word, mpq_class>> terms;
    for (const auto &[w, c] : r.element.sorted_terms())
      terms.emplace_back(w, evaluate(c, b->values_));
    spec.push_back(std::move(terms));
  }
  std::map<const NCPoly *, std::size_t> index_of;
  for (std::size_t k = 0; k < rels.relations.size(); ++k)
    index_of[&rels.relations[k].element] = k;

  const int s = rels.n * rels.n;
  for_each_spanning_product(
      rels, degree, column_rewrite,
      [&](const Word &u, const NCPoly &r, const Word &v) {
        std::vector<std::pair<std::uint32_t, mpq_class>> entries;
        for (const auto &[w, c] : spec[index_of.at(&r)]) {
          Word full = u + w + v;
          mpq_class coeff = c;
          if (column_rewrite) {
            ColumnRewrite cr = column_normal_form(rels.n, full);
            coeff *= b->rewrite_factor(cr.swaps);
            full = std::move(cr.word);
          }
          entries.emplace_back(static_cast<std::uint32_t>(word_index(s, full)),
                               std::move(coeff));
        }
        ++b->spanning_rows_;
        echelon.insert(collect<mpq_class>(std::move(entries),
                                          &RationalPolicy::is_zero));
      });
  echelon.make_reduced();
  b->echelon_ = std::move(echelon);
  return b;
}

std::shared_ptr<const GradedIdealBasis>
GradedIdealBasis::build_exact(const RelationSet &rels, int degree,
                              bool column_rewrite) {
  if (!rels.mode.is_laurent())
    throw UsageError("exact elimination needs a Laurent parameter mode");
  std::shared_ptr<GradedIdealBasis> b(new GradedIdealBasis());
  b->n_ = rels.n;
  b->mode_ = rels.mode;
  b->key_ = {rels.n, rels.mode.kind(), degree, true, column_rewrite, {}};
  b->ambient_ = checked_power(static_cast<std::uint64_t>(rels.n) * rels.n,
                              std::max(degree, 0));
  LaurentEchelon echelon(b->ambient_);
  const int s = rels.n * rels.n;
  for_each_spanning_product(
      rels, degree, column_rewrite,
      [&](const Word &u, const NCPoly &r, const Word &v) {
        std::vector<std::pair<std::uint32_t, ParamScalar>> entries;
        for (const auto &[w, c] : r.sorted_terms()) {
          Word full = u + w + v;
          ParamScalar coeff = c;
          if (column_rewrite) {
            ColumnRewrite cr = column_normal_form(rels.n, full);
            for (std::size_t slot = 0; slot < cr.swaps.size(); ++slot)
              if (cr.swaps[slot] != 0) {
                auto [i, j] = ParamMode::multi(rels.n).var_pair(
                    static_cast<int>(slot));
                coeff *= ParamScalar::q(rels.mode, i, j, cr.swaps[slot]);
              }
            full = std::move(cr.word);
          }
          entries.emplace_back(static_cast<std::uint32_t>(word_index(s, full)),
                               std::move(coeff));
        }
        ++b->spanning_rows_;
        echelon.insert(collect<ParamScalar>(std::move(entries),
                                            &LaurentPolicy::is_zero));
      });
  echelon.make_reduced();
  b->echelon_ = std::move(echelon);
  return b;
}

std::size_t GradedIdealBasis::rank() const {
  if (auto *r = std::get_if<RationalEchelon>(&echelon_))
    return r->rank();
  return std::get<LaurentEchelon>(echelon_).rank();
}

bool GradedIdealBasis::is_reduced() const {
  if (auto *r = std::get_if<RationalEchelon>(&echelon_))
    return r->is_reduced();
  return std::get<LaurentEchelon>(echelon_).is_reduced();
}

const RationalEchelon &GradedIdealBasis::rational() const {
  return std::get<RationalEchelon>(echelon_);
}

const LaurentEchelon &GradedIdealBasis::laurent() const {
  return std::get<LaurentEchelon>(echelon_);
}

namespace {

void check_input(const NCPoly &p, int n, int degree) {
  if (!(p.alphabet() == Alphabet::z(n)))
    throw UsageError("membership query must be over the z-alphabet of size " +
                     std::to_string(n));
  if (!p.is_homogeneous_of(degree))
    throw UsageError("membership query is not homogeneous of degree " +
                     std::to_string(degree));
}

} // namespace

SparseVec<mpq_class> GradedIdealBasis::specialized_vector(const NCPoly &p) const {
  check_input(p, n_, key_.degree);
  const int s = n_ * n_;
  std::vector<std::pair<std::uint32_t, mpq_class>> entries;
  entries.reserve(p.size());
  for (const auto &[w, c] : p.terms()) {
    mpq_class coeff = evaluate(c, values_);
    if (key_.column_rewrite) {
      ColumnRewrite cr = column_normal_form(n_, w);
      coeff *= rewrite_factor(cr.swaps);
      entries.emplace_back(static_cast<std::uint32_t>(word_index(s, cr.word)),
                           std::move(coeff));
    } else {
      entries.emplace_back(static_cast<std::uint32_t>(word_index(s, w)),
                           std::move(coeff));
    }
  }
  return collect<mpq_class>(std::move(entries), &RationalPolicy::is_zero);
}

SparseVec<ParamScalar> GradedIdealBasis::exact_vector(const NCPoly &p) const {
  check_input(p, n_, key_.degree);
  const int s = n_ * n_;
  std::vector<std::pair<std::uint32_t, ParamScalar>> entries;
  for (const auto &[w, c] : p.terms()) {
    ParamScalar coeff = c;
    Word word = w;
    if (key_.column_rewrite) {
      ColumnRewrite cr = column_normal_form(n_, w);
      for (std::size_t slot = 0; slot < cr.swaps.size(); ++slot)
        if (cr.swaps[slot] != 0) {
          auto [i, j] = ParamMode::multi(n_).var_pair(static_cast<int>(slot));
          coeff *= ParamScalar::q(mode_, i, j, cr.swaps[slot]);
        }
      word = std::move(cr.word);
    }
    entries.emplace_back(static_cast<std::uint32_t>(word_index(s, word)),
                         std::move(coeff));
  }
  return collect<ParamScalar>(std::move(entries), &LaurentPolicy::is_zero);
}

bool GradedIdealBasis::contains(const NCPoly &p) const {
  if (key_.exact)
    return laurent().in_span(exact_vector(p));
  return rational().in_span(specialized_vector(p));
}

SparseVec<mpq_class>
GradedIdealBasis::normal_form(SparseVec<mpq_class> v) const {
  return rational().normal_form(std::move(v));
}

nlohmann::ordered_json GradedIdealBasis::to_json() const {
  if (key_.exact)
    throw UsageError("only specialized bases are persisted");
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto &row : rational().rows()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto &[col, v] : row)
      r.push_back({col, v.get_str()});
    rows.push_back(std::move(r));
  }
  return {{"format", "qmm-graded-ideal-basis"},
          {"version", 1},
          {"key", key_.file_stem()},
          {"n", n_},
          {"degree", key_.degree},
          {"params", mode_.name()},
          {"values", key_.values},
          {"column_rewrite", key_.column_rewrite},
          {"spanning_rows", spanning_rows_},
          {"rows", std::move(rows)}};
}

std::shared_ptr<const GradedIdealBasis>
GradedIdealBasis::from_json(const nlohmann::ordered_json &j, const Key &expected) {
  if (j.value("format", "") != "qmm-graded-ideal-basis" ||
      j.value("version", 0) != 1 || j.value("key", "") != expected.file_stem() ||
      j.value("n", -1) != expected.n || j.value("degree", -1) != expected.degree ||
      j.value("column_rewrite", !expected.column_rewrite) !=
          expected.column_rewrite ||
      j.at("values").get<std::vector<std::string>>() != expected.values)
    return nullptr;
  std::shared_ptr<GradedIdealBasis> b(new GradedIdealBasis());
  b->n_ = expected.n;
  b->key_ = expected;
  if (expected.kind == ParamKind::Multi)
    b->mode_ = ParamMode::multi(expected.n);
  else if (expected.kind == ParamKind::Single)
    b->mode_ = ParamMode::single();
  else {
    std::vector<mpq_class> vals;
    for (const auto &v : expected.values)
      vals.emplace_back(v);
    b->mode_ = ParamMode::numeric(expected.n, vals);
  }
  if (expected.kind != ParamKind::Numeric)
    for (const auto &v : expected.values)
      b->values_.emplace_back(v);
  b->ambient_ = checked_power(static_cast<std::uint64_t>(expected.n) * expected.n,
                              expected.degree);
  b->spanning_rows_ = j.value("spanning_rows", std::size_t{0});
  RationalEchelon echelon(b->ambient_);
  for (const auto &row : j.at("rows")) {
    SparseVec<mpq_class> v;
    for (const auto &e : row)
      v.emplace_back(e.at(0).get<std::uint32_t>(),
                     mpq_class(e.at(1).get<std::string>()));
    echelon.insert(std::move(v));
  }
  if (!echelon.is_reduced())
    return nullptr;
  b->echelon_ = std::move(echelon);
  return b;
}

// ------------------------------------------------------------------ cache

namespace {

struct CacheEntry {
  std::once_flag once;
  std::shared_ptr<const GradedIdealBasis> basis;
};

std::mutex cache_mutex;
std::map<GradedIdealBasis::Key, std::shared_ptr<CacheEntry>> cache;

std::shared_ptr<CacheEntry> entry_for(const GradedIdealBasis::Key &key) {
  std::lock_guard lock(cache_mutex);
  auto &slot = cache[key];
  if (!slot)
    slot = std::make_shared<CacheEntry>();
  return slot;
}

std::shared_ptr<const GradedIdealBasis>
load_persisted(const GradedIdealBasis::Key &key) {
  const char *dir = std::getenv("QMM_CACHE_DIR");
  if (!dir || !*dir)
    return nullptr;
  std::filesystem::path path =
      std::filesystem::path(dir) / (key.file_stem() + ".json");
  std::ifstream in(path);
  if (!in)
    return nullptr;
  try {
    auto j = nlohmann::ordered_json::parse(in);
    return GradedIdealBasis::from_json(j, key);
  } catch (const std::exception &) {
    return nullptr;
  }
}

void persist(const GradedIdealBasis &b) {
  const char *dir = std::getenv("QMM_CACHE_DIR");
  if (!dir || !*dir)
    return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path path =
      std::filesystem::path(dir) / (b.key().file_stem() + ".json");
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out)
      return;
    out << b.to_json().dump();
  }
  std::filesystem::rename(tmp, path, ec);
}

} // namespace

std::shared_ptr<const GradedIdealBasis>
cached_specialized_basis(const RelationSet &rels, int degree,
                         const std::vector<mpq_class> &values,
                         bool column_rewrite) {
  GradedIdealBasis::Key key{rels.n,         rels.mode.kind(),
                            degree,         false,
                            column_rewrite, value_strings(values)};
  if (rels.mode.kind() == ParamKind::Numeric)
    key.values = value_strings(rels.mode.values());
  auto entry = entry_for(key);
  std::call_once(entry->once, [&] {
    auto loaded = load_persisted(key);
    if (loaded) {
      entry->basis = std::move(loaded);
      return;
    }
    entry->basis =
        GradedIdealBasis::build_specialized(rels, degree, values, column_rewrite);
    if (degree >= 2)
      persist(*entry->basis);
  });
  return entry->basis;
}

std::shared_ptr<const GradedIdealBasis>
cached_exact_basis(const RelationSet &rels, int degree, bool column_rewrite) {
  GradedIdealBasis::Key key{rels.n, rels.mode.kind(), degree, true,
                            column_rewrite, {}};
  auto entry = entry_for(key);
  std::call_once(entry->once, [&] {
    entry->basis = GradedIdealBasis::build_exact(rels, degree, column_rewrite);
  });
  return entry->basis;
}

void clear_basis_cache() {
  std::lock_guard lock(cache_mutex);
  cache.clear();
}

// ----------------------------------------------------------------- oracle

std::vector<std::vector<mpq_class>> draw_specializations(int num_vars, int k,
                                                         std::uint64_t seed) {
  static const int primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                               43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  constexpr int kPrimes = sizeof(primes) / sizeof(primes[0]);
  if (num_vars > kPrimes)
    throw UsageError("too many parameters for distinct prime specializations");
  if (k < 1)
    throw UsageError("need at least one specialization");
  std::mt19937_64 gen(seed);
  std::vector<std::vector<mpq_class>> out;
  for (int draw = 0; draw < k; ++draw) {
    std::vector<int> pool(primes, primes + kPrimes);
    std::vector<mpq_class> values;
    for (int v = 0; v < num_vars; ++v) {
      // partial Fisher-Yates on raw generator output (portable across
      // standard libraries, unlike the distribution classes)
      const auto remaining = static_cast<std::uint64_t>(kPrimes - v);
      const auto pick = static_cast<std::size_t>(v + gen() % remaining);
      std::swap(pool[v], pool[pick]);
      values.emplace_back(pool[v]);
    }
    out.push_back(std::move(values));
  }
  return out;
}

const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::Member:
    return "member";
  case Verdict::NonMember:
    return "non-member";
  case Verdict::Inconclusive:
    return "inconclusive";
  }
  return "?";
}

IdealOracle::IdealOracle(int n, ParamMode mode, OracleOptions options)
    : n_(n), mode_(std::move(mode)), options_(options),
      relations_(build_relations(n, mode_)) {
  if (mode_.kind() == ParamKind::Numeric || options_.exact) {
    if (options_.exact && !mode_.is_laurent() &&
        mode_.kind() != ParamKind::Numeric)
      throw UsageError("exact membership needs a Laurent parameter mode");
    specializations_.emplace_back();
  } else {
    specializations_ = draw_specializations(mode_.num_vars(),
                                            options_.specializations,
                                            options_.seed);
  }
}

bool IdealOracle::is_exact() const noexcept {
  return options_.exact && mode_.is_laurent();
}

std::string IdealOracle::label() const {
  if (mode_.kind() == ParamKind::Numeric)
    return "numeric";
  if (is_exact())
    return "exact";
  return "specialized(k=" + std::to_string(specializations_.size()) +
         ",seed=" + std::to_string(options_.seed) + ")";
}

std::shared_ptr<const GradedIdealBasis>
IdealOracle::basis(int degree, std::size_t which) const {
  if (is_exact())
    return cached_exact_basis(relations_, degree, options_.column_rewrite);
  return cached_specialized_basis(relations_, degree,
                                  specializations_.at(which),
                                  options_.column_rewrite);
}

MembershipResult IdealOracle::check(const NCPoly &p) const {
  if (!(p.alphabet() == Alphabet::z(n_)))
    throw UsageError("membership query over the wrong alphabet");
  std::map<int, NCPoly> parts;
  for (const auto &[w, c] : p.terms())
    parts.try_emplace(static_cast<int>(w.size()), p.alphabet(), p.mode())
        .first->second.add_term(w, c);

  MembershipResult result;
  result.per_specialization.assign(specializations_.size(), true);
  for (const auto &[degree, part] : parts) {
    if (degree < 2) {
      // nothing below degree 2 lies in the ideal
      result.per_specialization.assign(specializations_.size(), false);
      break;
    }
    for (std::size_t s = 0; s < specializations_.size(); ++s)
      if (result.per_specialization[s] && !basis(degree, s)->contains(part))
        result.per_specialization[s] = false;
  }
  const auto yes = std::count(result.per_specialization.begin(),
                              result.per_specialization.end(), true);
  if (yes == static_cast<long>(result.per_specialization.size()))
    result.verdict = Verdict::Member;
  else if (yes == 0)
    result.verdict = Verdict::NonMember;
  else
    result.verdict = Verdict::Inconclusive;
  return result;
}

bool ideal_member(const NCPoly &p, const IdealOracle &oracle) {
  return oracle.member(p);
}

// ------------------------------------------------------------------- qdet

NCPoly qdet(const ParamMode &mode, int n, const Subset &J) {
  validate_subset(n, J);
  const int m = static_cast<int>(J.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  NCPoly out(Alphabet::z(n), mode);
  do {
    Word w;
    for (int k = 0; k < m; ++k)
      w.push_back(z_code(n, J[perm[k] - 1], J[k]));
    out.add_term(w, inversion_weight(mode, J, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

mpq_class qdet_numeric(const RationalMatrix &M, const ParamMode &numeric_mode,
                       const Subset &J) {
  const int n = static_cast<int>(M.size());
  if (numeric_mode.kind() != ParamKind::Numeric)
    throw UsageError("qdet_numeric needs a numeric parameter mode");
  validate_subset(n, J);
  const int m = static_cast<int>(J.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  mpq_class total = 0;
  do {
    mpq_class term =
        inversion_weight(numeric_mode, J, perm).numeric_value();
    for (int k = 0; k < m; ++k)
      term *= M[J[perm[k] - 1] - 1][J[k] - 1];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// ------------------------------------------------------------- TensorPoly

TensorPoly TensorPoly::tensor(const NCPoly &a, const NCPoly &b) {
  if (a.alphabet().kind != AlphabetKind::Z || !(a.alphabet() == b.alphabet()))
    throw UsageError("tensor factors must share a z-alphabet");
  TensorPoly t(a.alphabet().n, a.mode());
  for (const auto &[u, cu] : a.terms())
    for (const auto &[v, cv] : b.terms())
      t.add_term(u, v, cu * cv);
  return t;
}

void TensorPoly::add_term(const Word &l, const Word &r, const ParamScalar &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace({l, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

TensorPoly &TensorPoly::operator-=(const TensorPoly &o) {
  for (const auto &[k, c] : o.terms_)
    add_term(k.first, k.second, -c);
  return *this;
}

bool TensorPoly::operator==(const TensorPoly &o) const {
  TensorPoly d = *this;
  d -= o;
  return d.is_zero();
}

TensorPoly comultiply(const NCPoly &p) {
  if (p.alphabet().kind != AlphabetKind::Z)
    throw UsageError("comultiply expects a z-alphabet element");
  const int n = p.alphabet().n;
  TensorPoly out(n, p.mode());
  for (const auto &[w, c] : p.terms()) {
    const int d = static_cast<int>(w.size());
    for_each_word(n, d, [&](const Word &mid) {
      Word left, right;
      for (int k = 0; k < d; ++k) {
        left.push_back(z_code(n, z_lower(n, w[k]), mid[k] + 1));
        right.push_back(z_code(n, mid[k] + 1, z_upper(n, w[k])));
      }
      out.add_term(left, right, c);
    });
  }
  return out;
}

namespace {

bool counit_is_one(int n, const Word &w) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (z_lower(n, w[k]) != z_upper(n, w[k]))
      return false;
  return true;
}

} // namespace

NCPoly counit_left(const TensorPoly &t) {
  NCPoly out(Alphabet::z(t.n()), t.mode());
  for (const auto &[k, c] : t.terms())
    if (counit_is_one(t.n(), k.first))
      out.add_term(k.second, c);
  return out;
}

NCPoly counit_right(const TensorPoly &t) {
  NCPoly out(Alphabet::z(t.n()), t.mode());
  for (const auto &[k, c] : t.terms())
    if (counit_is_one(t.n(), k.second))
      out.add_term(k.first, c);
  return out;
}

// --------------------------------------------------- doubled-ideal check

namespace {

using Bidegree = std::pair<int, int>;

std::map<Bidegree, std::vector<std::pair<std::pair<Word, Word>, ParamScalar>>>
split_bidegrees(const TensorPoly &t) {
  std::map<Bidegree, std::vector<std::pair<std::pair<Word, Word>, ParamScalar>>>
      out;
  for (const auto &[k, c] : t.terms())
    out[{static_cast<int>(k.first.size()), static_cast<int>(k.second.size())}]
        .emplace_back(k, c);
  return out;
}

bool doubled_specialized(
    const IdealOracle &oracle, std::size_t s, const Bidegree &bd,
    const std::vector<std::pair<std::pair<Word, Word>, ParamScalar>> &terms) {
  const int n = oracle.n();
  auto left = oracle.basis(bd.first, s);
  auto right = oracle.basis(bd.second, s);
  const Alphabet za = Alphabet::z(n);
  const ParamMode &mode = oracle.mode();

  // group by right word, project the left factor
  std::map<Word, NCPoly> by_right;
  for (const auto &[k, c] : terms)
    by_right.try_emplace(k.second, za, mode).first->second.add_term(k.first, c);
  std::map<std::uint32_t, NCPoly> by_left_coordinate;
  const std::vector<mpq_class> &values = oracle.specializations()[s];
  for (const auto &[v, lpoly] : by_right) {
    auto nf = left->normal_form(left->specialized_vector(lpoly));
    for (const auto &[col, val] : nf) {
      // the right polynomial carries specialized coefficients as numerics
      by_left_coordinate.try_emplace(col, za, ParamMode::numeric_ones(n))
          .first->second.add_term(v, ParamScalar::rational(val));
    }
  }
  (void)values;
  for (const auto &[col, rpoly] : by_left_coordinate) {
    // rpoly has rational coefficients; map it through the right basis
    const int sz = n * n;
    std::vector<std::pair<std::uint32_t, mpq_class>> entries;
    for (const auto &[w, c] : rpoly.terms()) {
      NCPoly single = NCPoly::monomial(za, mode, w, ParamScalar::one(mode));
      for (auto &[idx, val] : right->specialized_vector(single))
        entries.emplace_back(idx, val * c.numeric_value());
    }
    (void)sz;
    SparseVec<mpq_class> vec = collect<mpq_class>(std::move(entries),
                                                  &RationalPolicy::is_zero);
    if (!right->normal_form(std::move(vec)).empty())
      return false;
  }
  return true;
}

bool doubled_exact(
    const IdealOracle &oracle, const Bidegree &bd,
    const std::vector<std::pair<std::pair<Word, Word>, ParamScalar>> &terms) {
  const int n = oracle.n();
  const int s = n * n;
  // full ideal components: the column rewrite would only span a quotient
  auto left = cached_exact_basis(oracle.relations(), bd.first, false);
  auto right = cached_exact_basis(oracle.relations(), bd.second, false);
  const std::uint64_t right_dim = right->ambient_dimension();
  const std::uint64_t left_dim = left->ambient_dimension();
  LaurentEchelon echelon(left_dim * right_dim);
  for (const auto &g : left->laurent().rows())
    for (std::uint64_t b = 0; b < right_dim; ++b) {
      SparseVec<ParamScalar> row;
      for (const auto &[col, v] : g)
        row.emplace_back(static_cast<std::uint32_t>(col * right_dim + b), v);
      echelon.insert(std::move(row));
    }
  for (std::uint64_t a = 0; a < left_dim; ++a)
    for (const auto &h : right->laurent().rows()) {
      SparseVec<ParamScalar> row;
      for (const auto &[col, v] : h)
        row.emplace_back(static_cast<std::uint32_t>(a * right_dim + col), v);
      echelon.insert(std::move(row));
    }
  std::vector<std::pair<std::uint32_t, ParamScalar>> entries;
  for (const auto &[k, c] : terms)
    entries.emplace_back(static_cast<std::uint32_t>(
                             word_index(s, k.first) * right_dim +
                             word_index(s, k.second)),
                         c);
  return echelon.in_span(
      collect<ParamScalar>(std::move(entries), &LaurentPolicy::is_zero));
}

} // namespace

Verdict doubled_ideal_member(const TensorPoly &t, const IdealOracle &oracle) {
  if (t.n() != oracle.n())
    throw UsageError("tensor element and oracle disagree on n");
  const auto parts = split_bidegrees(t);
  if (oracle.is_exact()) {
    for (const auto &[bd, terms] : parts)
      if (!doubled_exact(oracle, bd, terms))
        return Verdict::NonMember;
    return Verdict::Member;
  }
  std::size_t yes = 0;
  const std::size_t k = oracle.specializations().size();
  for (std::size_t s = 0; s < k; ++s) {
    bool ok = true;
    for (const auto &[bd, terms] : parts)
      if (!doubled_specialized(oracle, s, bd, terms)) {
        ok = false;
        break;
      }
    yes += ok ? 1 : 0;
  }
  return yes == k ? Verdict::Member
         : yes == 0 ? Verdict::NonMember
                    : Verdict::Inconclusive;
}

// ------------------------------------------------------ right-quantum test

bool is_right_quantum(const RationalMatrix &M, const ParamMode &numeric_mode) {
  const int n = static_cast<int>(M.size());
  for (const auto &row : M)
    if (static_cast<int>(row.size()) != n)
      throw UsageError("matrix must be square");
  if (numeric_mode.kind() != ParamKind::Numeric || numeric_mode.n() != n)
    throw UsageError("is_right_quantum needs a numeric mode of matching size");
  const RelationSet rels = build_relations(n, numeric_mode);
  for (const auto &r : rels.relations) {
    mpq_class total = 0;
    for (const auto &[w, c] : r.element.terms()) {
      mpq_class term = evaluate(c, {});
      for (std::size_t k = 0; k < w.size(); ++k)
        term *= M[z_lower(n, w[k]) - 1][z_upper(n, w[k]) - 1];
      total += term;
    }
    if (total != 0)
      return false;
  }
  return true;
}

bool is_right_quantum(const std::vector<std::vector<NCPoly>> &M,
                      const IdealOracle &oracle) {
  const int n = oracle.n();
  if (static_cast<int>(M.size()) != n)
    throw UsageError("matrix size does not match the oracle");
  for (const auto &r : oracle.relations().relations) {
    NCPoly total(Alphabet::z(n), oracle.mode());
    for (const auto &[w, c] : r.element.terms()) {
      NCPoly term = NCPoly::one(Alphabet::z(n), oracle.mode()) * c;
      for (std::size_t k = 0; k < w.size(); ++k)
        term = term * M[z_lower(n, w[k]) - 1][z_upper(n, w[k]) - 1];
      total += term;
    }
    if (!oracle.member(total))
      return false;
  }
  return true;
}

std::vector<std::vector<NCPoly>> generic_matrix(int n, const ParamMode &mode) {
  std::vector<std::vector<NCPoly>> M;
  for (int i = 1; i <= n; ++i) {
    std::vector<NCPoly> row;
    for (int j = 1; j <= n; ++j)
      row.push_back(NCPoly::monomial(Alphabet::z(n), mode, Word::z(n, {{i, j}})));
    M.push_back(std::move(row));
  }
  return M;
}

} // namespace qmm
