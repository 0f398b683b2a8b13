#ifndef SCUBA_LANDSCAPE_HPP
#define SCUBA_LANDSCAPE_HPP

// NKq fitness landscapes (Newman & Engelhardt's neutral variant of Kauffman's
// NK model) with exact integer fitness.
//
// Every locus i owns a component table of 2^(K+1) integers in [0, q-1]. The
// table is indexed by the packed alleles (x_i; x_{i_1}, ..., x_{i_K}) with the
// locus' own allele in bit 0 and link j in bit j+1. The fitness of a genotype
// is the sum of the N looked-up components; the normalized value divides that
// sum by N(q-1). Neutrality is decided on the integer sum only.
//
// Generation draws, with std::mt19937_64 seeded by the landscape seed:
//   1. for random epistasis, the links of locus 0, 1, ..., N-1 in turn
//      (K partial Fisher-Yates draws over the other loci);
//   2. the tables, locus ascending then table index ascending, one
//      uniform_below(q) draw per entry.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scuba/genotype.hpp"
#include "scuba/random.hpp"

namespace scuba {

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

enum class Epistasis { adjacent, random };

inline const char* to_string(Epistasis mode) { return mode == Epistasis::adjacent ? "adjacent" : "random"; }

inline Epistasis parse_epistasis(const std::string& text) {
  if (text == "adjacent") return Epistasis::adjacent;
  if (text == "random") return Epistasis::random;
  throw InvalidParameter("unknown epistasis mode '" + text + "' (expected adjacent or random)");
}

using Total = std::int64_t;

/// Fitness as an exact integer numerator over N(q-1).
struct FitnessValue {
  Total total = 0;
  Total max_total = 1;

  double normalized() const noexcept { return static_cast<double>(total) / static_cast<double>(max_total); }

  friend bool operator==(const FitnessValue& a, const FitnessValue& b) noexcept { return a.total == b.total; }
  friend auto operator<=>(const FitnessValue& a, const FitnessValue& b) noexcept { return a.total <=> b.total; }
};

/// Number of fitness queries made by one run. Never shared between runs.
class EvalCounter {
 public:
  void tick(std::uint64_t n = 1) noexcept { count_ += n; }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_ = 0;
};

// Component tables larger than this are refused; K is effectively bounded by 22.
inline constexpr std::size_t kMaxTableSize = std::size_t{1} << 23;

class NkqLandscape {
 public:
  using Links = std::vector<std::vector<std::size_t>>;
  using Tables = std::vector<std::vector<Total>>;

  /// Builds a landscape from explicit links and tables, validating every invariant.
  NkqLandscape(std::size_t n, std::size_t k, Total q, Epistasis mode, std::uint64_t seed, Links links, Tables tables)
      : n_(n), k_(k), q_(q), mode_(mode), seed_(seed), links_(std::move(links)), tables_(std::move(tables)) {
    check_shape(n_, k_, q_);
    if (links_.size() != n_) throw InvalidParameter("links: expected one list per locus");
    if (tables_.size() != n_) throw InvalidParameter("tables: expected one table per locus");
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& li = links_[i];
      if (li.size() != k_) throw InvalidParameter("links[" + std::to_string(i) + "]: expected K entries");
      for (std::size_t a = 0; a < k_; ++a) {
        if (li[a] >= n_ || li[a] == i)
          throw InvalidParameter("links[" + std::to_string(i) + "]: entry out of range or self-link");
        for (std::size_t b = 0; b < a; ++b)
          if (li[a] == li[b]) throw InvalidParameter("links[" + std::to_string(i) + "]: duplicate entry");
      }
      if (tables_[i].size() != table_size())
        throw InvalidParameter("tables[" + std::to_string(i) + "]: expected 2^(K+1) entries");
      for (auto e : tables_[i])
        if (e < 0 || e > q_ - 1) throw InvalidParameter("tables[" + std::to_string(i) + "]: entry outside [0, q-1]");
    }
    build_dependents();
  }

  static NkqLandscape generate(std::size_t n, std::size_t k, Total q, Epistasis mode, std::uint64_t seed) {
    check_shape(n, k, q);
    Rng rng(seed);
    Links links(n);
    for (std::size_t i = 0; i < n; ++i) {
      links[i] = mode == Epistasis::adjacent ? adjacent_links(n, k, i) : random_links(rng, n, k, i);
    }
    const std::size_t size = std::size_t{1} << (k + 1);
    Tables tables(n, std::vector<Total>(size));
    for (auto& table : tables)
      for (auto& e : table) e = static_cast<Total>(uniform_below(rng, static_cast<std::uint64_t>(q)));
    return NkqLandscape(n, k, q, mode, seed, std::move(links), std::move(tables));
  }

  /// The K loci nearest to `locus` with periodic boundaries: ceil(K/2) to the
  /// left and floor(K/2) to the right, ordered i-1, i+1, i-2, i+2, ...
  static std::vector<std::size_t> adjacent_links(std::size_t n, std::size_t k, std::size_t locus) {
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t d = 1; out.size() < k; ++d) {
      out.push_back((locus + n - d % n) % n);
      if (out.size() < k) out.push_back((locus + d) % n);
    }
    return out;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  Total q() const noexcept { return q_; }
  Epistasis mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const Links& links() const noexcept { return links_; }
  const Tables& tables() const noexcept { return tables_; }
  std::size_t table_size() const noexcept { return std::size_t{1} << (k_ + 1); }
  Total max_total() const noexcept { return static_cast<Total>(n_) * (q_ - 1); }

  FitnessValue make_fitness(Total total) const noexcept { return {total, max_total()}; }

  /// Uncounted evaluation, for reporting and enumeration.
  FitnessValue fitness(const Genotype& s) const {
    require_length(s);
    Total sum = 0;
    for (std::size_t i = 0; i < n_; ++i) sum += tables_[i][index_unchecked(s, i)];
    return make_fitness(sum);
  }

  /// Uncounted fitness of s with `locus` flipped, given the exact total of s.
  FitnessValue flip_fitness(const Genotype& s, Total total, std::size_t locus) const {
    for (const auto& [dep, bit] : dependents_[locus]) {
      const std::size_t idx = index_unchecked(s, dep);
      total += tables_[dep][idx ^ (std::size_t{1} << bit)] - tables_[dep][idx];
    }
    return make_fitness(total);
  }

  std::size_t component_index(const Genotype& s, std::size_t locus) const {
    require_length(s);
    return index_unchecked(s, locus);
  }

  /// Loci whose component reads `locus`, with the bit position it occupies there.
  const std::vector<std::pair<std::size_t, unsigned>>& dependents(std::size_t locus) const { return dependents_[locus]; }

  friend bool operator==(const NkqLandscape& a, const NkqLandscape& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.q_ == b.q_ && a.mode_ == b.mode_ && a.seed_ == b.seed_ &&
           a.links_ == b.links_ && a.tables_ == b.tables_;
  }

 private:
  static void check_shape(std::size_t n, std::size_t k, Total q) {
    if (n < 1) throw InvalidParameter("n must be at least 1");
    if (k >= n) throw InvalidParameter("k must satisfy 0 <= k <= n-1");
    if (q < 2) throw InvalidParameter("q must be at least 2");
    if (k + 1 >= std::numeric_limits<std::size_t>::digits || (std::size_t{1} << (k + 1)) > kMaxTableSize)
      throw InvalidParameter("k too large: component tables would exceed 2^23 entries");
  }

  template <class Urbg>
  static std::vector<std::size_t> random_links(Urbg& rng, std::size_t n, std::size_t k, std::size_t locus) {
    std::vector<std::size_t> pool;
    pool.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != locus) pool.push_back(j);
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t pick = a + uniform_below(rng, pool.size() - a);
      std::swap(pool[a], pool[pick]);
    }
    pool.resize(k);
    return pool;
  }

  void require_length(const Genotype& s) const {
    if (s.size() != n_)
      throw std::invalid_argument("genotype length " + std::to_string(s.size()) + " does not match N=" +
                                  std::to_string(n_));
  }

  std::size_t index_unchecked(const Genotype& s, std::size_t locus) const noexcept {
    std::size_t idx = s[locus] ? 1 : 0;
    const auto& li = links_[locus];
    for (std::size_t j = 0; j < li.size(); ++j)
      if (s[li[j]]) idx |= std::size_t{1} << (j + 1);
    return idx;
  }

  void build_dependents() {
    dependents_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) {
      dependents_[i].emplace_back(i, 0u);
      for (std::size_t j = 0; j < k_; ++j) dependents_[links_[i][j]].emplace_back(i, static_cast<unsigned>(j + 1));
    }
  }

  std::size_t n_;
  std::size_t k_;
  Total q_;
  Epistasis mode_;
  std::uint64_t seed_;
  Links links_;
  Tables tables_;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> dependents_;
};

/// Counted full evaluation.
inline FitnessValue evaluate(const NkqLandscape& landscape, const Genotype& s, EvalCounter& counter) {
  auto f = landscape.fitness(s);
  counter.tick();
  return f;
}

/// Counted one-bit incremental evaluation. `total` must be the exact total of s.
inline FitnessValue delta_evaluate(const NkqLandscape& landscape, const Genotype& s, Total total, std::size_t locus,
                                   EvalCounter& counter) {
  auto f = landscape.flip_fitness(s, total, locus);
  counter.tick();
  return f;
}

// ---------------------------------------------------------------------------
// Text format
//
//   nkq-landscape
//   format-version 1
//   n <N>
//   k <K>
//   q <q>
//   mode adjacent|random
//   seed <u64>
//   <locus> <K link indices> <2^(K+1) table entries>      (N lines, locus order)
//
// Blank lines and lines starting with '#' are ignored.

inline constexpr int kFormatVersion = 1;

inline void serialize(const NkqLandscape& l, std::ostream& out) {
  out << "nkq-landscape\n"
      << "format-version " << kFormatVersion << '\n'
      << "n " << l.n() << '\n'
      << "k " << l.k() << '\n'
      << "q " << l.q() << '\n'
      << "mode " << to_string(l.mode()) << '\n'
      << "seed " << l.seed() << '\n';
  for (std::size_t i = 0; i < l.n(); ++i) {
    out << i;
    for (auto j : l.links()[i]) out << ' ' << j;
    for (auto e : l.tables()[i]) out << ' ' << e;
    out << '\n';
  }
}

inline std::string serialize(const NkqLandscape& l) {
  std::ostringstream os;
  serialize(l, os);
  return os.str();
}

namespace detail {

inline std::uint64_t parse_unsigned(const std::string& token, std::size_t line, const std::string& field) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, field, "expected a non-negative integer, got '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::out_of_range&) {
    throw ParseError(line, field, "integer out of range: '" + token + "'");
  }
}

}  // namespace detail

inline NkqLandscape deserialize(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (raw.empty() || raw.front() == '#') continue;
      out = raw;
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line) || line != "nkq-landscape") throw ParseError(line_no, "magic", "expected 'nkq-landscape'");

  auto header = [&](const std::string& key) {
    std::string l;
    if (!next_line(l)) throw ParseError(line_no + 1, key, "unexpected end of document");
    std::istringstream is(l);
    std::string got, value, extra;
    is >> got >> value;
    if (got != key) throw ParseError(line_no, key, "expected key '" + key + "', got '" + got + "'");
    if (value.empty()) throw ParseError(line_no, key, "missing value");
    if (is >> extra) throw ParseError(line_no, key, "trailing token '" + extra + "'");
    return value;
  };

  const auto version = detail::parse_unsigned(header("format-version"), line_no, "format-version");
  if (version != kFormatVersion)
    throw ParseError(line_no, "format-version", "unsupported version " + std::to_string(version));
  const auto n = detail::parse_unsigned(header("n"), line_no, "n");
  if (n < 1) throw ParseError(line_no, "n", "must be at least 1");
  const auto k = detail::parse_unsigned(header("k"), line_no, "k");
  if (k >= n) throw ParseError(line_no, "k", "must satisfy k <= n-1");
  if (k + 1 >= 64 || (std::uint64_t{1} << (k + 1)) > kMaxTableSize) throw ParseError(line_no, "k", "too large");
  const auto q = detail::parse_unsigned(header("q"), line_no, "q");
  if (q < 2 || q > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
    throw ParseError(line_no, "q", "must be in [2, 2^31-1]");
  Epistasis mode;
  const auto mode_text = header("mode");
  try {
    mode = parse_epistasis(mode_text);
  } catch (const InvalidParameter& e) {
    throw ParseError(line_no, "mode", e.what());
  }
  const auto seed = detail::parse_unsigned(header("seed"), line_no, "seed");

  const std::size_t table_size = std::size_t{1} << (k + 1);
  NkqLandscape::Links links(n);
  NkqLandscape::Tables tables(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line(line)) throw ParseError(line_no + 1, "locus " + std::to_string(i), "missing locus line");
    std::istringstream is(line);
    std::vector<std::string> tok;
    for (std::string t; is >> t;) tok.push_back(t);
    const std::string where = "locus " + std::to_string(i);
    if (tok.size() != 1 + k + table_size)
      throw ParseError(line_no, where,
                       "expected " + std::to_string(1 + k + table_size) + " fields (index, " + std::to_string(k) +
                           " links, " + std::to_string(table_size) + " table entries), got " +
                           std::to_string(tok.size()));
    if (detail::parse_unsigned(tok[0], line_no, where + " index") != i)
      throw ParseError(line_no, where + " index", "loci must appear in order");
    for (std::size_t j = 0; j < k; ++j) {
      const auto link = detail::parse_unsigned(tok[1 + j], line_no, where + " link " + std::to_string(j));
      if (link >= n || link == i)
        throw ParseError(line_no, where + " link " + std::to_string(j), "link out of range or self-link");
      for (auto prev : links[i])
        if (prev == link) throw ParseError(line_no, where + " link " + std::to_string(j), "duplicate link");
      links[i].push_back(static_cast<std::size_t>(link));
    }
    for (std::size_t e = 0; e < table_size; ++e) {
      const std::string field = where + " entry " + std::to_string(e);
      const auto v = detail::parse_unsigned(tok[1 + k + e], line_no, field);
      if (v > q - 1) throw ParseError(line_no, field, "entry " + std::to_string(v) + " outside [0, q-1]");
      tables[i].push_back(static_cast<Total>(v));
    }
  }
  if (next_line(line)) throw ParseError(line_no, "trailer", "unexpected content after the last locus");
  return NkqLandscape(n, k, static_cast<Total>(q), mode, seed, std::move(links), std::move(tables));
}

inline NkqLandscape deserialize(const std::string& document) {
  std::istringstream is(document);
  return deserialize(is);
}

}  // namespace scuba

#endif  // SCUBA_LANDSCAPE_HPP
