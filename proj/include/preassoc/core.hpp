// Domain types for finite carriers, words over them, finite maps, and
// tabulated variadic functions truncated at a horizon.
//
// Conventions used throughout the library:
//
// * A word is a sequence of carrier indices; the empty word is the unique
//   word of length 0 and plays the role of ε.
// * Codomain values are indices into the codomain's named values. When the
//   codomain contains ε, it is represented by the index one past the last
//   named value. For an operation codomain (carrier ∪ {ε}) this means value
//   i is letter i and value n is ε.
// * Words up to a horizon L are numbered length-then-lexicographically, so
//   every table is a flat vector indexed by that number.

#pragma once

#include <algorithm>      // for find, sort, unique
#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t
#include <optional>       // for optional
#include <span>           // for span
#include <stdexcept>      // for runtime_error
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_map>  // for unordered_map
#include <utility>        // for move
#include <vector>         // for vector

namespace preassoc {

  using letter_type = std::uint32_t;
  using value_type  = std::uint32_t;
  using word_type   = std::vector<letter_type>;

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  ////////////////////////////////////////////////////////////////////////
  // Carrier
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void validate_names(std::vector<std::string> const& names,
                               char const*                     what) {
      std::unordered_map<std::string_view, std::size_t> seen;
      for (auto const& s : names) {
        if (s.empty()) {
          throw Error(std::string(what) + ": empty symbol name");
        }
        if (s.find(',') != std::string::npos) {
          throw Error(std::string(what) + ": symbol \"" + s
                      + "\" contains ','");
        }
        if (!seen.emplace(s, 0).second) {
          throw Error(std::string(what) + ": duplicate symbol \"" + s + "\"");
        }
      }
    }
  }  // namespace detail

  // An ordered alphabet of distinct, nonempty symbol names.
  class Carrier {
   public:
    explicit Carrier(std::vector<std::string> symbols)
        : _symbols(std::move(symbols)) {
      if (_symbols.empty()) {
        throw Error("carrier: must contain at least one symbol");
      }
      detail::validate_names(_symbols, "carrier");
    }

    // The carrier {0, 1, ..., n - 1}.
    static Carrier of_size(std::size_t n) {
      std::vector<std::string> s;
      for (std::size_t i = 0; i < n; ++i) {
        s.push_back(std::to_string(i));
      }
      return Carrier(std::move(s));
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _symbols.size();
    }

    [[nodiscard]] std::vector<std::string> const& symbols() const noexcept {
      return _symbols;
    }

    [[nodiscard]] std::string const& symbol(letter_type a) const {
      return _symbols.at(a);
    }

    [[nodiscard]] std::optional<letter_type> find(std::string_view s) const {
      auto it = std::find(_symbols.cbegin(), _symbols.cend(), s);
      if (it == _symbols.cend()) {
        return std::nullopt;
      }
      return static_cast<letter_type>(it - _symbols.cbegin());
    }

    [[nodiscard]] letter_type index_of(std::string_view s) const {
      if (auto a = find(s)) {
        return *a;
      }
      throw Error("carrier: unknown symbol \"" + std::string(s) + "\"");
    }

    bool operator==(Carrier const&) const = default;

   private:
    std::vector<std::string> _symbols;
  };

  ////////////////////////////////////////////////////////////////////////
  // Codomain
  ////////////////////////////////////////////////////////////////////////

  // A finite set of named values, optionally extended by the distinguished
  // value ε. Also used as the domain of unary maps.
  class Codomain {
   public:
    Codomain(std::vector<std::string> values, bool epsilon)
        : _values(std::move(values)), _epsilon(epsilon) {
      if (_values.empty() && !_epsilon) {
        throw Error("codomain: must contain at least one value");
      }
      detail::validate_names(_values, "codomain");
    }

    // X ∪ {ε}, the codomain of variadic operations on X.
    static Codomain operations_on(Carrier const& x) {
      return Codomain(x.symbols(), true);
    }

    // X itself, as a set of values.
    static Codomain of(Carrier const& x) {
      return Codomain(x.symbols(), false);
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _values.size() + (_epsilon ? 1 : 0);
    }

    [[nodiscard]] std::vector<std::string> const& values() const noexcept {
      return _values;
    }

    [[nodiscard]] bool has_epsilon() const noexcept {
      return _epsilon;
    }

    [[nodiscard]] value_type epsilon() const {
      if (!_epsilon) {
        throw Error("codomain: does not contain ε");
      }
      return static_cast<value_type>(_values.size());
    }

    [[nodiscard]] bool is_epsilon(value_type v) const noexcept {
      return _epsilon && v == _values.size();
    }

    [[nodiscard]] bool contains(value_type v) const noexcept {
      return v < size();
    }

    // "ε" for the distinguished value, the value name otherwise.
    [[nodiscard]] std::string name(value_type v) const {
      if (is_epsilon(v)) {
        return "ε";
      }
      return _values.at(v);
    }

    [[nodiscard]] std::optional<value_type> find(std::string_view s) const {
      auto it = std::find(_values.cbegin(), _values.cend(), s);
      if (it == _values.cend()) {
        return std::nullopt;
      }
      return static_cast<value_type>(it - _values.cbegin());
    }

    // True iff this is X ∪ {ε} with the values in carrier order.
    [[nodiscard]] bool is_operation_codomain_of(Carrier const& x) const {
      return _epsilon && _values == x.symbols();
    }

    // True iff this is X (no ε) with the values in carrier order.
    [[nodiscard]] bool is_carrier(Carrier const& x) const {
      return !_epsilon && _values == x.symbols();
    }

    bool operator==(Codomain const&) const = default;

   private:
    std::vector<std::string> _values;
    bool                     _epsilon;
  };

  // The element of `to` with the same identity (name, or ε) as element `v`
  // of `from`, if any.
  inline std::optional<value_type> translate(Codomain const& from,
                                             value_type      v,
                                             Codomain const& to) {
    if (from.is_epsilon(v)) {
      return to.has_epsilon() ? std::optional(to.epsilon()) : std::nullopt;
    }
    return to.find(from.values().at(v));
  }

  ////////////////////////////////////////////////////////////////////////
  // Words
  ////////////////////////////////////////////////////////////////////////

  // Number of words over an n-letter alphabet with length in [min_len,
  // max_len].
  inline std::size_t number_of_words(std::size_t n,
                                     std::size_t min_len,
                                     std::size_t max_len) {
    std::size_t total = 0;
    std::size_t power = 1;
    for (std::size_t k = 0; k <= max_len; ++k) {
      if (k >= min_len) {
        total += power;
      }
      power *= n;
    }
    return total;
  }

  // Every word with length in [min_len, max_len], in length-then-
  // lexicographic order by carrier index.
  inline std::vector<word_type> enumerate_words(Carrier const& x,
                                                std::size_t    min_len,
                                                std::size_t    max_len) {
    if (min_len > max_len) {
      throw Error("enumerate_words: min_len exceeds max_len");
    }
    std::vector<word_type> out;
    out.reserve(number_of_words(x.size(), min_len, max_len));
    auto const n = static_cast<letter_type>(x.size());
    for (std::size_t k = min_len; k <= max_len; ++k) {
      word_type w(k, 0);
      while (true) {
        out.push_back(w);
        // odometer increment, last letter fastest
        std::size_t i = k;
        while (i > 0 && ++w[i - 1] == n) {
          w[i - 1] = 0;
          --i;
        }
        if (i == 0) {
          break;
        }
      }
    }
    return out;
  }

  inline word_type concat(std::span<letter_type const> x,
                          std::span<letter_type const> y) {
    word_type out;
    out.reserve(x.size() + y.size());
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
  }

  inline word_type concat(std::span<letter_type const> x,
                          std::span<letter_type const> y,
                          std::span<letter_type const> z) {
    word_type out;
    out.reserve(x.size() + y.size() + z.size());
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }

  inline void validate_word(Carrier const& x, std::span<letter_type const> w) {
    for (auto a : w) {
      if (a >= x.size()) {
        throw Error("word: letter " + std::to_string(a)
                    + " out of range for a carrier of size "
                    + std::to_string(x.size()));
      }
    }
  }

  // Concatenation of two words checked against a carrier.
  inline word_type concat(Carrier const&               x,
                          std::span<letter_type const> u,
                          std::span<letter_type const> v) {
    validate_word(x, u);
    validate_word(x, v);
    return concat(u, v);
  }

  // Letters joined by ","; the empty word is "".
  inline std::string to_string(Carrier const& x, std::span<letter_type const> w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ',';
      }
      out += x.symbol(w[i]);
    }
    return out;
  }

  inline word_type parse_word(Carrier const& x, std::string_view s) {
    word_type w;
    if (s.empty()) {
      return w;
    }
    std::size_t start = 0;
    while (true) {
      auto stop = s.find(',', start);
      w.push_back(x.index_of(s.substr(start, stop - start)));
      if (stop == std::string_view::npos) {
        break;
      }
      start = stop + 1;
    }
    return w;
  }

  // Bijection between words of length ≤ horizon and [0, number of words),
  // respecting the canonical order.
  class WordIndexer {
   public:
    WordIndexer(std::size_t n, std::size_t horizon)
        : _n(n), _horizon(horizon), _offset(horizon + 2, 0), _power(horizon + 1, 1) {
      for (std::size_t k = 1; k <= horizon; ++k) {
        _power[k] = _power[k - 1] * n;
      }
      for (std::size_t k = 0; k <= horizon; ++k) {
        _offset[k + 1] = _offset[k] + _power[k];
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _offset.back();
    }

    [[nodiscard]] std::size_t horizon() const noexcept {
      return _horizon;
    }

    [[nodiscard]] std::size_t offset(std::size_t arity) const {
      return _offset.at(arity);
    }

    [[nodiscard]] std::size_t count(std::size_t arity) const {
      return _power.at(arity);
    }

    [[nodiscard]] std::size_t index(std::span<letter_type const> w) const {
      if (w.size() > _horizon) {
        throw Error("word of length " + std::to_string(w.size())
                    + " exceeds horizon " + std::to_string(_horizon));
      }
      std::size_t rank = 0;
      for (auto a : w) {
        rank = rank * _n + a;
      }
      return _offset[w.size()] + rank;
    }

    [[nodiscard]] std::size_t length(std::size_t index) const {
      auto it = std::upper_bound(_offset.cbegin(), _offset.cend(), index);
      return static_cast<std::size_t>(it - _offset.cbegin()) - 1;
    }

    [[nodiscard]] word_type word(std::size_t index) const {
      auto      k    = length(index);
      auto      rank = index - _offset[k];
      word_type w(k, 0);
      for (std::size_t i = k; i > 0; --i) {
        w[i - 1] = static_cast<letter_type>(rank % _n);
        rank /= _n;
      }
      return w;
    }

    // Index of a·w, given the index of w; requires |w| < horizon.
    [[nodiscard]] std::size_t prepend(letter_type a, std::size_t index) const {
      auto k = length(index);
      return _offset[k + 1] + a * _power[k] + (index - _offset[k]);
    }

    // Index of w·a, given the index of w; requires |w| < horizon.
    [[nodiscard]] std::size_t append(std::size_t index, letter_type a) const {
      auto k = length(index);
      return _offset[k + 1] + (index - _offset[k]) * _n + a;
    }

   private:
    std::size_t              _n;
    std::size_t              _horizon;
    std::vector<std::size_t> _offset;
    std::vector<std::size_t> _power;
  };

  ////////////////////////////////////////////////////////////////////////
  // Finite maps
  ////////////////////////////////////////////////////////////////////////

  // A total map between two finite sets of named values.
  class UnaryMap {
   public:
    UnaryMap(Codomain domain, Codomain codomain, std::vector<value_type> table)
        : _domain(std::move(domain)),
          _codomain(std::move(codomain)),
          _table(std::move(table)) {
      if (_table.size() != _domain.size()) {
        throw Error("unary map: table has " + std::to_string(_table.size())
                    + " entries, domain has " + std::to_string(_domain.size()));
      }
      for (auto v : _table) {
        if (!_codomain.contains(v)) {
          throw Error("unary map: value " + std::to_string(v)
                      + " outside the codomain");
        }
      }
    }

    static UnaryMap identity(Codomain const& s) {
      std::vector<value_type> t(s.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = static_cast<value_type>(i);
      }
      return UnaryMap(s, s, std::move(t));
    }

    [[nodiscard]] value_type operator()(value_type v) const {
      return _table.at(v);
    }

    [[nodiscard]] Codomain const& domain() const noexcept {
      return _domain;
    }

    [[nodiscard]] Codomain const& codomain() const noexcept {
      return _codomain;
    }

    [[nodiscard]] std::vector<value_type> const& table() const noexcept {
      return _table;
    }

    // Sorted distinct values.
    [[nodiscard]] std::vector<value_type> range() const {
      std::vector<value_type> r(_table);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }

    bool operator==(UnaryMap const&) const = default;

   private:
    Codomain                _domain;
    Codomain                _codomain;
    std::vector<value_type> _table;
  };

  // outer ∘ inner; the codomain of inner must equal the domain of outer.
  inline UnaryMap compose(UnaryMap const& outer, UnaryMap const& inner) {
    if (!(inner.codomain() == outer.domain())) {
      throw Error("compose: codomain of the inner map is not the domain of "
                  "the outer map");
    }
    std::vector<value_type> t;
    t.reserve(inner.table().size());
    for (auto v : inner.table()) {
      t.push_back(outer(v));
    }
    return UnaryMap(inner.domain(), outer.codomain(), std::move(t));
  }

  // A total map X² → Y.
  class BinaryMap {
   public:
    BinaryMap(Carrier carrier, Codomain codomain, std::vector<value_type> table)
        : _carrier(std::move(carrier)),
          _codomain(std::move(codomain)),
          _table(std::move(table)) {
      auto n = _carrier.size();
      if (_table.size() != n * n) {
        throw Error("binary map: table has " + std::to_string(_table.size())
                    + " entries, expected " + std::to_string(n * n));
      }
      for (auto v : _table) {
        if (!_codomain.contains(v)) {
          throw Error("binary map: value " + std::to_string(v)
                      + " outside the codomain");
        }
      }
    }

    template <typename Rule>
    static BinaryMap from_rule(Carrier carrier, Codomain codomain, Rule&& rule) {
      auto const              n = carrier.size();
      std::vector<value_type> t(n * n);
      for (letter_type a = 0; a < n; ++a) {
        for (letter_type b = 0; b < n; ++b) {
          t[a * n + b] = static_cast<value_type>(rule(a, b));
        }
      }
      return BinaryMap(std::move(carrier), std::move(codomain), std::move(t));
    }

    [[nodiscard]] value_type operator()(letter_type a, letter_type b) const {
      return _table.at(a * _carrier.size() + b);
    }

    [[nodiscard]] Carrier const& carrier() const noexcept {
      return _carrier;
    }

    [[nodiscard]] Codomain const& codomain() const noexcept {
      return _codomain;
    }

    [[nodiscard]] std::vector<value_type> const& table() const noexcept {
      return _table;
    }

    bool operator==(BinaryMap const&) const = default;

   private:
    Carrier                 _carrier;
    Codomain                _codomain;
    std::vector<value_type> _table;
  };

  ////////////////////////////////////////////////////////////////////////
  // TabulatedVariadic
  ////////////////////////////////////////////////////////////////////////

  // The values of F: X* → Y on all words of length ≤ horizon.
  class TabulatedVariadic {
   public:
    static constexpr std::size_t minimum_horizon = 2;

    TabulatedVariadic(Carrier                 carrier,
                      Codomain                codomain,
                      std::size_t             horizon,
                      std::vector<value_type> table)
        : _carrier(std::move(carrier)),
          _codomain(std::move(codomain)),
          _indexer(_carrier.size(), horizon),
          _table(std::move(table)) {
      if (horizon < minimum_horizon) {
        throw Error("tabulated function: horizon must be at least "
                    + std::to_string(minimum_horizon));
      }
      if (_table.size() != _indexer.size()) {
        throw Error("tabulated function: table has "
                    + std::to_string(_table.size()) + " entries, expected "
                    + std::to_string(_indexer.size()));
      }
      for (auto v : _table) {
        if (!_codomain.contains(v)) {
          throw Error("tabulated function: value " + std::to_string(v)
                      + " outside the codomain");
        }
      }
    }

    // Tabulate rule(word) for every word up to the horizon.
    template <typename Rule>
    static TabulatedVariadic from_rule(Carrier     carrier,
                                       Codomain    codomain,
                                       std::size_t horizon,
                                       Rule&&      rule) {
      std::vector<value_type> t;
      for (auto const& w : enumerate_words(carrier, 0, horizon)) {
        t.push_back(static_cast<value_type>(rule(std::as_const(w))));
      }
      return TabulatedVariadic(
          std::move(carrier), std::move(codomain), horizon, std::move(t));
    }

    // Reassemble a table from its arity parts F_0, ..., F_L.
    static TabulatedVariadic
    from_slices(Carrier                                     carrier,
                Codomain                                    codomain,
                std::vector<std::vector<value_type>> const& slices) {
      if (slices.empty()) {
        throw Error("tabulated function: no arity parts given");
      }
      std::vector<value_type> t;
      for (auto const& s : slices) {
        t.insert(t.end(), s.begin(), s.end());
      }
      auto horizon = slices.size() - 1;
      return TabulatedVariadic(
          std::move(carrier), std::move(codomain), horizon, std::move(t));
    }

    [[nodiscard]] value_type operator()(std::span<letter_type const> w) const {
      return _table[_indexer.index(w)];
    }

    [[nodiscard]] value_type at(std::size_t index) const {
      return _table.at(index);
    }

    [[nodiscard]] Carrier const& carrier() const noexcept {
      return _carrier;
    }

    [[nodiscard]] Codomain const& codomain() const noexcept {
      return _codomain;
    }

    [[nodiscard]] std::size_t horizon() const noexcept {
      return _indexer.horizon();
    }

    [[nodiscard]] WordIndexer const& indexer() const noexcept {
      return _indexer;
    }

    [[nodiscard]] std::size_t number_of_words() const noexcept {
      return _table.size();
    }

    [[nodiscard]] std::vector<value_type> const& table() const noexcept {
      return _table;
    }

    [[nodiscard]] value_type empty_value() const noexcept {
      return _table[0];
    }

    // The arity-k part F_k, in canonical word order.
    [[nodiscard]] std::span<value_type const> slice(std::size_t arity) const {
      if (arity > horizon()) {
        throw Error("tabulated function: arity " + std::to_string(arity)
                    + " exceeds horizon " + std::to_string(horizon()));
      }
      return std::span<value_type const>(_table).subspan(
          _indexer.offset(arity), _indexer.count(arity));
    }

    [[nodiscard]] std::vector<std::vector<value_type>> slices() const {
      std::vector<std::vector<value_type>> out;
      for (std::size_t k = 0; k <= horizon(); ++k) {
        auto s = slice(k);
        out.emplace_back(s.begin(), s.end());
      }
      return out;
    }

    // True iff the codomain is X ∪ {ε}, i.e. this is a variadic operation.
    [[nodiscard]] bool is_operation() const {
      return _codomain.is_operation_codomain_of(_carrier);
    }

    [[nodiscard]] UnaryMap unary_part() const {
      auto s = slice(1);
      return UnaryMap(Codomain::of(_carrier),
                      _codomain,
                      std::vector<value_type>(s.begin(), s.end()));
    }

    [[nodiscard]] BinaryMap binary_part() const {
      auto s = slice(2);
      return BinaryMap(
          _carrier, _codomain, std::vector<value_type>(s.begin(), s.end()));
    }

    // The same function truncated to a smaller horizon.
    [[nodiscard]] TabulatedVariadic truncate(std::size_t horizon) const {
      if (horizon > this->horizon()) {
        throw Error("tabulated function: cannot truncate to a larger horizon");
      }
      WordIndexer idx(_carrier.size(), horizon);
      return TabulatedVariadic(
          _carrier,
          _codomain,
          horizon,
          std::vector<value_type>(_table.begin(), _table.begin() + idx.size()));
    }

    // Sorted distinct values taken on nonempty words, i.e. ran(F♭).
    [[nodiscard]] std::vector<value_type> nonempty_range() const {
      std::vector<value_type> r(_table.begin() + 1, _table.end());
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }

    bool operator==(TabulatedVariadic const& that) const {
      return _carrier == that._carrier && _codomain == that._codomain
             && horizon() == that.horizon() && _table == that._table;
    }

   private:
    Carrier                 _carrier;
    Codomain                _codomain;
    WordIndexer             _indexer;
    std::vector<value_type> _table;
  };

  ////////////////////////////////////////////////////////////////////////
  // CheckReport
  ////////////////////////////////////////////////////////////////////////

  // Verdict of a property check. A false verdict carries the instance of
  // the violated implication as a tuple of words; `detail` is free text.
  template <typename Word>
  struct BasicCheckReport {
    std::string       property;
    bool              verdict = true;
    std::vector<Word> witness;
    std::size_t       horizon_used = 0;
    std::string       detail;

    static BasicCheckReport pass(std::string property, std::size_t horizon) {
      return {std::move(property), true, {}, horizon, {}};
    }

    static BasicCheckReport fail(std::string       property,
                                 std::size_t       horizon,
                                 std::vector<Word> witness,
                                 std::string       detail = {}) {
      return {std::move(property),
              false,
              std::move(witness),
              horizon,
              std::move(detail)};
    }

    explicit operator bool() const noexcept {
      return verdict;
    }
  };

  using CheckReport = BasicCheckReport<word_type>;

  // Thrown when an operation's precondition is a property that does not
  // hold; carries the failing report.
  class PreconditionError : public Error {
   public:
    explicit PreconditionError(CheckReport report)
        : Error("precondition failed: " + report.property
                + (report.detail.empty() ? "" : " (" + report.detail + ")")),
          _report(std::move(report)) {}

    [[nodiscard]] CheckReport const& report() const noexcept {
      return _report;
    }

   private:
    CheckReport _report;
  };

  ////////////////////////////////////////////////////////////////////////
  // Standardness
  ////////////////////////////////////////////////////////////////////////

  // F(x) = F(ε) only for x = ε.
  inline CheckReport is_standard(TabulatedVariadic const& f) {
    auto const& t = f.table();
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i] == t[0]) {
        return CheckReport::fail("standard",
                                 f.horizon(),
                                 {f.indexer().word(i)},
                                 "nonempty word takes the value of ε");
      }
    }
    return CheckReport::pass("standard", f.horizon());
  }

  // Standard and F(ε) = ε.
  inline CheckReport is_epsilon_standard(TabulatedVariadic const& f) {
    if (!f.codomain().has_epsilon()) {
      throw Error("epsilon_standard: the codomain does not contain ε");
    }
    if (f.empty_value() != f.codomain().epsilon()) {
      return CheckReport::fail(
          "epsilon_standard", f.horizon(), {word_type{}}, "F(ε) ≠ ε");
    }
    auto r     = is_standard(f);
    r.property = "epsilon_standard";
    return r;
  }

}  // namespace preassoc
