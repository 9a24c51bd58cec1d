// Exhaustive decision procedures for associativity, preassociativity and
// related properties of tabulated variadic functions.
//
// Every verdict is relative to the table's horizon L: an implication is
// checked for every instance whose words all have length ≤ L. A false
// verdict carries the first violating instance found in canonical word
// order, with ties broken by the order of the quantifiers in the property.

#pragma once

#include <cstddef>  // for size_t
#include <string>   // for string
#include <utility>  // for pair
#include <vector>   // for vector

#include "core.hpp"

namespace preassoc {

  namespace detail {
    inline void require_operation(TabulatedVariadic const& f, char const* op) {
      if (!f.is_operation()) {
        throw Error(std::string(op)
                    + ": the codomain must be the carrier together with ε");
      }
    }

    // x·F(y)·z, where F(y) = ε collapses to x·z.
    inline word_type substitute(TabulatedVariadic const&     f,
                                std::span<letter_type const> x,
                                value_type                   fy,
                                std::span<letter_type const> z) {
      if (f.codomain().is_epsilon(fy)) {
        return concat(x, z);
      }
      letter_type a = fy;
      return concat(x, std::span<letter_type const>(&a, 1), z);
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Definitional replays
  ////////////////////////////////////////////////////////////////////////

  // Each returns true iff the given instance violates the property, using
  // the definition directly. Instances outside the horizon never violate.

  inline bool violates_associativity(TabulatedVariadic const& f,
                                     word_type const&         x,
                                     word_type const&         y,
                                     word_type const&         z) {
    auto const l = f.horizon();
    if (x.size() + y.size() + z.size() > l) {
      return false;
    }
    auto rhs = detail::substitute(f, x, f(y), z);
    if (rhs.size() > l) {
      return false;
    }
    return f(concat(x, y, z)) != f(rhs);
  }

  inline bool violates_preassociativity(TabulatedVariadic const& f,
                                        word_type const&         x,
                                        word_type const&         y,
                                        word_type const&         yy,
                                        word_type const&         z) {
    auto const l = f.horizon();
    if (y.size() > l || yy.size() > l || f(y) != f(yy)) {
      return false;
    }
    auto lhs = concat(x, y, z);
    auto rhs = concat(x, yy, z);
    return lhs.size() <= l && rhs.size() <= l && f(lhs) != f(rhs);
  }

  inline bool violates_pairwise_preassociativity(TabulatedVariadic const& f,
                                                 word_type const&         x,
                                                 word_type const&         xx,
                                                 word_type const&         y,
                                                 word_type const&         yy) {
    auto const l = f.horizon();
    if (x.size() + y.size() > l || xx.size() + yy.size() > l) {
      return false;
    }
    return f(x) == f(xx) && f(y) == f(yy) && f(concat(x, y)) != f(concat(xx, yy));
  }

  inline bool violates_strong_preassociativity(TabulatedVariadic const& f,
                                               word_type const&         x,
                                               word_type const&         xx,
                                               word_type const&         y,
                                               word_type const&         z,
                                               word_type const&         zz) {
    auto const l = f.horizon();
    auto       a = concat(x, y, z);
    auto       b = concat(xx, y, zz);
    if (a.size() > l || b.size() > l) {
      return false;
    }
    return f(concat(x, z)) == f(concat(xx, zz)) && f(a) != f(b);
  }

  ////////////////////////////////////////////////////////////////////////
  // Associativity
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // F(xyz) = F(x F(y) z) over decompositions with |xz| ≤ max_context.
    inline CheckReport check_associativity(TabulatedVariadic const& f,
                                           std::size_t              max_context,
                                           char const*              name) {
      require_operation(f, name);
      auto const l     = f.horizon();
      auto const words = enumerate_words(f.carrier(), 0, l);
      for (auto const& x : words) {
        if (x.size() > max_context) {
          break;
        }
        for (auto const& y : words) {
          if (x.size() + y.size() > l) {
            break;
          }
          for (auto const& z : words) {
            if (x.size() + y.size() + z.size() > l
                || x.size() + z.size() > max_context) {
              break;
            }
            if (violates_associativity(f, x, y, z)) {
              return CheckReport::fail(name, l, {x, y, z});
            }
          }
        }
      }
      return CheckReport::pass(name, l);
    }
  }  // namespace detail

  // F(xyz) = F(x F(y) z) for every decomposition within the horizon.
  inline CheckReport is_associative(TabulatedVariadic const& f) {
    return detail::check_associativity(f, f.horizon(), "associative");
  }

  // The same identity restricted to decompositions with |xz| ≤ 1.
  inline CheckReport is_associative_short(TabulatedVariadic const& f) {
    return detail::check_associativity(f, 1, "associative_short");
  }

  ////////////////////////////////////////////////////////////////////////
  // Kernel partition
  ////////////////////////////////////////////////////////////////////////

  // The partition of all words up to the horizon by value. Blocks are
  // numbered in order of their first member; members are ascending word
  // indices.
  class KernelPartition {
   public:
    explicit KernelPartition(TabulatedVariadic const& f)
        : _indexer(f.indexer()), _class_of(f.number_of_words()) {
      std::vector<std::size_t> block_of_value(f.codomain().size(), npos);
      for (std::size_t i = 0; i < f.number_of_words(); ++i) {
        auto& b = block_of_value[f.at(i)];
        if (b == npos) {
          b = _classes.size();
          _classes.emplace_back();
          _values.push_back(f.at(i));
        }
        _classes[b].push_back(i);
        _class_of[i] = b;
      }
    }

    [[nodiscard]] std::size_t number_of_classes() const noexcept {
      return _classes.size();
    }

    [[nodiscard]] std::vector<std::vector<std::size_t>> const&
    classes() const noexcept {
      return _classes;
    }

    [[nodiscard]] std::size_t class_of(std::size_t word_index) const {
      return _class_of.at(word_index);
    }

    [[nodiscard]] std::size_t class_of(word_type const& w) const {
      return _class_of.at(_indexer.index(w));
    }

    [[nodiscard]] value_type value_of_class(std::size_t block) const {
      return _values.at(block);
    }

    [[nodiscard]] WordIndexer const& indexer() const noexcept {
      return _indexer;
    }

    // Closure under single-letter left and right multiplication within the
    // horizon. Witness (x, y, y', z) with |xz| = 1, x ranging first over ε
    // then over the letters.
    [[nodiscard]] CheckReport is_congruence(std::string const& property
                                            = "congruence") const {
      auto const l = _indexer.horizon();
      auto const n = static_cast<letter_type>(_indexer.count(1));
      // contexts in the order (ε, a) for each a, then (a, ε) for each a
      std::vector<std::pair<int, letter_type>> contexts;
      for (letter_type a = 0; a < n; ++a) {
        contexts.emplace_back(1, a);
      }
      for (letter_type a = 0; a < n; ++a) {
        contexts.emplace_back(0, a);
      }
      for (auto [right, a] : contexts) {
        for (std::size_t y = 0; y < _class_of.size(); ++y) {
          if (_indexer.length(y) >= l) {
            break;
          }
          auto const ey = extend(right, a, y);
          for (auto yy : _classes[_class_of[y]]) {
            if (yy <= y || _indexer.length(yy) >= l) {
              continue;
            }
            if (_class_of[ey] != _class_of[extend(right, a, yy)]) {
              word_type letter{a};
              word_type x = right ? word_type{} : letter;
              word_type z = right ? letter : word_type{};
              return CheckReport::fail(
                  property, l, {x, _indexer.word(y), _indexer.word(yy), z});
            }
          }
        }
      }
      return CheckReport::pass(property, l);
    }

   private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    [[nodiscard]] std::size_t extend(int right, letter_type a, std::size_t w) const {
      return right ? _indexer.append(w, a) : _indexer.prepend(a, w);
    }

    WordIndexer                           _indexer;
    std::vector<std::vector<std::size_t>> _classes;
    std::vector<std::size_t>              _class_of;
    std::vector<value_type>               _values;
  };

  inline KernelPartition kernel_partition(TabulatedVariadic const& f) {
    return KernelPartition(f);
  }

  ////////////////////////////////////////////////////////////////////////
  // Preassociativity
  ////////////////////////////////////////////////////////////////////////

  // F(y) = F(y') ⟹ F(xyz) = F(xy'z). Checked as closure of the kernel
  // partition under single-letter contexts; longer contexts are chains of
  // single-letter steps that never leave the horizon.
  inline CheckReport is_preassociative(TabulatedVariadic const& f) {
    return kernel_partition(f).is_congruence("preassociative");
  }

  // F(x) = F(x') ∧ F(y) = F(y') ⟹ F(xy) = F(x'y'). Each pair of blocks
  // must determine the value of the product; the witness is
  // (x, x', y, y') where (x, y) is the first pair seen for those blocks.
  inline CheckReport is_preassociative_pairwise(TabulatedVariadic const& f) {
    auto const            l = f.horizon();
    KernelPartition const k(f);
    auto const            m = k.number_of_classes();
    constexpr auto        unseen = static_cast<std::size_t>(-1);
    // first (x, y) index pair seen for each pair of blocks
    std::vector<std::pair<std::size_t, std::size_t>> first(m * m,
                                                           {unseen, unseen});
    auto const words = enumerate_words(f.carrier(), 0, l);
    for (std::size_t xi = 0; xi < words.size(); ++xi) {
      auto const& x = words[xi];
      for (std::size_t yi = 0; yi < words.size(); ++yi) {
        auto const& y = words[yi];
        if (x.size() + y.size() > l) {
          break;
        }
        auto& seen = first[k.class_of(xi) * m + k.class_of(yi)];
        if (seen.first == unseen) {
          seen = {xi, yi};
          continue;
        }
        auto const& x0 = words[seen.first];
        auto const& y0 = words[seen.second];
        if (f(concat(x0, y0)) != f(concat(x, y))) {
          return CheckReport::fail("preassociative_pairwise", l, {x0, x, y0, y});
        }
      }
    }
    return CheckReport::pass("preassociative_pairwise", l);
  }

  // The definition itself: every pair of equal-valued words in every
  // context (x, z). Quadratic in the class sizes times the number of
  // contexts; the unoptimised reference for is_preassociative.
  inline CheckReport is_preassociative_definitional(TabulatedVariadic const& f) {
    auto const            l = f.horizon();
    KernelPartition const k(f);
    auto const            words = enumerate_words(f.carrier(), 0, l);
    for (auto const& x : words) {
      for (std::size_t yi = 0; yi < words.size(); ++yi) {
        auto const& y = words[yi];
        if (x.size() + y.size() > l) {
          break;
        }
        for (auto yyi : k.classes()[k.class_of(yi)]) {
          if (yyi <= yi) {
            continue;
          }
          auto const& yy = words[yyi];
          for (auto const& z : words) {
            if (x.size() + y.size() + z.size() > l) {
              break;
            }
            if (violates_preassociativity(f, x, y, yy, z)) {
              return CheckReport::fail(
                  "preassociative_definitional", l, {x, y, yy, z});
            }
          }
        }
      }
    }
    return CheckReport::pass("preassociative_definitional", l);
  }

  // F(xz) = F(x'z') ⟹ F(xyz) = F(x'yz'), with |y| = 1 (which loses no
  // generality). Requires L ≥ 3. Witness (x, x', y, z, z').
  inline CheckReport is_strongly_preassociative(TabulatedVariadic const& f) {
    auto const l = f.horizon();
    if (l < 3) {
      throw Error("strongly_preassociative: requires a horizon of at least 3");
    }
    KernelPartition const k(f);
    auto const&           idx = f.indexer();
    auto const            n   = static_cast<letter_type>(f.carrier().size());
    for (std::size_t wi = 0; wi < idx.size(); ++wi) {
      if (idx.length(wi) + 1 > l) {
        break;
      }
      auto const w = idx.word(wi);
      for (std::size_t i = 0; i <= w.size(); ++i) {
        word_type x(w.begin(), w.begin() + i), z(w.begin() + i, w.end());
        for (auto wwi : k.classes()[k.class_of(wi)]) {
          if (idx.length(wwi) + 1 > l) {
            continue;
          }
          auto const ww = idx.word(wwi);
          for (std::size_t j = 0; j <= ww.size(); ++j) {
            word_type xx(ww.begin(), ww.begin() + j), zz(ww.begin() + j, ww.end());
            for (letter_type a = 0; a < n; ++a) {
              word_type y{a};
              if (f(concat(x, y, z)) != f(concat(xx, y, zz))) {
                return CheckReport::fail(
                    "strongly_preassociative", l, {x, xx, y, z, zz});
              }
            }
          }
        }
      }
    }
    return CheckReport::pass("strongly_preassociative", l);
  }

  // Every arity part is invariant under adjacent transpositions (and hence
  // under all permutations). Witness (w, w with one adjacent swap).
  inline CheckReport is_symmetric(TabulatedVariadic const& f) {
    auto const& idx = f.indexer();
    for (std::size_t wi = 0; wi < idx.size(); ++wi) {
      auto const w = idx.word(wi);
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == w[i + 1]) {
          continue;
        }
        auto s = w;
        std::swap(s[i], s[i + 1]);
        if (f(s) != f.at(wi)) {
          return CheckReport::fail("symmetric", f.horizon(), {w, s});
        }
      }
    }
    return CheckReport::pass("symmetric", f.horizon());
  }

  ////////////////////////////////////////////////////////////////////////
  // Idempotence
  ////////////////////////////////////////////////////////////////////////

  // F_n(aⁿ) = a for every letter a and 1 ≤ n ≤ L.
  inline CheckReport is_idempotent(TabulatedVariadic const& f) {
    detail::require_operation(f, "idempotent");
    auto const n = static_cast<letter_type>(f.carrier().size());
    for (std::size_t k = 1; k <= f.horizon(); ++k) {
      for (letter_type a = 0; a < n; ++a) {
        word_type w(k, a);
        if (f(w) != a) {
          return CheckReport::fail("idempotent", f.horizon(), {w});
        }
      }
    }
    return CheckReport::pass("idempotent", f.horizon());
  }

  // F₁ = id.
  inline CheckReport is_unarily_idempotent(TabulatedVariadic const& f) {
    detail::require_operation(f, "unarily_idempotent");
    auto const n = static_cast<letter_type>(f.carrier().size());
    for (letter_type a = 0; a < n; ++a) {
      if (f(word_type{a}) != a) {
        return CheckReport::fail("unarily_idempotent", f.horizon(), {{a}});
      }
    }
    return CheckReport::pass("unarily_idempotent", f.horizon());
  }

  // F₁ ∘ F♭ = F♭. A nonempty word valued ε violates it since F₁ is not
  // defined at ε.
  inline CheckReport is_unarily_range_idempotent(TabulatedVariadic const& f) {
    detail::require_operation(f, "unarily_range_idempotent");
    auto const& idx = f.indexer();
    for (std::size_t wi = 1; wi < idx.size(); ++wi) {
      auto v = f.at(wi);
      if (f.codomain().is_epsilon(v)) {
        return CheckReport::fail("unarily_range_idempotent",
                                 f.horizon(),
                                 {idx.word(wi)},
                                 "nonempty word valued ε");
      }
      if (f(word_type{v}) != v) {
        return CheckReport::fail(
            "unarily_range_idempotent", f.horizon(), {idx.word(wi), {v}});
      }
    }
    return CheckReport::pass("unarily_range_idempotent", f.horizon());
  }

  // ran(F₁) = ran(F♭). Works for any codomain. Witness: the first
  // nonempty word whose value F₁ never takes.
  inline CheckReport
  is_unarily_quasi_range_idempotent(TabulatedVariadic const& f) {
    std::vector<bool> in_unary_range(f.codomain().size(), false);
    for (auto v : f.slice(1)) {
      in_unary_range[v] = true;
    }
    auto const& idx = f.indexer();
    for (std::size_t wi = idx.offset(2); wi < idx.size(); ++wi) {
      if (!in_unary_range[f.at(wi)]) {
        return CheckReport::fail("unarily_quasi_range_idempotent",
                                 f.horizon(),
                                 {idx.word(wi)},
                                 "value not taken by F₁");
      }
    }
    return CheckReport::pass("unarily_quasi_range_idempotent", f.horizon());
  }

  // F₁ ∘ F₁ = F₁.
  inline CheckReport is_unary_part_idempotent(TabulatedVariadic const& f) {
    detail::require_operation(f, "unary_part_idempotent");
    auto const n = static_cast<letter_type>(f.carrier().size());
    for (letter_type a = 0; a < n; ++a) {
      auto v = f(word_type{a});
      if (f.codomain().is_epsilon(v) || f(word_type{v}) != v) {
        return CheckReport::fail("unary_part_idempotent", f.horizon(), {{a}});
      }
    }
    return CheckReport::pass("unary_part_idempotent", f.horizon());
  }

  struct IdempotenceProfile {
    CheckReport idempotent;
    CheckReport unarily_idempotent;
    CheckReport unarily_range_idempotent;
    CheckReport unarily_quasi_range_idempotent;
  };

  inline IdempotenceProfile idempotence_profile(TabulatedVariadic const& f) {
    return {is_idempotent(f),
            is_unarily_idempotent(f),
            is_unarily_range_idempotent(f),
            is_unarily_quasi_range_idempotent(f)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Constant parts
  ////////////////////////////////////////////////////////////////////////

  // For a preassociative F: (a) F_n constant ⟹ F_{n+1} constant, and
  // (b) F_n = F_{n+1} = c ⟹ F_m = c for n ≤ m ≤ L.
  inline CheckReport constant_part_check(TabulatedVariadic const& f) {
    if (auto r = is_preassociative(f); !r) {
      throw PreconditionError(std::move(r));
    }
    auto const l        = f.horizon();
    auto const& idx     = f.indexer();
    auto       constant = [&f](std::size_t k) {
      auto s = f.slice(k);
      return std::all_of(
          s.begin(), s.end(), [&s](value_type v) { return v == s[0]; });
    };
    for (std::size_t k = 1; k < l; ++k) {
      if (!constant(k)) {
        continue;
      }
      auto next = f.slice(k + 1);
      for (std::size_t i = 1; i < next.size(); ++i) {
        if (next[i] != next[0]) {
          return CheckReport::fail("constant_parts",
                                   l,
                                   {idx.word(idx.offset(k + 1)),
                                    idx.word(idx.offset(k + 1) + i)},
                                   "F_" + std::to_string(k)
                                       + " constant but F_"
                                       + std::to_string(k + 1) + " is not");
        }
      }
      if (next[0] != f.slice(k)[0]) {
        continue;
      }
      auto const c = next[0];
      for (auto m = k + 2; m <= l; ++m) {
        auto s = f.slice(m);
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] != c) {
            return CheckReport::fail("constant_parts",
                                     l,
                                     {idx.word(idx.offset(m) + i)},
                                     "F_" + std::to_string(k) + " = F_"
                                         + std::to_string(k + 1)
                                         + " constant but F_"
                                         + std::to_string(m) + " differs");
          }
        }
      }
    }
    return CheckReport::pass("constant_parts", l);
  }

  ////////////////////////////////////////////////////////////////////////
  // Replay
  ////////////////////////////////////////////////////////////////////////

  // True iff a failed report's witness violates its property when replayed
  // through the definition. Only the identity-style properties are
  // supported; others throw.
  inline bool replays(TabulatedVariadic const& f, CheckReport const& r) {
    auto const& w = r.witness;
    auto const& p = r.property;
    if (p == "associative" || p == "associative_short") {
      return w.size() == 3 && violates_associativity(f, w[0], w[1], w[2]);
    } else if (p == "preassociative" || p == "preassociative_definitional"
               || p == "congruence") {
      return w.size() == 4
             && violates_preassociativity(f, w[0], w[1], w[2], w[3]);
    } else if (p == "preassociative_pairwise") {
      return w.size() == 4
             && violates_pairwise_preassociativity(f, w[0], w[1], w[2], w[3]);
    } else if (p == "strongly_preassociative") {
      return w.size() == 5
             && violates_strong_preassociativity(
                 f, w[0], w[1], w[2], w[3], w[4]);
    } else if (p == "symmetric") {
      return w.size() == 2 && w[0].size() == w[1].size() && f(w[0]) != f(w[1]);
    }
    throw Error("replays: unsupported property " + p);
  }

}  // namespace preassoc
