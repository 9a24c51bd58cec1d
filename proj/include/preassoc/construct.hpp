// Synthesis of variadic extensions from unary and binary parts, and the
// factorization F♭ = f ∘ H♭ of preassociative functions through an
// associative operation H.

#pragma once

#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <string>    // for string
#include <utility>   // for move
#include <vector>    // for vector

#include "core.hpp"
#include "oracle.hpp"
#include "quasi_inverse.hpp"

namespace preassoc {

  // Per-condition reports for the existence of an extension of given unary
  // and binary parts. Witnesses are words over the carrier: (a) or (a, b)
  // for pointwise conditions, (a, b, c) for associativity of a binary part.
  struct ExtensionConditionsReport {
    enum class Mode { associative, preassociative };

    Mode                     mode;
    std::vector<CheckReport> conditions;
    std::optional<UnaryMap>  chosen_g;

    [[nodiscard]] bool verdict() const noexcept {
      for (auto const& c : conditions) {
        if (!c.verdict) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] CheckReport const* first_failure() const noexcept {
      for (auto const& c : conditions) {
        if (!c.verdict) {
          return &c;
        }
      }
      return nullptr;
    }
  };

  class ConditionError : public Error {
   public:
    explicit ConditionError(ExtensionConditionsReport report)
        : Error("extension conditions fail: "
                + report.first_failure()->property),
          _report(std::move(report)) {}

    [[nodiscard]] ExtensionConditionsReport const& report() const noexcept {
      return _report;
    }

   private:
    ExtensionConditionsReport _report;
  };

  namespace detail {
    // unary: X → X, binary: X² → X, given as letter tables.
    struct Parts {
      std::vector<letter_type> unary;
      std::vector<letter_type> binary;
      std::size_t              n;

      letter_type u(letter_type a) const {
        return unary[a];
      }
      letter_type b(letter_type a, letter_type c) const {
        return binary[a * n + c];
      }
    };

    inline CheckReport check_binary_associative(Parts const& p,
                                                std::string  name) {
      auto const n = static_cast<letter_type>(p.n);
      for (letter_type a = 0; a < n; ++a) {
        for (letter_type b = 0; b < n; ++b) {
          for (letter_type c = 0; c < n; ++c) {
            if (p.b(p.b(a, b), c) != p.b(a, p.b(b, c))) {
              return CheckReport::fail(std::move(name), 2, {{a}, {b}, {c}});
            }
          }
        }
      }
      return CheckReport::pass(std::move(name), 2);
    }

    // F₂ = F₂ ∘ (F₁, id) = F₂ ∘ (id, F₁)
    inline CheckReport check_binary_absorbs_unary(Parts const& p,
                                                  std::string  name) {
      auto const n = static_cast<letter_type>(p.n);
      for (letter_type a = 0; a < n; ++a) {
        for (letter_type b = 0; b < n; ++b) {
          auto v = p.b(a, b);
          if (p.b(p.u(a), b) != v || p.b(a, p.u(b)) != v) {
            return CheckReport::fail(std::move(name), 2, {{a, b}});
          }
        }
      }
      return CheckReport::pass(std::move(name), 2);
    }

    inline void require_carrier_values(Codomain const& c,
                                       Carrier const&  x,
                                       char const*     what) {
      if (!(c.values() == x.symbols())) {
        throw Error(std::string(what)
                    + ": values must be the carrier symbols in carrier order");
      }
    }

    inline Parts letter_parts(UnaryMap const& f1, BinaryMap const& f2) {
      auto const& x = f2.carrier();
      require_carrier_values(f1.domain(), x, "F1 domain");
      if (f1.domain().has_epsilon()) {
        throw Error("F1: domain must not contain ε");
      }
      require_carrier_values(f1.codomain(), x, "F1 codomain");
      require_carrier_values(f2.codomain(), x, "F2 codomain");
      Parts p{{}, {}, x.size()};
      for (auto v : f1.table()) {
        if (f1.codomain().is_epsilon(v)) {
          throw Error("F1: takes the value ε");
        }
        p.unary.push_back(v);
      }
      for (auto v : f2.table()) {
        if (f2.codomain().is_epsilon(v)) {
          throw Error("F2: takes the value ε");
        }
        p.binary.push_back(v);
      }
      return p;
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Associative extensions
  ////////////////////////////////////////////////////////////////////////

  // Conditions for F₁: X → X and F₂: X² → X to be the unary and binary parts
  // of an associative ε-standard operation:
  //   (i)   F₁ ∘ F₁ = F₁ and F₁ ∘ F₂ = F₂,
  //   (ii)  F₂ = F₂ ∘ (F₁, id) = F₂ ∘ (id, F₁),
  //   (iii) F₂ is associative.
  inline ExtensionConditionsReport
  check_associative_extension(UnaryMap const& f1, BinaryMap const& f2) {
    auto const p = detail::letter_parts(f1, f2);
    auto const n = static_cast<letter_type>(p.n);

    auto unary = CheckReport::pass("unary_idempotent_and_absorbs_binary", 2);
    for (letter_type a = 0; a < n && unary; ++a) {
      if (p.u(p.u(a)) != p.u(a)) {
        unary = CheckReport::fail(
            "unary_idempotent_and_absorbs_binary", 2, {{a}}, "F1(F1(a)) ≠ F1(a)");
      }
    }
    for (letter_type a = 0; a < n && unary; ++a) {
      for (letter_type b = 0; b < n && unary; ++b) {
        if (p.u(p.b(a, b)) != p.b(a, b)) {
          unary = CheckReport::fail("unary_idempotent_and_absorbs_binary",
                                    2,
                                    {{a, b}},
                                    "F1(F2(a,b)) ≠ F2(a,b)");
        }
      }
    }
    return {ExtensionConditionsReport::Mode::associative,
            {std::move(unary),
             detail::check_binary_absorbs_unary(p, "binary_absorbs_unary"),
             detail::check_binary_associative(p, "binary_associative")},
            std::nullopt};
  }

  // The unique associative ε-standard operation G with G₁ = F₁, G₂ = F₂:
  // G_n(x₁⋯x_n) = F₂(G_{n−1}(x₁⋯x_{n−1}) x_n). Throws ConditionError when
  // no such operation exists.
  inline TabulatedVariadic extend_associative(UnaryMap const&  f1,
                                              BinaryMap const& f2,
                                              std::size_t      horizon) {
    auto report = check_associative_extension(f1, f2);
    if (!report.verdict()) {
      throw ConditionError(std::move(report));
    }
    auto const& x = f2.carrier();
    WordIndexer idx(x.size(), horizon);
    std::vector<value_type> t(idx.size());
    t[0] = static_cast<value_type>(x.size());  // ε
    for (std::size_t i = 1; i < idx.size(); ++i) {
      auto const w = idx.word(i);
      if (w.size() == 1) {
        t[i] = f1(w[0]);
      } else if (w.size() == 2) {
        t[i] = f2(w[0], w[1]);
      } else {
        word_type prefix(w.begin(), w.end() - 1);
        t[i] = f2(t[idx.index(prefix)], w.back());
      }
    }
    return TabulatedVariadic(
        x, Codomain::operations_on(x), horizon, std::move(t));
  }

  ////////////////////////////////////////////////////////////////////////
  // Preassociative extensions
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void require_quasi_inverse(UnaryMap const& f1, UnaryMap const& g) {
      if (!(g.domain() == f1.codomain()) || !(g.codomain() == f1.domain())) {
        throw Error("g must map the codomain of F1 back to the carrier");
      }
      if (auto r = is_quasi_inverse(f1, g); !r) {
        throw PreconditionError(std::move(r));
      }
    }
  }  // namespace detail

  // Conditions for F₁: X → Y and F₂: X² → Y to be the unary and binary parts
  // of a preassociative, unarily quasi-range-idempotent standard function,
  // relative to g ∈ Q(F₁): ran(F₂) ⊆ ran(F₁), and with H₁ = g ∘ F₁,
  // H₂ = g ∘ F₂,
  //   (i)  H₂ = H₂ ∘ (H₁, id) = H₂ ∘ (id, H₁),
  //   (ii) H₂ is associative.
  inline ExtensionConditionsReport
  check_preassociative_extension(UnaryMap const&  f1,
                                 BinaryMap const& f2,
                                 UnaryMap const&  g) {
    auto const& x = f2.carrier();
    detail::require_carrier_values(f1.domain(), x, "F1 domain");
    if (f1.domain().has_epsilon()) {
      throw Error("F1: domain must not contain ε");
    }
    if (!(f1.codomain() == f2.codomain())) {
      throw Error("F1 and F2 must share a codomain");
    }
    detail::require_quasi_inverse(f1, g);

    auto const n     = static_cast<letter_type>(x.size());
    auto const ran_1 = f1.range();
    auto       range = CheckReport::pass("range_inclusion", 2);
    for (letter_type a = 0; a < n && range; ++a) {
      for (letter_type b = 0; b < n && range; ++b) {
        if (!detail::contains(ran_1, f2(a, b))) {
          range = CheckReport::fail(
              "range_inclusion", 2, {{a, b}}, "F2(a,b) is not in ran(F1)");
        }
      }
    }

    detail::Parts h{{}, {}, x.size()};
    for (letter_type a = 0; a < n; ++a) {
      h.unary.push_back(g(f1(a)));
    }
    for (auto v : f2.table()) {
      h.binary.push_back(g(v));
    }
    return {ExtensionConditionsReport::Mode::preassociative,
            {std::move(range),
             detail::check_binary_absorbs_unary(h, "inner_binary_absorbs_unary"),
             detail::check_binary_associative(h, "inner_binary_associative")},
            g};
  }

  // The unique preassociative, unarily quasi-range-idempotent standard
  // function G with G₀ = F₀, G₁ = F₁, G₂ = F₂:
  // G_n(x₁⋯x_n) = F₂(g(G_{n−1}(x₁⋯x_{n−1})) x_n).
  inline TabulatedVariadic extend_preassociative(value_type       f0,
                                                 UnaryMap const&  f1,
                                                 BinaryMap const& f2,
                                                 UnaryMap const&  g,
                                                 std::size_t      horizon) {
    auto report = check_preassociative_extension(f1, f2, g);
    if (!report.verdict()) {
      throw ConditionError(std::move(report));
    }
    auto const& x = f2.carrier();
    auto const& y = f2.codomain();
    if (!y.contains(f0)) {
      throw Error("extend_preassociative: F0 is outside the codomain");
    }
    WordIndexer idx(x.size(), horizon);
    std::vector<value_type> t(idx.size());
    t[0] = f0;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      auto const w = idx.word(i);
      if (w.size() == 1) {
        t[i] = f1(w[0]);
      } else if (w.size() == 2) {
        t[i] = f2(w[0], w[1]);
      } else {
        word_type prefix(w.begin(), w.end() - 1);
        t[i] = f2(g(t[idx.index(prefix)]), w.back());
      }
      if (t[i] == f0) {
        throw PreconditionError(
            CheckReport::fail("standard",
                              horizon,
                              {w},
                              "F0 = " + y.name(f0)
                                  + " is taken by a nonempty word"));
      }
    }
    return TabulatedVariadic(x, y, horizon, std::move(t));
  }

  ////////////////////////////////////////////////////////////////////////
  // Factorization
  ////////////////////////////////////////////////////////////////////////

  // F♭ = f ∘ H♭ with H an associative ε-standard operation and f one-to-one
  // on ran(H♭). f's domain lists the carrier symbols in ran(H♭).
  struct Factorization {
    TabulatedVariadic inner;
    UnaryMap          outer;
    UnaryMap          g;
  };

  namespace detail {
    inline void require(CheckReport r) {
      if (!r) {
        throw PreconditionError(std::move(r));
      }
    }

    // H with H(ε) = ε and H♭ = g ∘ F♭.
    inline TabulatedVariadic inner_operation(TabulatedVariadic const& f,
                                             UnaryMap const&          g) {
      auto const& x = f.carrier();
      std::vector<value_type> t(f.number_of_words());
      t[0] = static_cast<value_type>(x.size());
      for (std::size_t i = 1; i < t.size(); ++i) {
        t[i] = g(f.at(i));
      }
      return TabulatedVariadic(
          x, Codomain::operations_on(x), f.horizon(), std::move(t));
    }

    inline UnaryMap resolve_g(TabulatedVariadic const&       f,
                              std::optional<UnaryMap> const& g) {
      auto f1 = f.unary_part();
      if (!g) {
        return canonical_quasi_inverse(f1);
      }
      require_quasi_inverse(f1, *g);
      return *g;
    }
  }  // namespace detail

  // H with H♭ = g ∘ F♭, a unarily range-idempotent solution of
  // F♭ = F₁ ∘ H♭. Requires F unarily quasi-range-idempotent and g ∈ Q(F₁).
  inline TabulatedVariadic
  build_range_idempotent_inner(TabulatedVariadic const& f, UnaryMap const& g) {
    detail::require(is_unarily_quasi_range_idempotent(f));
    detail::require_quasi_inverse(f.unary_part(), g);
    return detail::inner_operation(f, g);
  }

  // Requires F standard, preassociative and unarily quasi-range-idempotent.
  // Uses the canonical member of Q(F₁) unless g is supplied.
  inline Factorization factorize(TabulatedVariadic const&       f,
                                 std::optional<UnaryMap> const& g = std::nullopt) {
    detail::require(is_standard(f));
    detail::require(is_preassociative(f));
    detail::require(is_unarily_quasi_range_idempotent(f));
    auto gg = detail::resolve_g(f, g);
    auto h  = detail::inner_operation(f, gg);

    auto const& x     = f.carrier();
    auto const  ran_h = h.nonempty_range();
    std::vector<std::string> names;
    std::vector<value_type>  outer;
    for (auto v : ran_h) {
      names.push_back(x.symbol(v));
      outer.push_back(f(word_type{v}));
    }
    UnaryMap fo(Codomain(std::move(names), false), f.codomain(), std::move(outer));
    return {std::move(h), std::move(fo), std::move(gg)};
  }

  // Reports on the defining properties of a factorization of F:
  // H associative, f one-to-one, f ∘ H♭ = F♭, and f⁻¹ ∈ Q(F₁).
  inline std::vector<CheckReport> check_factorization(TabulatedVariadic const& f,
                                                      Factorization const& fac) {
    std::vector<CheckReport> out;
    out.push_back(is_associative(fac.inner));

    auto const& dom = fac.outer.domain();
    auto        inj = CheckReport::pass("outer_injective", f.horizon());
    std::vector<value_type> seen(fac.outer.codomain().size(), 0);
    for (value_type i = 0; i < dom.size(); ++i) {
      if (seen[fac.outer(i)]++ != 0) {
        inj = CheckReport::fail("outer_injective",
                                f.horizon(),
                                {},
                                "f collides at " + dom.name(i));
        break;
      }
    }
    out.push_back(std::move(inj));

    auto round = CheckReport::pass("round_trip", f.horizon());
    for (std::size_t i = 1; i < f.number_of_words(); ++i) {
      auto v = translate(fac.inner.codomain(), fac.inner.at(i), dom);
      if (!v || fac.outer(*v) != f.at(i)) {
        round = CheckReport::fail(
            "round_trip", f.horizon(), {f.indexer().word(i)}, "f(H(w)) ≠ F(w)");
        break;
      }
    }
    out.push_back(std::move(round));

    if (out[1]) {
      // f⁻¹, defined on ran(f) and valued in the carrier
      std::vector<std::string> names;
      std::vector<value_type>  t;
      auto const&              y = fac.outer.codomain();
      auto                     r = fac.outer.range();
      for (auto v : r) {
        names.push_back(y.name(v));
        for (value_type i = 0; i < dom.size(); ++i) {
          if (fac.outer(i) == v) {
            t.push_back(f.carrier().index_of(dom.values()[i]));
          }
        }
      }
      bool eps = false;
      if (!names.empty() && y.has_epsilon() && r.back() == y.epsilon()) {
        names.pop_back();
        eps = true;
      }
      UnaryMap inverse(
          Codomain(std::move(names), eps), Codomain::of(f.carrier()), std::move(t));
      auto q     = is_quasi_inverse(f.unary_part(), inverse);
      q.property = "outer_inverse_is_quasi_inverse";
      out.push_back(std::move(q));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Composition with unary maps
  ////////////////////////////////////////////////////////////////////////

  // H over the domain of g with H(ε) = a and H_n = F_n ∘ (g, …, g).
  // Requires F standard and preassociative, and a ∉ ran(F♭).
  inline TabulatedVariadic compose_right(TabulatedVariadic const& f,
                                         UnaryMap const&          g,
                                         value_type               a) {
    detail::require(is_standard(f));
    detail::require(is_preassociative(f));
    if (g.domain().has_epsilon()) {
      throw Error("compose_right: the domain of g must not contain ε");
    }
    if (!(g.codomain() == Codomain::of(f.carrier()))) {
      throw Error("compose_right: g must be valued in the carrier of F");
    }
    if (!f.codomain().contains(a)) {
      throw Error("compose_right: a is outside the codomain");
    }
    if (detail::contains(f.nonempty_range(), a)) {
      throw Error("compose_right: " + f.codomain().name(a)
                  + " is a value of F on a nonempty word");
    }
    Carrier x2(g.domain().values());
    WordIndexer idx(x2.size(), f.horizon());
    std::vector<value_type> t(idx.size());
    t[0] = a;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      auto w = idx.word(i);
      for (auto& c : w) {
        c = g(c);
      }
      t[i] = f(w);
    }
    return TabulatedVariadic(
        std::move(x2), f.codomain(), f.horizon(), std::move(t));
  }

  // H with H(ε) = a and H♭ = g ∘ F♭. Requires F standard and
  // preassociative, g one-to-one on ran(F♭) and a ∉ ran(g ∘ F♭). A collision
  // of g on ran(F♭) is reported with the two colliding words.
  inline TabulatedVariadic compose_left(TabulatedVariadic const& f,
                                        UnaryMap const&          g,
                                        value_type               a) {
    detail::require(is_standard(f));
    detail::require(is_preassociative(f));
    if (!(g.domain() == f.codomain())) {
      throw Error("compose_left: g must be defined on the codomain of F");
    }
    if (!g.codomain().contains(a)) {
      throw Error("compose_left: a is outside the codomain of g");
    }
    auto const& idx = f.indexer();
    // first nonempty word per value of F
    std::vector<std::size_t> first(f.codomain().size(), 0);
    // value of F whose image under g was seen first, per value of g
    std::vector<std::optional<value_type>> pre(g.codomain().size());
    for (std::size_t i = 1; i < f.number_of_words(); ++i) {
      auto v = f.at(i);
      if (first[v] == 0) {
        first[v] = i;
      }
      auto& p = pre[g(v)];
      if (!p) {
        p = v;
      } else if (*p != v) {
        throw PreconditionError(CheckReport::fail(
            "left_injective",
            f.horizon(),
            {idx.word(first[*p]), idx.word(i)},
            "g identifies " + f.codomain().name(*p) + " and "
                + f.codomain().name(v)));
      }
    }
    if (pre[a]) {
      throw Error("compose_left: " + g.codomain().name(a)
                  + " is a value of g ∘ F on a nonempty word");
    }
    std::vector<value_type> t(f.number_of_words());
    t[0] = a;
    for (std::size_t i = 1; i < t.size(); ++i) {
      t[i] = g(f.at(i));
    }
    return TabulatedVariadic(
        f.carrier(), g.codomain(), f.horizon(), std::move(t));
  }

}  // namespace preassoc
