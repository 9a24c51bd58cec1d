// Quasi-inverses of maps between finite sets.
//
// g is a quasi-inverse of f when
//
//   f ∘ g = id on ran(f)   and   g(ran(f)) = ran(g).
//
// Maps are compared element-wise by identity (name, or ε), so g may be
// defined on any set containing ran(f).

#pragma once

#include <algorithm>  // for sort, binary_search
#include <cstddef>    // for size_t
#include <optional>   // for optional
#include <string>     // for string
#include <vector>     // for vector

#include "core.hpp"

namespace preassoc {

  namespace detail {
    inline std::vector<value_type> sorted_unique(std::vector<value_type> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    }

    inline bool contains(std::vector<value_type> const& sorted, value_type v) {
      return std::binary_search(sorted.begin(), sorted.end(), v);
    }
  }  // namespace detail

  // Witnesses are one-letter words holding an element index: of the
  // codomain of f when f ∘ g ≠ id on ran(f), of the domain of g when
  // g(ran(f)) ≠ ran(g).
  inline CheckReport is_quasi_inverse(UnaryMap const& f, UnaryMap const& g) {
    auto const ran_f = f.range();
    // g's domain index for each element of ran(f)
    std::vector<value_type> g_at(f.codomain().size(), 0);
    for (auto v : ran_f) {
      auto u = translate(f.codomain(), v, g.domain());
      if (!u) {
        throw Error("is_quasi_inverse: " + f.codomain().name(v)
                    + " is in ran(f) but not in dom(g)");
      }
      g_at[v] = *u;
    }
    // f's domain index for each element of ran(g)
    std::vector<value_type> as_f_arg(g.codomain().size(), 0);
    for (auto u : g.range()) {
      auto a = translate(g.codomain(), u, f.domain());
      if (!a) {
        throw Error("is_quasi_inverse: " + g.codomain().name(u)
                    + " is in ran(g) but not in dom(f)");
      }
      as_f_arg[u] = *a;
    }

    for (auto v : ran_f) {
      if (f(as_f_arg[g(g_at[v])]) != v) {
        return CheckReport::fail("quasi_inverse",
                                 0,
                                 {{v}},
                                 "f(g(" + f.codomain().name(v) + ")) ≠ "
                                     + f.codomain().name(v));
      }
    }
    std::vector<value_type> image;
    for (auto v : ran_f) {
      image.push_back(g(g_at[v]));
    }
    image = detail::sorted_unique(std::move(image));
    for (value_type u = 0; u < g.domain().size(); ++u) {
      if (!detail::contains(image, g(u))) {
        return CheckReport::fail("quasi_inverse",
                                 0,
                                 {{u}},
                                 "g(" + g.domain().name(u)
                                     + ") is outside g(ran(f))");
      }
    }
    return CheckReport::pass("quasi_inverse", 0);
  }

  // Q(f): every quasi-inverse from the codomain of f to its domain, in
  // lexicographic order of tables.
  struct QuasiInverseSet {
    UnaryMap              base;
    std::vector<UnaryMap> members;
  };

  // Sections g(v) ∈ f⁻¹(v) on ran(f) are chosen first; every other element
  // is then sent into the image of the section, which is exactly the
  // second defining condition. Never empty.
  inline QuasiInverseSet enumerate_quasi_inverses(UnaryMap const& f) {
    auto const& dom   = f.domain();
    auto const& cod   = f.codomain();
    auto const  ran_f = f.range();

    std::vector<std::vector<value_type>> preimage(cod.size());
    for (value_type a = 0; a < dom.size(); ++a) {
      preimage[f(a)].push_back(a);
    }

    std::vector<std::vector<value_type>> tables;
    std::vector<value_type>              g(cod.size(), 0);

    // extend a fixed section to the elements outside ran(f)
    auto extend = [&](std::vector<value_type> const& image) {
      std::vector<value_type> free;
      for (value_type v = 0; v < cod.size(); ++v) {
        if (!detail::contains(ran_f, v)) {
          free.push_back(v);
        }
      }
      std::vector<std::size_t> choice(free.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < free.size(); ++i) {
          g[free[i]] = image[choice[i]];
        }
        tables.push_back(g);
        std::size_t i = free.size();
        while (i > 0 && ++choice[i - 1] == image.size()) {
          choice[i - 1] = 0;
          --i;
        }
        if (i == 0) {
          break;
        }
      }
    };

    std::vector<std::size_t> choice(ran_f.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < ran_f.size(); ++i) {
        g[ran_f[i]] = preimage[ran_f[i]][choice[i]];
      }
      std::vector<value_type> image;
      for (auto v : ran_f) {
        image.push_back(g[v]);
      }
      extend(detail::sorted_unique(std::move(image)));
      std::size_t i = ran_f.size();
      while (i > 0 && ++choice[i - 1] == preimage[ran_f[i - 1]].size()) {
        choice[i - 1] = 0;
        --i;
      }
      if (i == 0) {
        break;
      }
    }

    std::sort(tables.begin(), tables.end());
    QuasiInverseSet out{f, {}};
    for (auto& t : tables) {
      out.members.emplace_back(cod, dom, std::move(t));
    }
    return out;
  }

  // The lexicographically least member of Q(f).
  inline UnaryMap canonical_quasi_inverse(UnaryMap const& f) {
    auto const& dom   = f.domain();
    auto const& cod   = f.codomain();
    auto const  ran_f = f.range();
    std::vector<value_type> t(cod.size(), 0);
    std::vector<bool>       in_ran(cod.size(), false);
    for (auto v : ran_f) {
      in_ran[v] = true;
    }
    // least preimage on ran(f), then the least element of the section's image
    value_type least = static_cast<value_type>(dom.size());
    for (value_type a = dom.size(); a-- > 0;) {
      t[f(a)] = a;
    }
    for (auto v : ran_f) {
      least = std::min(least, t[v]);
    }
    for (value_type v = 0; v < cod.size(); ++v) {
      if (!in_ran[v]) {
        t[v] = least;
      }
    }
    return UnaryMap(cod, dom, std::move(t));
  }

  // h with f = g ∘ h, built as h = e ∘ f for the canonical e ∈ Q(g).
  // Requires ran(f) ⊆ ran(g); otherwise throws with the offending value.
  inline UnaryMap solve_right_factor(UnaryMap const& f, UnaryMap const& g) {
    if (!(f.codomain() == g.codomain())) {
      throw Error("solve_right_factor: f and g have different codomains");
    }
    auto const ran_g = g.range();
    for (value_type a = 0; a < f.domain().size(); ++a) {
      if (!detail::contains(ran_g, f(a))) {
        throw PreconditionError(CheckReport::fail(
            "range_inclusion",
            0,
            {{a}},
            "f(" + f.domain().name(a) + ") = " + f.codomain().name(f(a))
                + " is not in ran(g)"));
      }
    }
    return compose(canonical_quasi_inverse(g), f);
  }

  // The same for an arity part of a tabulated function: returns h_k with
  // F_k = g ∘ h_k entry for entry.
  inline std::vector<value_type> solve_right_factor(TabulatedVariadic const& f,
                                                    std::size_t              arity,
                                                    UnaryMap const&          g) {
    if (!(f.codomain() == g.codomain())) {
      throw Error("solve_right_factor: F and g have different codomains");
    }
    auto const ran_g = g.range();
    auto const e     = canonical_quasi_inverse(g);
    auto const s     = f.slice(arity);
    std::vector<value_type> h;
    h.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!detail::contains(ran_g, s[i])) {
        throw PreconditionError(CheckReport::fail(
            "range_inclusion",
            f.horizon(),
            {f.indexer().word(f.indexer().offset(arity) + i)},
            "value " + f.codomain().name(s[i]) + " is not in ran(g)"));
      }
      h.push_back(e(s[i]));
    }
    return h;
  }

}  // namespace preassoc
