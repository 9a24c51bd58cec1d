// Small tables shared by the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "preassoc/core.hpp"

namespace preassoc::test {

  // Operation with F(ε) = ε and F(w) = rule(w) on nonempty words.
  template <typename Rule>
  TabulatedVariadic operation(std::size_t n, std::size_t horizon, Rule&& rule) {
    auto const x = Carrier::of_size(n);
    auto const y = Codomain::operations_on(x);
    return TabulatedVariadic::from_rule(x, y, horizon, [&](word_type const& w) -> value_type {
      return w.empty() ? y.epsilon() : static_cast<value_type>(rule(w));
    });
  }

  inline TabulatedVariadic mod_sum(std::size_t n, std::size_t horizon) {
    return operation(n, horizon, [n](word_type const& w) {
      return std::accumulate(w.begin(), w.end(), std::size_t{0}) % n;
    });
  }

  inline TabulatedVariadic max_table(std::size_t n, std::size_t horizon) {
    return operation(n, horizon, [](word_type const& w) {
      return *std::max_element(w.begin(), w.end());
    });
  }

  // F₁ = id, F₂ first projection, F_n last projection for n ≥ 3.
  inline TabulatedVariadic projection_table(std::size_t n, std::size_t horizon) {
    return operation(n, horizon, [](word_type const& w) {
      return w.size() == 2 ? w.front() : w.back();
    });
  }

  // F₁ = id and F_n = first letter for n ≥ 2.
  inline TabulatedVariadic first_projection(std::size_t n, std::size_t horizon) {
    return operation(n, horizon, [](word_type const& w) { return w.front(); });
  }

  // F(x) = |x| on X = {a, b}, valued in {0, …, L}.
  inline TabulatedVariadic length_table(std::size_t horizon) {
    Carrier                  x({"a", "b"});
    std::vector<std::string> names;
    for (std::size_t k = 0; k <= horizon; ++k) {
      names.push_back(std::to_string(k));
    }
    return TabulatedVariadic::from_rule(
        x, Codomain(names, false), horizon, [](word_type const& w) { return w.size(); });
  }

  // F(ε) = e, F₁ ≡ c, F_n ≡ c′ for n ≥ 2, over {e, c, c′}.
  inline TabulatedVariadic constant_parts(std::size_t horizon) {
    return TabulatedVariadic::from_rule(Carrier({"a", "b"}),
                                        Codomain({"e", "c", "c'"}, false),
                                        horizon,
                                        [](word_type const& w) { return std::min<std::size_t>(w.size(), 2); });
  }

  // X = {a, b}, L = 2, F(a) = F(b) but F(aa) ≠ F(ba).
  inline TabulatedVariadic two_row() {
    Carrier  x({"a", "b"});
    Codomain y({"0", "1", "2"}, true);
    // ε, a, b, aa, ab, ba, bb
    return TabulatedVariadic(x, y, 2, {y.epsilon(), 2, 2, 1, 0, 0, 0});
  }

  inline UnaryMap unary(Codomain const& dom, Codomain const& cod, std::vector<value_type> t) {
    return UnaryMap(dom, cod, std::move(t));
  }

  // σ as a map on the carrier of size n, from its table.
  inline UnaryMap permutation(std::size_t n, std::vector<value_type> sigma) {
    auto const c = Codomain::of(Carrier::of_size(n));
    return UnaryMap(c, c, std::move(sigma));
  }

  // Uniform random table over the operation codomain of an n-letter
  // carrier. With eps_standard, F(ε) = ε and nonempty words take letters.
  inline TabulatedVariadic random_operation(std::mt19937_64& rng,
                                            std::size_t      n,
                                            std::size_t      horizon,
                                            bool             eps_standard) {
    auto const                                x = Carrier::of_size(n);
    auto const                                y = Codomain::operations_on(x);
    std::uniform_int_distribution<value_type> letter(0, static_cast<value_type>(n - 1));
    std::uniform_int_distribution<value_type> any(0, static_cast<value_type>(n));
    WordIndexer                               idx(n, horizon);
    std::vector<value_type>                   t(idx.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = eps_standard ? (i == 0 ? y.epsilon() : letter(rng)) : any(rng);
    }
    return TabulatedVariadic(x, y, horizon, std::move(t));
  }

  // Random table over a small named codomain {0, …, m-1}, no ε.
  inline TabulatedVariadic random_valued(std::mt19937_64& rng,
                                         std::size_t      n,
                                         std::size_t      m,
                                         std::size_t      horizon) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < m; ++k) {
      names.push_back("v" + std::to_string(k));
    }
    std::uniform_int_distribution<value_type> any(0, static_cast<value_type>(m - 1));
    WordIndexer             idx(n, horizon);
    std::vector<value_type> t(idx.size());
    for (auto& v : t) {
      v = any(rng);
    }
    return TabulatedVariadic(Carrier::of_size(n), Codomain(names, false), horizon, std::move(t));
  }

  // Every binary table on an n-letter carrier, valued in the carrier.
  inline std::vector<BinaryMap> all_binary(std::size_t n) {
    auto const              x = Carrier::of_size(n);
    std::size_t             total = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
      total *= n;
    }
    std::vector<BinaryMap> out;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<value_type> t(n * n);
      auto                    c = code;
      for (auto& v : t) {
        v = static_cast<value_type>(c % n);
        c /= n;
      }
      out.emplace_back(x, Codomain::of(x), std::move(t));
    }
    return out;
  }

  // Every map from a set of size a to a set of size b, as tables.
  inline std::vector<std::vector<value_type>> all_tables(std::size_t a, std::size_t b) {
    std::vector<std::vector<value_type>> out;
    std::vector<value_type>              t(a, 0);
    while (true) {
      out.push_back(t);
      std::size_t i = a;
      while (i > 0 && t[i - 1] + 1 == b) {
        t[--i] = 0;
      }
      if (i == 0) {
        return out;
      }
      ++t[i - 1];
    }
  }

}  // namespace preassoc::test
