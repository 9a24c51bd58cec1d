// Rule-defined variadic functions over the reals, with sampled checks of
// the associativity identity and of preassociativity.
//
// Floats admit no exhaustive kernel, so preassociativity is checked on
// pairs (y, y') of equal value produced constructively by each family.
// Sampled letters are multiples of 1/1024 in [-10, 10], so sums of a few
// letters are exact and sum-preserving rearrangements give bit-identical
// sums.
//
// Values are compared with an absolute tolerance up to magnitude 1e3 and a
// proportionally scaled one beyond (exponential families leave that range
// quickly).

#pragma once

#include <algorithm>   // for shuffle, max
#include <cmath>       // for pow, abs, exp, log, isfinite
#include <cstddef>     // for size_t
#include <cstdint>     // for uint64_t
#include <functional>  // for function
#include <map>         // for map
#include <optional>    // for optional
#include <random>      // for mt19937_64, uniform_int_distribution
#include <span>        // for span
#include <string>      // for string
#include <utility>     // for pair
#include <vector>      // for vector

#include "core.hpp"

namespace preassoc::real {

  using real_word = std::vector<double>;
  // nullopt is ε
  using real_value = std::optional<double>;

  using RealCheckReport = BasicCheckReport<real_word>;

  inline constexpr double default_tolerance = 1e-9;

  inline bool approx_equal(real_value a, real_value b, double tol) {
    if (!a || !b) {
      return !a && !b;
    }
    auto scale = std::max({1.0, std::abs(*a) / 1e3, std::abs(*b) / 1e3});
    return std::abs(*a - *b) <= tol * scale;
  }

  inline std::string to_string(real_value v) {
    return v ? std::to_string(*v) : std::string("ε");
  }

  // Seeded source of letters and words.
  class WordSampler {
   public:
    explicit WordSampler(std::uint64_t seed) : _rng(seed) {}

    // A multiple of 1/1024 in [-10, 10].
    double letter() {
      std::uniform_int_distribution<int> d(-10 * 1024, 10 * 1024);
      return d(_rng) / 1024.0;
    }

    real_word word(std::size_t min_len, std::size_t max_len) {
      std::uniform_int_distribution<std::size_t> d(min_len, max_len);
      real_word                                  w(d(_rng));
      for (auto& x : w) {
        x = letter();
      }
      return w;
    }

    std::size_t index(std::size_t bound) {
      return std::uniform_int_distribution<std::size_t>(0, bound - 1)(_rng);
    }

    std::mt19937_64& engine() noexcept {
      return _rng;
    }

   private:
    std::mt19937_64 _rng;
  };

  // A pair of equal-valued words together with a context: the check
  // compares F(x y z) with F(x y' z).
  struct ContextWitness {
    real_word x, y, yy, z;
  };

  struct RealFamily {
    using rule_type      = std::function<real_value(std::span<double const>)>;
    using generator_type = std::function<std::pair<real_word, real_word>(WordSampler&)>;

    std::string                   name;
    std::map<std::string, double> parameters;
    bool                          epsilon_standard = true;
    rule_type                     rule;
    // produces pairs (y, y') with equal value; empty if unsupported
    generator_type                witness_generator;
    // instances checked before any sampled ones
    std::vector<ContextWitness>   fixed_witnesses;

    real_value operator()(std::span<double const> w) const {
      for (auto x : w) {
        if (!std::isfinite(x)) {
          throw Error(name + ": non-finite input");
        }
      }
      return rule(w);
    }
  };

  inline real_word concat(real_word const& x, real_word const& y, real_word const& z = {}) {
    real_word out(x);
    out.insert(out.end(), y.begin(), y.end());
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Witness-pair generators
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline double plain_sum(std::span<double const> w) {
      double s = 0;
      for (auto x : w) {
        s += x;
      }
      return s;
    }

    inline real_word permuted(WordSampler& s, real_word w) {
      std::shuffle(w.begin(), w.end(), s.engine());
      return w;
    }

    // Same sum: a permutation, a transfer of mass between two letters, or
    // an appended zero.
    inline std::pair<real_word, real_word> sum_preserving(WordSampler& s) {
      auto y = s.word(1, 3);
      switch (s.index(3)) {
        case 0:
          return {y, permuted(s, y)};
        case 1: {
          auto yy = y;
          yy.push_back(0.0);
          return {y, permuted(s, yy)};
        }
        default: {
          if (y.size() < 2) {
            y.push_back(s.letter());
          }
          auto yy = y;
          // multiples of 1/1024 stay exact
          double d = s.index(2048) / 1024.0 - 1.0;
          yy[0] += d;
          yy[1] -= d;
          return {y, yy};
        }
      }
    }

    // Same multiset of absolute values.
    inline std::pair<real_word, real_word> sign_and_order(WordSampler& s) {
      auto y  = s.word(1, 3);
      auto yy = permuted(s, y);
      for (auto& x : yy) {
        if (s.index(2) == 1) {
          x = -x;
        }
      }
      return {y, yy};
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Families
  ////////////////////////////////////////////////////////////////////////

  inline double parameter(std::map<std::string, double> const& p,
                          std::string const&                   key,
                          double                               fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
  }

  // F_n(x) = Σ x_i.
  inline RealFamily sum_family() {
    return {"sum",
            {},
            true,
            [](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              return detail::plain_sum(w);
            },
            detail::sum_preserving,
            {}};
  }

  // F_n(x) = (Σ |x_i|^p)^{1/p}, p ≥ 1. With unary_id = 1, F₁ = id instead.
  inline RealFamily pnorm_family(double p, bool unary_id = false) {
    if (!(p >= 1) || !std::isfinite(p)) {
      throw Error("pnorm: p must be a finite real ≥ 1");
    }
    return {"pnorm",
            {{"p", p}, {"unary_id", unary_id ? 1.0 : 0.0}},
            true,
            [p, unary_id](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              if (unary_id && w.size() == 1) {
                return w[0];
              }
              double s = 0;
              for (auto x : w) {
                s += std::pow(std::abs(x), p);
              }
              return std::pow(s, 1 / p);
            },
            unary_id ? RealFamily::generator_type() : detail::sign_and_order,
            {}};
  }

  // F_n(x) = exp(Σ x_i).
  inline RealFamily exp_sum_family() {
    return {"exp_sum",
            {},
            true,
            [](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              return std::exp(detail::plain_sum(w));
            },
            detail::sum_preserving,
            {}};
  }

  // F_n(x) = c Σ x_i, c ≠ 0.
  inline RealFamily scaled_sum_family(double c) {
    if (c == 0 || !std::isfinite(c)) {
      throw Error("scaled_sum: c must be finite and nonzero");
    }
    return {"scaled_sum",
            {{"c", c}},
            true,
            [c](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              return c * detail::plain_sum(w);
            },
            detail::sum_preserving,
            {}};
  }

  // F_n(x) = Σ x_i².
  inline RealFamily squared_sum_family() {
    return {"squared_sum",
            {},
            true,
            [](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              double s = 0;
              for (auto x : w) {
                s += x * x;
              }
              return s;
            },
            detail::sign_and_order,
            {}};
  }

  // F(x) = |x|, with F(ε) = 0; standard but not ε-standard.
  inline RealFamily length_family() {
    return {"length",
            {},
            false,
            [](std::span<double const> w) -> real_value {
              return static_cast<double>(w.size());
            },
            [](WordSampler& s) {
              auto y  = s.word(0, 3);
              auto yy = y;
              for (auto& x : yy) {
                x = s.letter();
              }
              return std::pair{y, yy};
            },
            {}};
  }

  // H_n(x) = max{Σ x_i, 0}.
  inline RealFamily relu_sum_family() {
    return {"relu_sum",
            {},
            true,
            [](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              return std::max(detail::plain_sum(w), 0.0);
            },
            [](WordSampler& s) {
              if (s.index(2) == 0) {
                return detail::sum_preserving(s);
              }
              // two words with negative sums, both sent to 0
              auto negative = [&s] {
                real_word w;
                do {
                  w = s.word(1, 3);
                } while (detail::plain_sum(w) >= 0);
                return w;
              };
              auto y = negative();
              return std::pair{y, negative()};
            },
            {{{}, {-1, -2}, {-1, 1}, {1}}}};
  }

  // F₁(x) = |x|, F_n(x) = Σ x_i for n ≥ 2.
  inline RealFamily abs_then_sum_family() {
    return {"abs_then_sum",
            {},
            true,
            [](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              if (w.size() == 1) {
                return std::abs(w[0]);
              }
              return detail::plain_sum(w);
            },
            [](WordSampler& s) {
              auto a = s.letter();
              return std::pair{real_word{a}, real_word{-a}};
            },
            {{{1}, {1}, {-1}, {}}}};
  }

  // H_n(x) = Σ exp(n x_i): the sum composed with an arity-dependent map.
  inline RealFamily exp_seq_family() {
    return {"exp_seq",
            {},
            true,
            [](std::span<double const> w) -> real_value {
              if (w.empty()) {
                return std::nullopt;
              }
              auto const n = static_cast<double>(w.size());
              double     s = 0;
              for (auto x : w) {
                s += std::exp(n * x);
              }
              return s;
            },
            // a letter y and a pair (u, v) with exp(2u) + exp(2v) = exp(y)
            [](WordSampler& s) {
              auto y = s.letter();
              auto u = y / 2 - std::log(2.0) / 2 - s.index(1024) / 1024.0;
              auto v = std::log(std::exp(y) - std::exp(2 * u)) / 2;
              return std::pair{real_word{y}, real_word{u, v}};
            },
            {{{},
              {std::log(1.0), std::log(2.0)},
              {0.5 * std::log(3.0), 0.5 * std::log(2.0)},
              {0.0}}}};
  }

  inline std::vector<std::string> family_names() {
    return {"abs_then_sum",
            "exp_seq",
            "exp_sum",
            "length",
            "pnorm",
            "relu_sum",
            "scaled_sum",
            "squared_sum",
            "sum"};
  }

  // Look up a family by name. Parameters: pnorm takes p (default 2) and
  // unary_id (0 or 1); scaled_sum takes c (default 2). Unknown parameters
  // are rejected.
  inline RealFamily make_family(std::string const&                   name,
                                std::map<std::string, double> const& params = {}) {
    auto allow = [&](std::vector<std::string> const& keys) {
      for (auto const& [k, v] : params) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
          throw Error(name + ": unknown parameter \"" + k + "\"");
        }
      }
    };
    if (name == "sum") {
      allow({});
      return sum_family();
    } else if (name == "pnorm") {
      allow({"p", "unary_id"});
      return pnorm_family(parameter(params, "p", 2),
                          parameter(params, "unary_id", 0) != 0);
    } else if (name == "exp_sum") {
      allow({});
      return exp_sum_family();
    } else if (name == "scaled_sum") {
      allow({"c"});
      return scaled_sum_family(parameter(params, "c", 2));
    } else if (name == "squared_sum") {
      allow({});
      return squared_sum_family();
    } else if (name == "length") {
      allow({});
      return length_family();
    } else if (name == "relu_sum") {
      allow({});
      return relu_sum_family();
    } else if (name == "abs_then_sum") {
      allow({});
      return abs_then_sum_family();
    } else if (name == "exp_seq") {
      allow({});
      return exp_seq_family();
    }
    throw Error("unknown family \"" + name + "\"");
  }

  ////////////////////////////////////////////////////////////////////////
  // Sampled checks
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::size_t max_sampled_part = 3;

  // |F(xyz) − F(x F(y) z)| within tolerance on `count` sampled
  // decompositions; F(y) = ε collapses to xz. Witness (x, y, z).
  inline RealCheckReport check_associativity_identity(RealFamily const& f,
                                                      WordSampler&      s,
                                                      std::size_t       count,
                                                      double tol = default_tolerance) {
    if (!f.epsilon_standard) {
      throw Error(f.name + ": the associativity identity needs an ε-standard family");
    }
    for (std::size_t i = 0; i < count; ++i) {
      auto x  = s.word(0, max_sampled_part);
      auto y  = s.word(0, max_sampled_part);
      auto z  = s.word(0, max_sampled_part);
      auto fy = f(y);
      auto lhs = f(concat(x, y, z));
      auto rhs = fy ? f(concat(x, real_word{*fy}, z)) : f(concat(x, z));
      if (!approx_equal(lhs, rhs, tol)) {
        return RealCheckReport::fail("associative",
                                     3 * max_sampled_part,
                                     {x, y, z},
                                     to_string(lhs) + " ≠ " + to_string(rhs));
      }
    }
    return RealCheckReport::pass("associative", 3 * max_sampled_part);
  }

  // F(y) = F(y') ⟹ F(xyz) = F(xy'z) on the family's fixed instances, then
  // on `count` generated pairs in random contexts. Witness (x, y, y', z).
  inline RealCheckReport check_preassociativity_witnessed(RealFamily const& f,
                                                          WordSampler&      s,
                                                          std::size_t       count,
                                                          double tol = default_tolerance) {
    if (!f.witness_generator) {
      throw Error(f.name + ": no witness-pair generator");
    }
    auto check = [&](ContextWitness const& c) -> std::optional<RealCheckReport> {
      auto fy = f(c.y), fyy = f(c.yy);
      if (!approx_equal(fy, fyy, tol)) {
        throw Error(f.name + ": generated pair has unequal values "
                    + to_string(fy) + " and " + to_string(fyy));
      }
      auto lhs = f(concat(c.x, c.y, c.z));
      auto rhs = f(concat(c.x, c.yy, c.z));
      if (!approx_equal(lhs, rhs, tol)) {
        return RealCheckReport::fail("preassociative",
                                     3 * max_sampled_part + 1,
                                     {c.x, c.y, c.yy, c.z},
                                     to_string(lhs) + " ≠ " + to_string(rhs));
      }
      return std::nullopt;
    };
    for (auto const& c : f.fixed_witnesses) {
      if (auto r = check(c)) {
        return *r;
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      auto [y, yy] = f.witness_generator(s);
      auto x       = s.word(0, 2);
      auto z       = s.word(0, 2);
      if (auto r = check({x, y, yy, z})) {
        return *r;
      }
    }
    return RealCheckReport::pass("preassociative", 3 * max_sampled_part + 1);
  }

  // F₁ = id, probed at -1, 0, 1, 2, -2 and then at `count` sampled letters.
  inline RealCheckReport check_unary_idempotence(RealFamily const& f,
                                                 WordSampler&      s,
                                                 std::size_t       count,
                                                 double tol = default_tolerance) {
    real_word probes{-1, 0, 1, 2, -2};
    for (std::size_t i = 0; i < count; ++i) {
      probes.push_back(s.letter());
    }
    for (auto x : probes) {
      auto v = f(real_word{x});
      if (!approx_equal(v, x, tol)) {
        return RealCheckReport::fail("unarily_idempotent",
                                     1,
                                     {{x}},
                                     "F1(" + std::to_string(x) + ") = " + to_string(v));
      }
    }
    return RealCheckReport::pass("unarily_idempotent", 1);
  }

  // F₁ ∘ F♭ = F♭ on `count` sampled nonempty words.
  inline RealCheckReport check_unary_range_idempotence(RealFamily const& f,
                                                       WordSampler&      s,
                                                       std::size_t       count,
                                                       double tol = default_tolerance) {
    for (std::size_t i = 0; i < count; ++i) {
      auto w = s.word(1, 2 * max_sampled_part);
      auto v = f(w);
      if (!v || !approx_equal(f(real_word{*v}), v, tol)) {
        return RealCheckReport::fail("unarily_range_idempotent",
                                     2 * max_sampled_part,
                                     {w},
                                     "F1(F(w)) ≠ F(w)");
      }
    }
    return RealCheckReport::pass("unarily_range_idempotent", 2 * max_sampled_part);
  }

  ////////////////////////////////////////////////////////////////////////
  // The arity-indexed exponential counterexample
  ////////////////////////////////////////////////////////////////////////

  struct ExpSeqDemo {
    real_word x, xx;  // (x₁, x₂) and (x'₁, x'₂)
    double    z;      // x₃
    double    pair_value, pair_value_other;
    double    triple_value, triple_value_other;
  };

  // H_n = F_n ∘ (g_n, …, g_n) with F the sum and g_n(x) = exp(nx), at
  // x = (log 1, log 2), x' = (½ log 3, ½ log 2), x₃ = 0: the pairs have equal
  // value but the triples do not.
  inline ExpSeqDemo exp_seq_demo() {
    auto const       h = exp_seq_family();
    ExpSeqDemo d;
    d.x  = {std::log(1.0), std::log(2.0)};
    d.xx = {0.5 * std::log(3.0), 0.5 * std::log(2.0)};
    d.z  = 0.0;
    d.pair_value         = *h(d.x);
    d.pair_value_other   = *h(d.xx);
    d.triple_value       = *h(concat(d.x, {d.z}));
    d.triple_value_other = *h(concat(d.xx, {d.z}));
    return d;
  }

  ////////////////////////////////////////////////////////////////////////
  // Factorization
  ////////////////////////////////////////////////////////////////////////

  // F♭ = outer ∘ H♭ with H an associative family.
  struct FamilyFactorization {
    RealFamily                    inner;
    std::string                   outer_name;
    std::function<double(double)> outer;
    double                        max_error = 0;
    bool                          verified  = false;
  };

  // Registered factorizations: sum = id ∘ sum, exp_sum = exp ∘ sum,
  // scaled_sum = (t ↦ ct) ∘ sum, squared_sum = (t ↦ t²) ∘ 2-norm, and
  // pnorm = id ∘ pnorm (F₁ = |·| is the identity on ran(F♭) = [0, ∞)).
  // Verified on `count` sampled nonempty words.
  inline FamilyFactorization factorize_family(RealFamily const& f,
                                              WordSampler&      s,
                                              std::size_t       count = 1000,
                                              double tol = default_tolerance) {
    FamilyFactorization out{sum_family(), "id", [](double t) { return t; }};
    if (f.name == "exp_sum") {
      out.outer_name = "exp";
      out.outer      = [](double t) { return std::exp(t); };
    } else if (f.name == "scaled_sum") {
      auto c         = parameter(f.parameters, "c", 2);
      out.outer_name = "t -> " + std::to_string(c) + " * t";
      out.outer      = [c](double t) { return c * t; };
    } else if (f.name == "squared_sum") {
      out.inner      = pnorm_family(2);
      out.outer_name = "t -> t * t";
      out.outer      = [](double t) { return t * t; };
    } else if (f.name == "pnorm" && parameter(f.parameters, "unary_id", 0) == 0) {
      out.inner = f;
    } else if (f.name != "sum") {
      throw Error(f.name + ": no registered factorization");
    }
    out.verified = true;
    for (std::size_t i = 0; i < count; ++i) {
      auto w   = s.word(1, 2 * max_sampled_part);
      auto lhs = out.outer(*out.inner(w));
      auto rhs = *f(w);
      auto err = std::abs(lhs - rhs) / std::max({1.0, std::abs(rhs) / 1e3});
      out.max_error = std::max(out.max_error, err);
      if (!approx_equal(lhs, rhs, tol)) {
        out.verified = false;
      }
    }
    return out;
  }

}  // namespace preassoc::real
