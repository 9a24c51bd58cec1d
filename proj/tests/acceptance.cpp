// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "preassoc/cli.hpp"
#include "preassoc/construct.hpp"
#include "preassoc/oracle.hpp"
#include "preassoc/quasi_inverse.hpp"
#include "preassoc/real_families.hpp"
#include "tables.hpp"

using namespace preassoc;

namespace {

  // Tables collected by the criteria that build them; criterion 10 runs
  // over the preassociative ones.
  std::vector<TabulatedVariadic> corpus;

  struct Failure {
    std::string what;
  };

  void expect(bool holds, std::string const& what) {
    if (!holds) {
      throw Failure{what};
    }
  }

  template <typename T>
  std::string show(T const& v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
  }

  Codomain letters(std::size_t n) {
    return Codomain::of(Carrier::of_size(n));
  }

  ////////////////////////////////////////////////////////////////////////

  std::string counterexamples() {
    auto const tol  = 1e-12;
    auto       at   = [](real::RealFamily const& f, real::real_word const& w) { return *f(w); };
    auto       near = [&](double a, double b) { return std::abs(a - b) <= tol; };
    auto       h    = real::relu_sum_family();
    expect(near(at(h, {-1, -2}), 0) && near(at(h, {-1, 1}), 0), "relu pair values");
    expect(near(at(h, {-1, -2, 1}), 0), "H(-1,-2,1) = 0");
    expect(near(at(h, {-1, 1, 1}), 1), "H(-1,1,1) = 1");
    real::WordSampler s(0);
    expect(!real::check_preassociativity_witnessed(h, s, 0, tol).verdict, "relu not preassociative");

    auto f = real::abs_then_sum_family();
    expect(near(at(f, {1}), 1) && near(at(f, {-1}), 1), "F(1) = F(-1) = 1");
    expect(near(at(f, {1, 1}), 2), "F(1,1) = 2");
    expect(near(at(f, {1, -1}), 0), "F(1,-1) = 0");
    expect(!real::check_preassociativity_witnessed(f, s, 0, tol).verdict, "abs not preassociative");
    return "";
  }

  std::string exp_sequence() {
    auto d = real::exp_seq_demo();
    expect(std::abs(d.pair_value - 5) <= 1e-9, "H2(x1 x2) = 5, got " + show(d.pair_value));
    expect(std::abs(d.pair_value_other - 5) <= 1e-9, "H2(x1' x2') = 5, got " + show(d.pair_value_other));
    expect(std::abs(d.triple_value - 10) <= 1e-9, "H3(x1 x2 x3) = 10, got " + show(d.triple_value));
    auto const other = std::pow(3, 1.5) + std::pow(2, 1.5) + 1;
    expect(std::abs(d.triple_value_other - other) <= 1e-9,
           "H3(x1' x2' x3) = 3^1.5 + 2^1.5 + 1, got " + show(d.triple_value_other));
    expect(std::abs(d.triple_value - d.triple_value_other) > 0.9, "triples differ by > 0.9");
    return "gap " + show(std::abs(d.triple_value - d.triple_value_other));
  }

  std::string pnorm() {
    for (double p : {1.0, 2.0, 3.0}) {
      auto              f = real::pnorm_family(p);
      real::WordSampler s(static_cast<std::uint64_t>(p));
      auto              a = real::check_associativity_identity(f, s, 1000, 1e-9);
      expect(a.verdict, "p = " + show(p) + ": associativity identity fails: " + a.detail);
      auto u = real::check_unary_idempotence(f, s, 0, 1e-9);
      expect(!u.verdict && u.witness == std::vector<real::real_word>{{-1.0}},
             "p = " + show(p) + ": unary idempotence should fail at -1");
      expect(*f(real::real_word{-1.0}) == 1.0, "F1(-1) = 1");
    }
    return "3 x 1000 samples";
  }

  // is_preassociative ⟺ pairwise ⟺ letter contexts; for ε-standard
  // operations is_associative ⟺ short form ⟺ (preassociative ∧ unarily
  // range-idempotent); strong ⟺ (preassociative ∧ symmetric).
  std::size_t equivalences_on(TabulatedVariadic const& f) {
    std::size_t bad = 0;
    auto const  pre = is_preassociative(f).verdict;
    bad += pre != is_preassociative_pairwise(f).verdict;
    bad += pre != brute::preassociative_letter_contexts(f);
    bad += pre != is_preassociative_definitional(f).verdict;
    bad += is_strongly_preassociative(f).verdict != (pre && is_symmetric(f).verdict);
    if (f.is_operation() && is_epsilon_standard(f).verdict) {
      auto const assoc = is_associative(f).verdict;
      bad += assoc != is_associative_short(f).verdict;
      bad += assoc != (pre && is_unarily_range_idempotent(f).verdict);
    }
    return bad;
  }

  // Preassociative extensions of every (F₁, F₂, g) on a two-letter carrier.
  std::vector<TabulatedVariadic> synthesized(std::size_t horizon) {
    std::vector<TabulatedVariadic> out;
    auto const                     x = Carrier::of_size(2);
    auto const                     y = Codomain::operations_on(x);
    for (auto const& t1 : test::all_tables(2, 2)) {
      UnaryMap f1(letters(2), y, t1);
      for (auto const& t2 : test::all_tables(4, 2)) {
        BinaryMap f2(x, y, t2);
        for (auto const& g : enumerate_quasi_inverses(f1).members) {
          if (check_preassociative_extension(f1, f2, g).verdict()) {
            out.push_back(extend_preassociative(y.epsilon(), f1, f2, g, horizon));
          }
        }
      }
    }
    return out;
  }

  std::string oracle_equivalences() {
    std::mt19937_64                rng(2024);
    std::vector<TabulatedVariadic> tables;
    for (int i = 0; i < 300; ++i) {
      switch (i % 3) {
        case 0: tables.push_back(test::random_operation(rng, 2, 3, true)); break;
        case 1: tables.push_back(test::random_operation(rng, 2, 3, false)); break;
        default: tables.push_back(test::random_valued(rng, 2, 2, 3)); break;
      }
    }
    auto const synth = synthesized(3);
    expect(!synth.empty(), "no synthesized tables");
    tables.insert(tables.end(), synth.begin(), synth.end());
    for (auto const& f2 : test::all_binary(2)) {
      auto id = UnaryMap::identity(letters(2));
      if (check_associative_extension(id, f2).verdict()) {
        tables.push_back(extend_associative(id, f2, 3));
      }
    }
    std::size_t bad = 0, preassociative = 0;
    for (auto const& f : tables) {
      bad += equivalences_on(f);
      preassociative += is_preassociative(f).verdict;
    }
    corpus.insert(corpus.end(), tables.begin(), tables.end());
    expect(bad == 0, show(bad) + " discrepancies over " + show(tables.size()) + " tables");
    expect(preassociative > 0, "sample has no preassociative table");
    return show(tables.size()) + " tables, " + show(preassociative) + " preassociative";
  }

  std::string semigroup_census() {
    auto const  id = UnaryMap::identity(letters(2));
    std::size_t count = 0;
    for (auto const& f2 : test::all_binary(2)) {
      auto const v = check_associative_extension(id, f2).verdict();
      expect(v == brute::binary_associative(f2), "extension verdict differs from direct check");
      count += v;
    }
    expect(count == 8, "expected 8, got " + show(count));
    expect(cli::detail::semigroup_census(2) == 8, "demo census");
    return "8 of 16";
  }

  std::string extension_uniqueness() {
    std::size_t pairs = 0, perturbed = 0;
    for (std::size_t n = 1; n <= 2; ++n) {
      std::size_t here = 0;
      for (auto const& t1 : test::all_tables(n, n)) {
        UnaryMap f1(letters(n), letters(n), t1);
        for (auto const& f2 : test::all_binary(n)) {
          if (!check_associative_extension(f1, f2).verdict()) {
            continue;
          }
          ++here;
          auto g = extend_associative(f1, f2, 4);
          expect(is_associative(g).verdict, "synthesized table not associative");
          corpus.push_back(g);
          auto const& idx = g.indexer();
          for (std::size_t i = idx.offset(3); i < g.number_of_words(); ++i) {
            for (value_type v = 0; v < g.codomain().size(); ++v) {
              if (v == g.at(i)) {
                continue;
              }
              auto t = g.table();
              t[i]   = v;
              TabulatedVariadic h(g.carrier(), g.codomain(), 4, std::move(t));
              ++perturbed;
              expect(!is_associative(h).verdict,
                     "perturbed entry " + to_string(g.carrier(), idx.word(i)) + " stays associative");
            }
          }
        }
      }
      if (n == 2) {
        expect(here == 10, "expected 10 valid pairs on two letters, got " + show(here));
      }
      pairs += here;
    }
    expect(pairs == 11, "expected 11 valid pairs, got " + show(pairs));
    return show(pairs) + " pairs, " + show(perturbed) + " perturbations";
  }

  std::string low_arity_determination() {
    std::size_t compared = 0;
    auto        run      = [&](std::size_t n, UnaryMap const& f1, BinaryMap const& f2) {
      auto const&                    y = f1.codomain();
      std::vector<TabulatedVariadic> built;
      for (auto const& g : enumerate_quasi_inverses(f1).members) {
        if (!check_preassociative_extension(f1, f2, g).verdict()) {
          continue;
        }
        try {
          built.push_back(extend_preassociative(y.epsilon(), f1, f2, g, 4));
        } catch (PreconditionError const&) {
          return;
        }
      }
      for (std::size_t i = 1; i < built.size(); ++i) {
        expect(built[i] == built[0], "tables from different g disagree (|X| = " + show(n) + ")");
        ++compared;
      }
      for (auto const& t : built) {
        expect(is_preassociative(t).verdict && is_unarily_quasi_range_idempotent(t).verdict,
               "extension is not preassociative and UQRI");
      }
      if (!built.empty()) {
        corpus.push_back(built[0]);
      }
    };
    {
      auto const x = Carrier::of_size(2);
      auto const y = Codomain::operations_on(x);
      for (auto const& t1 : test::all_tables(2, 2)) {
        for (auto const& t2 : test::all_tables(4, 2)) {
          run(2, UnaryMap(letters(2), y, t1), BinaryMap(x, y, t2));
        }
      }
    }
    {
      // three letters valued in {p, q, ε}; F₂ = F₁ ∘ (binary rule) keeps the
      // range inclusion
      auto const                                x = Carrier::of_size(3);
      Codomain const                            y({"p", "q"}, true);
      std::mt19937_64                           rng(77);
      std::uniform_int_distribution<value_type> pick(0, 2);
      for (auto const& t1 : test::all_tables(3, 2)) {
        UnaryMap f1(letters(3), y, t1);
        for (int k = 0; k < 200; ++k) {
          std::vector<value_type> t2(9);
          for (auto& v : t2) {
            v = f1(pick(rng));
          }
          run(3, f1, BinaryMap(x, y, t2));
        }
      }
      // max and projections through a two-valued F₁
      for (auto const& t1 : test::all_tables(3, 2)) {
        UnaryMap f1(letters(3), y, t1);
        run(3, f1, BinaryMap::from_rule(x, y, [&](auto a, auto b) { return f1(std::max(a, b)); }));
        run(3, f1, BinaryMap::from_rule(x, y, [&](auto a, auto) { return f1(a); }));
      }
    }
    expect(compared > 0, "no parts admitted two valid quasi-inverses");
    return show(compared) + " pairs of tables compared";
  }

  std::string quasi_inverses() {
    Codomain abc({"a", "b", "c"}, false);
    auto     id = UnaryMap::identity(abc);
    auto     q  = enumerate_quasi_inverses(id);
    expect(q.members.size() == 1 && q.members[0] == id, "Q(id) = {id}");

    UnaryMap f(abc, abc, {0, 0, 2});
    auto     members = enumerate_quasi_inverses(f).members;
    expect(members.size() == 4, "expected 4 members, got " + show(members.size()));
    std::vector<std::vector<value_type>> filtered, enumerated;
    for (auto const& t : test::all_tables(3, 3)) {
      if (brute::quasi_inverse(f.table(), t)) {
        filtered.push_back(t);
      }
    }
    for (auto const& g : members) {
      enumerated.push_back(g.table());
      expect(is_quasi_inverse(f, g).verdict && is_quasi_inverse(g, f).verdict, "symmetry");
      std::set<value_type> img_f, img_g;
      for (auto v : g.range()) {
        img_f.insert(f(v));
      }
      for (auto v : f.range()) {
        img_g.insert(g(v));
      }
      expect(img_f.size() == g.range().size(), "f one-to-one on ran(g)");
      expect(img_g.size() == f.range().size(), "g one-to-one on ran(f)");
    }
    expect(filtered.size() == 4 && enumerated == filtered, "enumeration differs from filtering all 27 maps");
    return "";
  }

  std::string factorization_round_trip() {
    std::vector<BinaryMap> associative;
    auto const             id = UnaryMap::identity(letters(3));
    for (auto const& f2 : test::all_binary(3)) {
      if (brute::binary_associative(f2)) {
        associative.push_back(f2);
      }
    }
    expect(associative.size() == 113, "expected 113 associative operations, got " + show(associative.size()));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
      auto const& f2 = associative[std::uniform_int_distribution<std::size_t>(0, associative.size() - 1)(rng)];
      std::vector<value_type> sigma{0, 1, 2};
      std::shuffle(sigma.begin(), sigma.end(), rng);
      auto g = extend_associative(id, f2, 4);
      auto f = test::operation(3, 4, [&](word_type const& w) { return sigma[g(w)]; });
      corpus.push_back(f);
      auto fac = factorize(f);
      expect(is_associative(fac.inner).verdict, "inner operation not associative");
      for (std::size_t k = 1; k < f.number_of_words(); ++k) {
        auto h    = fac.inner.at(k);
        auto back = fac.outer(*fac.outer.domain().find(f.carrier().symbol(h)));
        expect(translate(fac.outer.codomain(), back, f.codomain()) == std::optional<value_type>(f.at(k)),
               "f ∘ H♭ ≠ F♭ at " + to_string(f.carrier(), f.indexer().word(k)));
      }
      for (auto const& r : check_factorization(f, fac)) {
        expect(r.verdict, "factorization check " + r.property);
      }
    }
    return "50 tables";
  }

  std::string constant_parts() {
    corpus.push_back(test::constant_parts(4));
    corpus.push_back(test::length_table(4));
    std::size_t checked = 0;
    for (auto const& f : corpus) {
      if (!is_preassociative(f).verdict) {
        continue;
      }
      ++checked;
      expect(constant_part_check(f).verdict, "constant-part propagation violated");
      // independent restatement of both laws
      auto const l        = f.horizon();
      auto       constant = [&](std::size_t k) {
        auto s = f.slice(k);
        return std::all_of(s.begin(), s.end(), [&](auto v) { return v == s[0]; });
      };
      for (std::size_t n = 1; n < l; ++n) {
        if (constant(n)) {
          expect(constant(n + 1), "F_n constant but F_{n+1} not");
          if (f.slice(n)[0] == f.slice(n + 1)[0]) {
            for (std::size_t m = n; m <= l; ++m) {
              expect(constant(m) && f.slice(m)[0] == f.slice(n)[0], "shared constant does not persist");
            }
          }
        }
      }
    }
    expect(checked > 0, "corpus has no preassociative table");
    return show(checked) + " preassociative tables";
  }

}  // namespace

int main() {
  struct Criterion {
    int                   number;
    std::string           name;
    double                limit_seconds;
    std::function<std::string()> run;
  };
  std::vector<Criterion> criteria{
      {1, "counterexample reproduction", 1, counterexamples},
      {2, "arity-indexed exponential demo", 1, exp_sequence},
      {3, "p-norm associative, not unarily idempotent", 2, pnorm},
      {4, "oracle equivalences", 30, oracle_equivalences},
      {5, "semigroup census", 1, semigroup_census},
      {6, "extension uniqueness", 60, extension_uniqueness},
      {7, "determination by low arities", 10, low_arity_determination},
      {8, "quasi-inverses", 1, quasi_inverses},
      {9, "factorization round-trip", 30, factorization_round_trip},
      {10, "constant-part propagation", 10, constant_parts},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    auto        start = std::chrono::steady_clock::now();
    std::string error, note;
    try {
      note = c.run();
    } catch (Failure const& f) {
      error = f.what;
    } catch (std::exception const& e) {
      error = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && secs > c.limit_seconds) {
      error = "took " + show(secs) + " s, limit " + show(c.limit_seconds) + " s";
    }
    std::cout << "criterion " << c.number << " (" << c.name << "): " << (error.empty() ? "PASS" : "FAIL")
              << " [" << std::fixed << std::setprecision(3) << secs << " s]";
    std::cout.unsetf(std::ios::fixed);
    if (!error.empty()) {
      std::cout << " " << error;
      ++failures;
    } else if (!note.empty()) {
      std::cout << " " << note;
    }
    std::cout << '\n';
  }
  return failures == 0 ? 0 : 1;
}
