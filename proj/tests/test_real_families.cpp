#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "preassoc/real_families.hpp"

using namespace preassoc;
using namespace preassoc::real;

namespace {
  double eval(RealFamily const& f, real_word const& w) {
    auto v = f(w);
    REQUIRE(v.has_value());
    return *v;
  }
}  // namespace

TEST_CASE("family evaluation", "[real]") {
  CHECK(eval(sum_family(), {1, 2, 3}) == 6);
  CHECK_FALSE(sum_family()(real_word{}).has_value());
  CHECK(eval(pnorm_family(2), {3, 4}) == Catch::Approx(5).margin(1e-12));
  CHECK(eval(exp_seq_family(), {0, std::log(2.0)}) == Catch::Approx(5).margin(1e-12));
  CHECK(eval(length_family(), {}) == 0);
  CHECK(eval(length_family(), {7, 7}) == 2);
  CHECK(eval(scaled_sum_family(2), {1, 2}) == 6);
  CHECK(eval(squared_sum_family(), {1, 2}) == 5);
  CHECK_THROWS_AS(pnorm_family(0.5), Error);
  CHECK_THROWS_AS(sum_family()(real_word{1, NAN}), Error);
  CHECK_THROWS_AS(sum_family()(real_word{INFINITY}), Error);
}

TEST_CASE("family registry", "[real]") {
  for (auto const& n : family_names()) {
    CHECK(make_family(n, {}).name == n);
  }
  CHECK(make_family("pnorm", {{"p", 3}}).parameters.at("p") == 3);
  CHECK_THROWS_AS(make_family("pnorm", {{"q", 3}}), Error);
  CHECK_THROWS_AS(make_family("nope", {}), Error);
}

TEST_CASE("sampled associativity", "[real]") {
  WordSampler s(1);
  CHECK(check_associativity_identity(sum_family(), s, 1000).verdict);
  CHECK(check_associativity_identity(pnorm_family(3), s, 1000).verdict);
  auto r = check_associativity_identity(scaled_sum_family(2), s, 1000);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.witness.size() == 3);
  auto const& w = r.witness;
  auto        f = scaled_sum_family(2);
  auto        fy = f(w[1]);
  auto        rhs = fy ? f(concat(w[0], real_word{*fy}, w[2])) : f(concat(w[0], w[2]));
  CHECK_FALSE(approx_equal(f(concat(w[0], w[1], w[2])), rhs, default_tolerance));
  CHECK_THROWS_AS(check_associativity_identity(length_family(), s, 10), Error);
}

TEST_CASE("sampled preassociativity", "[real]") {
  WordSampler s(2);
  CHECK(check_preassociativity_witnessed(exp_sum_family(), s, 1000).verdict);
  CHECK(check_preassociativity_witnessed(sum_family(), s, 1000).verdict);
  CHECK(check_preassociativity_witnessed(scaled_sum_family(2), s, 1000).verdict);

  auto relu = check_preassociativity_witnessed(relu_sum_family(), s, 0);
  CHECK_FALSE(relu.verdict);
  CHECK(relu.witness == std::vector<real_word>{{}, {-1, -2}, {-1, 1}, {1}});

  auto ab = check_preassociativity_witnessed(abs_then_sum_family(), s, 0);
  CHECK_FALSE(ab.verdict);
  CHECK(ab.witness == std::vector<real_word>{{1}, {1}, {-1}, {}});
}

TEST_CASE("counterexample values", "[real]") {
  auto h = relu_sum_family();
  CHECK(eval(h, {-1, -2}) == 0);
  CHECK(eval(h, {-1, 1}) == 0);
  CHECK(eval(h, {-1, -2, 1}) == 0);
  CHECK(eval(h, {-1, 1, 1}) == 1);

  auto f = abs_then_sum_family();
  CHECK(eval(f, {1}) == 1);
  CHECK(eval(f, {-1}) == 1);
  CHECK(eval(f, {1, 1}) == 2);
  CHECK(eval(f, {1, -1}) == 0);

  auto d = exp_seq_demo();
  CHECK(d.pair_value == Catch::Approx(5.0).margin(1e-9));
  CHECK(d.pair_value_other == Catch::Approx(5.0).margin(1e-9));
  CHECK(d.triple_value == Catch::Approx(10.0).margin(1e-9));
  CHECK(d.triple_value_other == Catch::Approx(9.024579547452822).margin(1e-9));
}

TEST_CASE("p-norm idempotence", "[real]") {
  WordSampler s(3);
  auto        u = check_unary_idempotence(pnorm_family(2), s, 100);
  CHECK_FALSE(u.verdict);
  CHECK(u.witness == std::vector<real_word>{{-1}});
  CHECK(check_unary_range_idempotence(pnorm_family(2), s, 1000).verdict);
  CHECK(check_unary_idempotence(pnorm_family(2, true), s, 100).verdict);
  CHECK(check_associativity_identity(pnorm_family(2, true), s, 1000).verdict);
}

TEST_CASE("seeded sampling is deterministic", "[real]") {
  WordSampler a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.word(0, 5) == b.word(0, 5));
  }
  WordSampler c(9), d(9);
  auto        r1 = check_associativity_identity(scaled_sum_family(3), c, 100);
  auto        r2 = check_associativity_identity(scaled_sum_family(3), d, 100);
  CHECK(r1.witness == r2.witness);
}

TEST_CASE("generated pairs have equal value", "[real][property]") {
  WordSampler s(4);
  auto        f = exp_sum_family();
  for (int i = 0; i < 1000; ++i) {
    auto [y, yy] = f.witness_generator(s);
    double a = 0, b = 0;
    for (auto v : y) {
      a += v;
    }
    for (auto v : yy) {
      b += v;
    }
    CHECK(a == b);
  }
}

TEST_CASE("family factorization", "[real]") {
  WordSampler s(5);
  auto        e = factorize_family(exp_sum_family(), s, 1000, default_tolerance);
  CHECK(e.inner.name == "sum");
  CHECK(e.outer_name == "exp");
  CHECK(e.verified);
  auto c = factorize_family(scaled_sum_family(2), s, 1000, default_tolerance);
  CHECK(c.inner.name == "sum");
  CHECK(c.verified);
  CHECK(c.outer(3.0) == 6.0);
  CHECK_THROWS_AS(factorize_family(relu_sum_family(), s, 10, default_tolerance), Error);
}
