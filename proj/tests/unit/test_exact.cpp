#include <doctest.h>

#include "../support/oracles.hpp"
#include "rkg/errors.hpp"
#include "rkg/exact.hpp"

using namespace rkg;

namespace {
Rational R(long num, long den) { return make_rational(num, den); }
}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binom(52, 5) == 2598960);
  CHECK(binom(5, 0) == 1);
  CHECK(binom(5, 6) == 0);
  CHECK(binom(5, -1) == 0);
  CHECK(binom(-3, 2) == 0);
  CHECK(binom(0, 0) == 1);

  SUBCASE("matches the product formula") {
    for (std::int64_t n = 0; n <= 40; ++n)
      for (std::int64_t k = 0; k <= n; ++k) CHECK(binom(n, k) == oracle::binom_product(n, k));
  }
  SUBCASE("Pascal and Vandermonde") {
    for (std::int64_t n = 1; n <= 30; ++n)
      for (std::int64_t k = 1; k <= n; ++k) CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
    for (std::int64_t m = 0; m <= 12; ++m)
      for (std::int64_t r = 0; r <= 12; ++r) {
        BigInt sum = 0;
        for (std::int64_t k = 0; k <= r; ++k) sum += binom(m, k) * binom(12, r - k);
        CHECK(sum == binom(m + 12, r));
      }
  }
}

TEST_CASE("key parameters are validated") {
  CHECK_THROWS_AS(KeyParams(0, 4), UsageError);
  CHECK_THROWS_AS(KeyParams(3, 2), UsageError);
  CHECK_NOTHROW(KeyParams(2, 2));
  CHECK(KeyParams(2, 5) == KeyParams(2, 5));
}

TEST_CASE("make_rational canonicalizes") {
  CHECK(to_string(make_rational(6, 8)) == "3/4");
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK(to_string(make_rational(3, -9)) == "-1/3");
}

TEST_CASE("overlap probabilities") {
  CHECK(q_theta({1, 2}) == R(1, 2));
  CHECK(q_theta({1, 4}) == R(3, 4));
  CHECK(q_theta({2, 3}) == 0);
  CHECK(r_theta({1, 4}) == R(1, 2));
  CHECK(r_theta({2, 6}) == R(1, 15));
  CHECK(r_theta({2, 3}) == 0);
  CHECK(subset_avoidance({2, 6}, 0) == 1);
}

TEST_CASE("beta and tau") {
  CHECK(beta_theta({1, 4}) == R(1, 16));
  CHECK(tau_theta({1, 4}) == R(5, 64));
  CHECK(tau_theta({2, 100}) == R(108, 125000));
  CHECK(beta_theta({2, 3}) == 1);
  CHECK(tau_theta({2, 3}) == make_rational(88, 27));

  SUBCASE("K = 1 reduces to 1/P^2 and 1/P^2 + 1/P^3") {
    for (std::int64_t P = 1; P <= 30; ++P) {
      CHECK(beta_theta({1, P}) == R(1, P * P));
      CHECK(tau_theta({1, P}) == R(1, P * P) + R(1, P * P * P));
    }
  }
  SUBCASE("tau is K^3/P^2 + (K^2/P)^3") {
    for (std::int64_t K = 1; K <= 4; ++K)
      for (std::int64_t P = K; P <= 20; ++P) {
        const Rational k2p = R(K * K, P);
        CHECK(tau_theta({K, P}) == R(K * K * K, P * P) + k2p * k2p * k2p);
      }
  }
  SUBCASE("beta is the triangle probability on three nodes") {
    for (const auto& [K, P] : {std::pair{1, 3}, {1, 5}, {2, 4}, {2, 7}, {3, 7}})
      CHECK(beta_theta({K, P}) == oracle::enumerate(3, K, P).p_triangle);
  }
}

TEST_CASE("pair event probabilities sum to one") {
  for (std::int64_t K = 1; K <= 5; ++K)
    for (std::int64_t P = K; P <= 25; ++P) {
      const auto e = pair_event_probs({K, P});
      CHECK(e.both_shared + 2 * e.one_shared + e.none_shared == 1);
    }
  const auto e = pair_event_probs({1, 4});
  CHECK(e.both_shared == R(1, 16));
  CHECK(e.one_shared == R(3, 16));
  CHECK(e.none_shared == R(9, 16));
}

TEST_CASE("c_k") {
  CHECK(c_k({1, 4}, 0) == R(3, 16));
  CHECK(c_k({1, 4}, 1) == R(9, 64));
  CHECK_THROWS_AS(c_k({1, 4}, 2), UsageError);
  CHECK_THROWS_AS(c_k({1, 4}, -1), UsageError);
  CHECK(c_all({3, 10}).size() == 4);
}

TEST_CASE("cross moment spot values") {
  CHECK(cross_moment({1, 4}) == R(1, 64));
  CHECK(cross_moment({1, 3}) == R(1, 27));
  CHECK(cross_moment({1, 2}) == R(1, 8));
  CHECK(cross_moment({2, 4}) == R(89, 216));
  CHECK(cross_moment({2, 5}) == R(199, 1000));
  CHECK(cross_moment({2, 6}) == R(41, 375));
  CHECK(cross_moment({2, 7}) == R(611, 9261));
  CHECK(cross_moment({3, 9}) == R(20033, 74088));
  CHECK(cross_moment({2, 3}) == 1);
}

TEST_CASE("cross moment matches four-node enumeration") {
  for (const auto& [K, P] : {std::pair{1, 2}, {1, 3}, {1, 4}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 6}}) {
    CAPTURE(K);
    CAPTURE(P);
    CHECK(cross_moment({K, P}) == oracle::enumerate(4, K, P).cross);
  }
}

TEST_CASE("first and second moments") {
  CHECK(first_moment(4, {1, 4}) == R(1, 4));
  CHECK(second_moment(4, {1, 4}) == R(7, 16));
  CHECK(second_moment_ratio(4, {1, 4}) == 7);
  CHECK_THROWS_AS(first_moment(2, {1, 4}), UsageError);
  CHECK_THROWS_AS(second_moment(2, {1, 4}), UsageError);

  SUBCASE("agree with an independent enumeration") {
    for (std::int64_t n : {3, 4, 5})
      for (const auto& [K, P] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}}) {
        if (n == 5 && P > 4) continue;
        const auto m = oracle::enumerate(n, K, P);
        CAPTURE(n);
        CAPTURE(K);
        CAPTURE(P);
        CHECK(first_moment(n, {K, P}) == m.e_t);
        CHECK(second_moment(n, {K, P}) == m.e_t2);
      }
  }
  SUBCASE("triangle_moments bundles a consistent ratio") {
    const auto m = triangle_moments(30, {3, 40});
    CHECK(m.ratio * m.first * m.first == m.second);
    CHECK(m.ratio == second_moment_ratio(30, {3, 40}));
    CHECK(m.cross == cross_moment({3, 40}));
  }
}
