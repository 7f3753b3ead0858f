#include <doctest.h>

#include <cmath>
#include <vector>

#include "rkg/errors.hpp"
#include "rkg/graph.hpp"
#include "rkg/monte_carlo.hpp"

using namespace rkg;

TEST_CASE("Wilson interval") {
  const auto e = wilson_interval(50, 100);
  CHECK(e.value == doctest::Approx(0.5));
  CHECK(e.ci_lo == doctest::Approx(0.37528).epsilon(1e-3));
  CHECK(e.ci_hi == doctest::Approx(0.62472).epsilon(1e-3));
  const auto zero = wilson_interval(0, 100);
  CHECK(zero.ci_lo == 0.0);
  CHECK(zero.ci_hi > 0.0);
  const auto all = wilson_interval(100, 100);
  CHECK(all.ci_hi == doctest::Approx(1.0));
  CHECK(all.ci_lo < 1.0);
}

TEST_CASE("mean interval") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  const auto e = mean_interval(xs);
  CHECK(e.value == doctest::Approx(3.0));
  const double half = kZ99 * std::sqrt(2.5 / 5.0);
  CHECK(e.ci_lo == doctest::Approx(3.0 - half));
  CHECK(e.ci_hi == doctest::Approx(3.0 + half));
  const std::vector<double> one{4.0};
  const auto d = mean_interval(one);
  CHECK(d.ci_lo == 4.0);
  CHECK(d.ci_hi == 4.0);
  CHECK(e.covers(3.5));
  CHECK_FALSE(e.covers(10.0));
}

TEST_CASE("summarize_counts") {
  const std::vector<std::uint64_t> counts{0, 1, 0, 3};
  const auto r = summarize_counts(5, 9, counts);
  CHECK(r.trials == 4);
  CHECK(r.graphs_with_triangle == 2);
  CHECK(r.e_t.value == doctest::Approx(1.0));
  CHECK(r.e_t2.value == doctest::Approx(2.5));
  CHECK(r.p_triangle.value == doctest::Approx(0.5));
}

TEST_CASE("Monte Carlo is reproducible and thread-count independent") {
  const auto a = key_graph_triangle_counts(20, {2, 30}, 500, 99);
  const auto b = key_graph_triangle_counts(20, {2, 30}, 500, 99);
  CHECK(a == b);
  setenv("RKG_THREADS", "1", 1);
  const auto c = key_graph_triangle_counts(20, {2, 30}, 500, 99);
  setenv("RKG_THREADS", "4", 1);
  const auto d = key_graph_triangle_counts(20, {2, 30}, 500, 99);
  const auto bf1 = brute_force_moments(4, {2, 6});
  setenv("RKG_THREADS", "1", 1);
  const auto bf2 = brute_force_moments(4, {2, 6});
  unsetenv("RKG_THREADS");
  CHECK(a == c);
  CHECK(a == d);
  CHECK(bf1.e_t2 == bf2.e_t2);
  CHECK(bf1.p_triangle == bf2.p_triangle);
  CHECK(a != key_graph_triangle_counts(20, {2, 30}, 500, 100));
  CHECK_THROWS_AS(monte_carlo(20, {2, 30}, 0, 1), UsageError);
}

TEST_CASE("Monte Carlo covers the exact values") {
  const auto r = monte_carlo(3, {1, 2}, 100000, 7);
  CHECK(r.p_triangle.covers(0.25));
  CHECK(r.e_t.covers(first_moment(3, {1, 2}).get_d()));
  const auto s = monte_carlo(12, {2, 20}, 20000, 3);
  CHECK(s.e_t.covers(first_moment(12, {2, 20}).get_d()));
  CHECK(s.e_t2.covers(second_moment(12, {2, 20}).get_d()));
}

TEST_CASE("Erdos-Renyi Monte Carlo matches C(n,3) p^3") {
  const auto r = monte_carlo_er(15, make_rational(1, 3), 20000, 5);
  CHECK(r.e_t.covers(455.0 / 27.0));
}
