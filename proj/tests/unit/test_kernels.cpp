#include <doctest.h>

#include <bit>
#include <random>
#include <vector>

#include "rkg/kernels.hpp"

using namespace rkg::kernels;

namespace {
std::vector<std::uint64_t> random_words(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> w(count);
  for (auto& x : w) x = gen();
  return w;
}

std::uint64_t naive_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}
}  // namespace

TEST_CASE("scalar kernels match a naive loop") {
  for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 129u}) {
    const auto a = random_words(len, len);
    const auto b = random_words(len, len + 1000);
    CHECK(and_popcount_scalar(a, b) == naive_and(a, b));
    CHECK(popcount_scalar(a) == naive_and(a, a));
  }
}

TEST_CASE("avx2 kernels are equivalent to scalar") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; skipping");
    return;
  }
  for (std::size_t len = 0; len <= 70; ++len) {
    const auto a = random_words(len, 7 * len + 1);
    const auto b = random_words(len, 7 * len + 2);
    CAPTURE(len);
    CHECK(and_popcount_avx2(a, b) == and_popcount_scalar(a, b));
    CHECK(popcount_avx2(a) == popcount_scalar(a));
  }
  const std::vector<std::uint64_t> ones(37, ~std::uint64_t{0});
  CHECK(popcount_avx2(ones) == 37 * 64);
  CHECK(and_popcount_avx2(ones, ones) == 37 * 64);
}

TEST_CASE("backend selection") {
  const Backend before = active_backend();
  set_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  const auto a = random_words(33, 5);
  CHECK(popcount(a) == popcount_scalar(a));
  if (avx2_available()) {
    set_backend(Backend::avx2);
    CHECK(active_backend() == Backend::avx2);
    CHECK(popcount(a) == popcount_scalar(a));
  } else {
    CHECK_THROWS(set_backend(Backend::avx2));
  }
  set_backend(before);
  CHECK(backend_name(Backend::scalar) == "scalar");
  CHECK(backend_name(Backend::avx2) == "avx2");
}
