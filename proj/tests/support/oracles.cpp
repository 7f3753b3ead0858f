#include "oracles.hpp"

#include <algorithm>
#include <iterator>

namespace oracle {

BigInt binom_product(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Rational acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) acc *= Rational(BigInt(n - k + i), BigInt(i));
  acc.canonicalize();
  return acc.get_num();
}

std::vector<std::vector<std::int64_t>> subsets(std::int64_t P, std::int64_t K) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<bool> pick(static_cast<std::size_t>(P), false);
  std::fill(pick.begin(), pick.begin() + K, true);
  do {
    std::vector<std::int64_t> s;
    for (std::int64_t i = 0; i < P; ++i) {
      if (pick[static_cast<std::size_t>(i)]) s.push_back(i);
    }
    out.push_back(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

namespace {

bool share(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return !common.empty();
}

}  // namespace

Moments enumerate(std::int64_t n, std::int64_t K, std::int64_t P) {
  const auto rings = subsets(P, K);
  const std::size_t R = rings.size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  BigInt total = 0, with_triangle = 0, sum_t = 0, sum_t2 = 0, both = 0;
  for (;;) {
    auto edge = [&](std::size_t i, std::size_t j) { return share(rings[pick[i]], rings[pick[j]]); };
    std::int64_t t = 0;
    for (std::size_t i = 0; i < pick.size(); ++i)
      for (std::size_t j = i + 1; j < pick.size(); ++j)
        for (std::size_t k = j + 1; k < pick.size(); ++k)
          if (edge(i, j) && edge(i, k) && edge(j, k)) ++t;
    total += 1;
    if (t > 0) with_triangle += 1;
    sum_t += t;
    sum_t2 += t * t;
    if (n >= 4 && edge(0, 1) && edge(0, 2) && edge(1, 2) && edge(0, 3) && edge(1, 3)) both += 1;

    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == R) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  auto ratio = [&](const BigInt& x) {
    Rational r(x, total);
    r.canonicalize();
    return r;
  };
  return {ratio(with_triangle), ratio(sum_t), ratio(sum_t2), ratio(both)};
}

std::vector<BigInt> elementary_by_subsets(const std::vector<std::int64_t>& roots) {
  const std::size_t m = roots.size();
  std::vector<BigInt> e(m + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    BigInt prod = 1;
    std::size_t bits = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        prod *= roots[i];
        ++bits;
      }
    }
    e[bits] += prod;
  }
  // prod (P - r) = sum_m (-1)^m e_m P^{deg-m}
  for (std::size_t i = 1; i <= m; i += 2) e[i] = -e[i];
  return e;
}

}  // namespace oracle
