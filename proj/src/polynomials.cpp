#include "rkg/polynomials.hpp"

#include <algorithm>
#include <cstdlib>

#include "rkg/errors.hpp"

namespace rkg {

namespace {

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

BigInt ipow(const BigInt& base, std::int64_t e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

BigInt factorial(std::int64_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

void require_three_rings(const KeyParams& theta) {
  if (3 * theta.K() > theta.P()) {
    throw UsageError("F/G machinery requires 3K <= P (got K=" + std::to_string(theta.K()) +
                     ", P=" + std::to_string(theta.P()) + ")");
  }
}

void require_positive_ring(std::int64_t K) {
  if (K < 1) throw UsageError("ring size K must be >= 1");
}

}  // namespace

std::int64_t FactorProduct::max_abs_root() const noexcept {
  std::int64_t best = 0;
  for (const auto r : roots) best = std::max(best, r < 0 ? -r : r);
  return best;
}

std::vector<BigInt> elementary_symmetric_coeffs(std::span<const std::int64_t> roots) {
  std::vector<BigInt> rho(roots.size() + 1, BigInt(0));
  rho[0] = 1;
  std::size_t deg = 0;
  for (const auto r : roots) {
    // (x - r) * sum rho_m x^(deg-m): rho_m' = rho_m - r * rho_{m-1}
    ++deg;
    for (std::size_t m = deg; m >= 1; --m) rho[m] -= big(r) * rho[m - 1];
  }
  return rho;
}

BigInt PolyInP::evaluate(std::int64_t P) const {
  BigInt acc = 0;
  const BigInt x = big(P);
  for (const auto& c : coeffs) acc = acc * x + c;
  return acc;
}

FactorProduct shared_overlap_factors(std::int64_t K, std::int64_t k) {
  FactorProduct f;
  f.roots.reserve(static_cast<std::size_t>(4 * K - k));
  for (std::int64_t i = 1; i <= K; ++i) f.roots.push_back(3 * K - k - i);
  for (std::int64_t j = 1; j <= 3 * K - k; ++j) f.roots.push_back(3 * K - k - j);
  return f;
}

FactorProduct disjoint_factors(std::int64_t K) {
  FactorProduct f;
  f.roots.reserve(static_cast<std::size_t>(4 * K));
  for (int rep = 0; rep < 4; ++rep) {
    for (std::int64_t i = K; i <= 2 * K - 1; ++i) f.roots.push_back(i);
  }
  return f;
}

PolyInP expand_coefficients(std::int64_t K) {
  require_positive_ring(K);
  PolyInP poly;
  poly.K = K;
  const auto top = static_cast<std::size_t>(4 * K);
  poly.coeffs.assign(top + 1, BigInt(0));

  for (std::int64_t k = 0; k <= std::min<std::int64_t>(4, K); ++k) {
    const BigInt c = binom(K, k);
    const BigInt weight = factorial(k) * c * c;
    const auto rho = elementary_symmetric_coeffs(shared_overlap_factors(K, k).roots);
    // rho_m multiplies P^(4K-k-m), i.e. lands at l = k + m.
    for (std::size_t m = 0; m < rho.size(); ++m) {
      poly.coeffs[static_cast<std::size_t>(k) + m] += weight * rho[m];
    }
  }
  const auto rho = elementary_symmetric_coeffs(disjoint_factors(K).roots);
  for (std::size_t l = 0; l <= top; ++l) poly.coeffs[l] -= rho[l];
  return poly;
}

BigInt F_theta(const KeyParams& theta) {
  require_three_rings(theta);
  const std::int64_t K = theta.K();
  const std::int64_t P = theta.P();
  const BigInt total = binom(P, K);
  BigInt sum = 0;
  for (std::int64_t k = 0; k <= 4; ++k) {
    const BigInt avoid = binom(P - 2 * K + k, K);
    sum += total * binom(K, k) * binom(P - K, K - k) * avoid * avoid;
  }
  const BigInt disjoint = binom(P - K, K);
  const BigInt d2 = disjoint * disjoint;
  const BigInt kf = factorial(K);
  const BigInt kf2 = kf * kf;
  return kf2 * kf2 * (sum - d2 * d2);
}

BigInt G_theta(const KeyParams& theta) {
  BigInt falling = 1;
  for (std::int64_t l = 0; l < theta.K(); ++l) falling *= big(theta.P() - l);
  return ipow(falling, 4);
}

Rational verify_FG_identity(const KeyParams& theta) {
  require_three_rings(theta);
  const Rational ratio = make_rational(F_theta(theta), G_theta(theta));

  Rational direct = 0;
  for (std::int64_t k = 0; k <= std::min<std::int64_t>(4, theta.K()); ++k) direct += c_k(theta, k);
  const Rational q = q_theta(theta);
  const Rational q2 = q * q;
  direct -= q2 * q2;

  if (direct != ratio) {
    throw IdentityViolation("F/G = " + to_string(ratio) + " but sum c_k - q^4 = " +
                            to_string(direct) + " at K=" + std::to_string(theta.K()) +
                            " P=" + std::to_string(theta.P()));
  }
  return ratio;
}

BigInt closed_form_a3(std::int64_t K) { return ipow(big(K), 4); }

BigInt closed_form_a4(std::int64_t K) {
  const BigInt k = big(K);
  return -6 * ipow(k, 6) + 6 * ipow(k, 5) - ipow(k, 4);
}

Rational closed_form_a5(std::int64_t K) {
  // (numerator, denominator) for K^10 .. K^2
  static constexpr long kTerms[9][2] = {
      {-1, 120}, {1, 6}, {199, 12}, {-34, 1}, {1207, 120}, {161, 6}, {-209, 6}, {20, 1}, {-24, 5},
  };
  const BigInt k = big(K);
  Rational sum = 0;
  for (int i = 0; i < 9; ++i) {
    sum += make_rational(kTerms[i][0], kTerms[i][1]) * Rational(ipow(k, 10 - i));
  }
  if (sum.get_den() != 1) {
    throw IdentityViolation("closed form for a_5 is not an integer at K=" + std::to_string(K) +
                            ": " + to_string(sum));
  }
  return sum;
}

Rational a5_star(std::int64_t K) {
  return closed_form_a5(K) + make_rational(ipow(big(K), 10), 240);
}

std::optional<std::int64_t> a5_star_negative_from(std::int64_t k_max) {
  require_positive_ring(k_max);
  std::optional<std::int64_t> k0;
  for (std::int64_t K = k_max; K >= 1; --K) {
    if (a5_star(K) >= 0) break;
    k0 = K;
  }
  return k0;
}

std::vector<CoefficientCheck> verify_coefficient_closed_forms(std::int64_t k_first,
                                                              std::int64_t k_last) {
  if (k_first < 4) throw UsageError("closed forms for a_0..a_5 are stated for K >= 4");
  std::vector<CoefficientCheck> out;
  for (std::int64_t K = k_first; K <= k_last; ++K) {
    const PolyInP poly = expand_coefficients(K);
    const BigInt closed[6] = {0, 0, 0, closed_form_a3(K), closed_form_a4(K),
                              BigInt(closed_form_a5(K).get_num())};
    for (std::int64_t l = 0; l <= 5; ++l) {
      const auto& e = poly.coeffs[static_cast<std::size_t>(l)];
      out.push_back({K, l, e, closed[l], e == closed[l]});
    }
  }
  return out;
}

std::vector<BoundCheck> verify_coefficient_bound(const PolyInP& poly) {
  std::vector<BoundCheck> out;
  const BigInt base = 12 * big(poly.K) * big(poly.K);
  for (std::size_t l = 0; l < poly.coeffs.size(); ++l) {
    const BigInt bound = 2 * ipow(base, static_cast<std::int64_t>(l));
    const BigInt& a = poly.coeffs[l];
    out.push_back({poly.K, static_cast<std::int64_t>(l), a, bound, abs(a) <= bound});
  }
  return out;
}

std::vector<BoundCheck> verify_coefficient_bound(std::int64_t K) {
  return verify_coefficient_bound(expand_coefficients(K));
}

bool verify_F_bound(const KeyParams& theta) {
  require_three_rings(theta);
  const BigInt rhs = ipow(big(theta.K()), 4) * ipow(big(theta.P()), 4 * theta.K() - 3);
  return F_theta(theta) <= rhs;
}

}  // namespace rkg
