#pragma once

// The numerator/denominator split  sum_{k<=4} c_k - q^4 = F(theta) / G(theta)
// and the expansion of F as a degree-4K polynomial in P whose integer
// coefficients a_l(K) depend on K only.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rkg/exact.hpp"

namespace rkg {

/// Monic product  prod_m (x - r_m)  over integer roots.
struct FactorProduct {
  std::vector<std::int64_t> roots;

  std::size_t degree() const noexcept { return roots.size(); }
  /// max |r_m|, or 0 for the empty product.
  std::int64_t max_abs_root() const noexcept;
};

/// rho_0..rho_M of  prod (x - r_m) = sum_m rho_m x^(M-m), by multiplying in
/// one linear factor at a time. rho_0 = 1.
std::vector<BigInt> elementary_symmetric_coeffs(std::span<const std::int64_t> roots);

/// F(theta) = sum_l coeffs[l] * P^(4K-l).
struct PolyInP {
  std::int64_t K = 0;
  std::vector<BigInt> coeffs;  // coeffs[l] = a_l(K), l = 0..4K

  std::int64_t degree() const noexcept { return 4 * K; }
  /// Horner evaluation at the given pool size.
  BigInt evaluate(std::int64_t P) const;
};

/// Roots of b_{K,k}(P) = prod_{i=1}^{K} (P-3K+k+i) * prod_{j=1}^{3K-k} (P-3K+k+j).
FactorProduct shared_overlap_factors(std::int64_t K, std::int64_t k);

/// Roots of b_K(P) = (prod_{i=K}^{2K-1} (P-i))^4.
FactorProduct disjoint_factors(std::int64_t K);

/// a_0(K) .. a_{4K}(K). Throws UsageError for K < 1.
PolyInP expand_coefficients(std::int64_t K);

/// (K!)^4 [ sum_{k=0}^{4} C(P,K) C(K,k) C(P-K,K-k) C(P-2K+k,K)^2 - C(P-K,K)^4 ].
/// Requires 3K <= P.
BigInt F_theta(const KeyParams& theta);

/// (P!/(P-K)!)^4.
BigInt G_theta(const KeyParams& theta);

/// Returns F/G after checking it equals sum_{k<=min(4,K)} c_k - q^4 exactly.
/// Throws IdentityViolation on mismatch, UsageError when 3K > P.
Rational verify_FG_identity(const KeyParams& theta);

BigInt closed_form_a3(std::int64_t K);
BigInt closed_form_a4(std::int64_t K);
/// The degree-10 rational polynomial for a_5(K). Throws IdentityViolation if
/// the value is not an integer.
Rational closed_form_a5(std::int64_t K);
/// a_5(K) + K^10 / 240.
Rational a5_star(std::int64_t K);

/// Smallest K0 in [1, k_max] with a5_star(K) < 0 for every K in [K0, k_max];
/// nullopt if a5_star(k_max) >= 0.
std::optional<std::int64_t> a5_star_negative_from(std::int64_t k_max);

struct CoefficientCheck {
  std::int64_t K = 0;
  std::int64_t l = 0;
  BigInt expanded;
  BigInt closed_form;
  bool match = false;
};

/// a_0..a_5 from the expansion against the closed forms, for each K in
/// [k_first, k_last]. Requires k_first >= 4.
std::vector<CoefficientCheck> verify_coefficient_closed_forms(std::int64_t k_first,
                                                              std::int64_t k_last);

struct BoundCheck {
  std::int64_t K = 0;
  std::int64_t l = 0;
  BigInt coefficient;
  BigInt bound;  // 2 * (12 K^2)^l
  bool pass = false;
};

/// |a_l(K)| <= 2 (12 K^2)^l for l = 0..4K.
std::vector<BoundCheck> verify_coefficient_bound(std::int64_t K);
std::vector<BoundCheck> verify_coefficient_bound(const PolyInP& poly);

/// Whether F(theta) <= K^4 P^(4K-3) at this theta. Reports only; the
/// inequality is asymptotic. Requires 3K <= P.
bool verify_F_bound(const KeyParams& theta);

}  // namespace rkg
