#include "rkg/exact.hpp"

#include "rkg/errors.hpp"

namespace rkg {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

KeyParams::KeyParams(std::int64_t ring_size, std::int64_t pool_size)
    : ring_size_(ring_size), pool_size_(pool_size) {
  if (ring_size < 1 || ring_size > pool_size) {
    throw UsageError("key parameters require 1 <= K <= P (got K=" + std::to_string(ring_size) +
                     ", P=" + std::to_string(pool_size) + ")");
  }
}

BigInt binom(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

namespace {

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

BigInt rings(const KeyParams& theta) { return binom(theta.P(), theta.K()); }

void require_triple(std::int64_t n) {
  if (n < 3) throw UsageError("triangle moments need n >= 3 (got n=" + std::to_string(n) + ")");
}

}  // namespace

Rational subset_avoidance(const KeyParams& theta, std::int64_t s) {
  if (s < 0) throw UsageError("subset size must be nonnegative");
  return make_rational(binom(theta.P() - s, theta.K()), rings(theta));
}

Rational q_theta(const KeyParams& theta) { return subset_avoidance(theta, theta.K()); }

Rational r_theta(const KeyParams& theta) { return subset_avoidance(theta, 2 * theta.K()); }

Rational beta_theta(const KeyParams& theta) {
  const Rational q = q_theta(theta);
  const Rational r = r_theta(theta);
  const Rational e = 1 - q;
  return Rational(e * e * e + q * q * q - q * r);
}

Rational tau_theta(const KeyParams& theta) {
  const BigInt K = big(theta.K());
  const BigInt P = big(theta.P());
  const Rational k2_over_p = make_rational(K * K, P);
  return make_rational(K * K * K, P * P) + k2_over_p * k2_over_p * k2_over_p;
}

PairEventProbs pair_event_probs(const KeyParams& theta) {
  const Rational q = q_theta(theta);
  const Rational e = 1 - q;
  return {Rational(e * e), Rational(q * e), Rational(q * q)};
}

Rational c_k(const KeyParams& theta, std::int64_t k) {
  const std::int64_t K = theta.K();
  const std::int64_t P = theta.P();
  if (k < 0 || k > K) {
    throw UsageError("c_k needs 0 <= k <= K (got k=" + std::to_string(k) + ", K=" +
                     std::to_string(K) + ")");
  }
  const BigInt total = rings(theta);
  const Rational overlap = make_rational(binom(K, k) * binom(P - K, K - k), total);
  const Rational avoid = make_rational(binom(P - 2 * K + k, K), total);
  return overlap * avoid * avoid;
}

std::vector<Rational> c_all(const KeyParams& theta) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(theta.K()) + 1);
  for (std::int64_t k = 0; k <= theta.K(); ++k) out.push_back(c_k(theta, k));
  return out;
}

Rational first_moment(std::int64_t n, const KeyParams& theta) {
  require_triple(n);
  return Rational(binom(n, 3)) * beta_theta(theta);
}

Rational cross_moment(const KeyParams& theta) {
  const Rational q = q_theta(theta);
  if (q == 0) return Rational(1);
  const Rational beta = beta_theta(theta);
  const Rational e = 1 - q;
  const Rational e2 = e * e;
  const Rational e3 = e2 * e;
  const Rational excess = beta - e3;

  Rational c_sum = 0;
  for (const Rational& c : c_all(theta)) c_sum += c;

  const Rational q2 = q * q;
  return Rational(-(e2 * e3) + 2 * e2 * beta - excess * excess / q + c_sum - q2 * q2);
}

Rational second_moment(std::int64_t n, const KeyParams& theta) {
  require_triple(n);
  const BigInt triples = binom(n, 3);
  const Rational first = first_moment(n, theta);
  const Rational disjoint_or_vertex =
      make_rational(binom(n - 3, 3) + 3 * binom(n - 3, 2), triples);
  const BigInt edge_sharing = triples * 3 * binom(n - 3, 1);
  return Rational(first + disjoint_or_vertex * first * first +
                  Rational(edge_sharing) * cross_moment(theta));
}

Rational second_moment_ratio(std::int64_t n, const KeyParams& theta) {
  require_triple(n);
  const BigInt triples = binom(n, 3);
  const Rational beta = beta_theta(theta);
  const Rational first = first_moment(n, theta);
  const Rational disjoint_or_vertex =
      make_rational(binom(n - 3, 3) + 3 * binom(n - 3, 2), triples);
  const Rational edge_weight = make_rational(3 * big(n - 3), triples);
  return Rational(1 / first + disjoint_or_vertex + edge_weight * cross_moment(theta) / (beta * beta));
}

TriangleMoments triangle_moments(std::int64_t n, const KeyParams& theta) {
  TriangleMoments m;
  m.n = n;
  m.first = first_moment(n, theta);
  m.second = second_moment(n, theta);
  m.cross = cross_moment(theta);
  m.ratio = second_moment_ratio(n, theta);
  if (m.ratio * m.first * m.first != m.second) {
    throw IdentityViolation("second moment ratio disagrees with E[T^2]/E[T]^2 at n=" +
                            std::to_string(n) + " K=" + std::to_string(theta.K()) +
                            " P=" + std::to_string(theta.P()));
  }
  return m;
}

}  // namespace rkg
