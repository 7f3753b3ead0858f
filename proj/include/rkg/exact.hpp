#pragma once

// Exact closed forms for triangle statistics of random key graphs.
//
// A random key graph K(n; K, P) assigns each of n nodes an independent,
// uniformly drawn K-subset of a pool of P keys; two nodes are adjacent when
// their rings intersect. Every quantity here is an exact rational.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rkg {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws UsageError on a zero denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& v);
/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& v);

/// The model parameters theta = (K, P): ring size and pool size, 1 <= K <= P.
class KeyParams {
 public:
  KeyParams(std::int64_t ring_size, std::int64_t pool_size);

  std::int64_t K() const noexcept { return ring_size_; }
  std::int64_t P() const noexcept { return pool_size_; }

  friend bool operator==(const KeyParams&, const KeyParams&) = default;

 private:
  std::int64_t ring_size_;
  std::int64_t pool_size_;
};

/// C(n, k), with C(n, k) = 0 whenever k < 0, k > n or n < 0.
BigInt binom(std::int64_t n, std::int64_t k);

/// Probability that two rings are disjoint; 0 when P < 2K.
Rational q_theta(const KeyParams& theta);

/// Probability that a ring avoids a fixed set of 2K keys; 0 when P < 3K.
Rational r_theta(const KeyParams& theta);

/// Probability that a ring avoids a fixed key set of size s: C(P-s,K)/C(P,K).
Rational subset_avoidance(const KeyParams& theta, std::int64_t s);

/// Probability that three fixed nodes form a triangle:
/// (1-q)^3 + q^3 - q*r.
Rational beta_theta(const KeyParams& theta);

/// K^3/P^2 + (K^2/P)^3, the quantity whose n^3 scaling decides the zero-one law.
Rational tau_theta(const KeyParams& theta);

struct PairEventProbs {
  Rational both_shared;   // node 1 meets nodes 2 and 3: (1-q)^2
  Rational one_shared;    // meets exactly one named neighbour: q(1-q)
  Rational none_shared;   // meets neither: q^2
};

PairEventProbs pair_event_probs(const KeyParams& theta);

/// Probability that |K1 & K2| = k and K1 | K2 avoids both K3 and K4.
/// Throws UsageError unless 0 <= k <= K.
Rational c_k(const KeyParams& theta, std::int64_t k);

/// E[T_n] = C(n,3) * beta. Throws UsageError for n < 3.
Rational first_moment(std::int64_t n, const KeyParams& theta);

/// E[chi_123 * chi_124]: both triangles on a shared edge are present.
/// Independent of n. Returns 1 when q = 0 (the graph is complete).
Rational cross_moment(const KeyParams& theta);

/// E[T_n^2] assembled from the first moment and the cross moment.
Rational second_moment(std::int64_t n, const KeyParams& theta);

/// E[T_n^2] / E[T_n]^2 evaluated through its own closed form, not by division.
Rational second_moment_ratio(std::int64_t n, const KeyParams& theta);

struct TriangleMoments {
  std::int64_t n = 0;
  Rational first;
  Rational second;
  Rational cross;
  Rational ratio;
};

/// Evaluates all moments and checks ratio * first^2 == second, throwing
/// IdentityViolation otherwise.
TriangleMoments triangle_moments(std::int64_t n, const KeyParams& theta);

/// c_0 .. c_K.
std::vector<Rational> c_all(const KeyParams& theta);

}  // namespace rkg
