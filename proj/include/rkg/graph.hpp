#pragma once

// Sampling random key graphs and Erdos-Renyi graphs, triangle counting, and
// the exhaustive oracle over all ring assignments of tiny instances.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "rkg/exact.hpp"
#include "rkg/rng.hpp"

namespace rkg {

/// A key ring: strictly increasing key identifiers in [0, P).
using Ring = std::vector<std::int64_t>;

/// Linear merge over two sorted rings.
bool rings_intersect(const Ring& a, const Ring& b) noexcept;

/// Uniform K-subset of {0..P-1}, sorted.
Ring sample_ring(const KeyParams& theta, Stream& stream);

/// Symmetric, irreflexive adjacency stored as one zero-padded bitset row per node.
class Adjacency {
 public:
  explicit Adjacency(std::int64_t n);

  std::int64_t size() const noexcept { return n_; }
  void connect(std::int64_t i, std::int64_t j);
  bool adjacent(std::int64_t i, std::int64_t j) const noexcept;
  std::span<const std::uint64_t> row(std::int64_t i) const noexcept;

  std::uint64_t edge_count() const noexcept;
  /// Unordered triples with all three edges present.
  std::uint64_t count_triangles() const noexcept;

  /// Header line "n K P seed" is written by the caller; this writes "i j"
  /// lines with i < j, 0-based, in lexicographic order.
  void write_edges(std::ostream& out) const;

 private:
  std::int64_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct KeyGraphSample {
  std::int64_t n = 0;
  KeyParams theta;
  std::vector<Ring> rings;
  Adjacency adjacency;
};

/// Builds the graph induced by explicit rings. Throws UsageError if a ring is
/// not a sorted set of K distinct keys in [0, P).
KeyGraphSample key_graph_from_rings(const KeyParams& theta, std::vector<Ring> rings);

/// n independent uniform rings drawn from a stream seeded with `seed`.
KeyGraphSample sample_key_rings(std::int64_t n, const KeyParams& theta, std::uint64_t seed);

/// Edge probability for Erdos-Renyi sampling: an exact rational (sampled
/// exactly when its denominator fits in 64 bits) or a double.
class EdgeProbability {
 public:
  EdgeProbability(Rational p);  // NOLINT(google-explicit-constructor)
  EdgeProbability(double p);    // NOLINT(google-explicit-constructor)

  double approx() const;
  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const std::variant<Rational, double>& value() const noexcept { return value_; }

 private:
  std::variant<Rational, double> value_;
};

struct ErdosRenyiSample {
  std::int64_t n = 0;
  EdgeProbability p;
  Adjacency adjacency;
};

ErdosRenyiSample sample_er(std::int64_t n, const EdgeProbability& p, std::uint64_t seed);

std::uint64_t count_triangles(const KeyGraphSample& g) noexcept;
std::uint64_t count_triangles(const ErdosRenyiSample& g) noexcept;

/// "n K P seed" header followed by the edge list.
void write_edge_list(std::ostream& out, const KeyGraphSample& g, std::uint64_t seed);

struct BruteForceReport {
  std::int64_t n = 0;
  KeyParams theta;
  Rational p_triangle;
  Rational e_t;
  Rational e_t2;
  BigInt assignments_enumerated;
};

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

/// All K-subsets of {0..P-1} in colexicographic order.
std::vector<Ring> all_rings(const KeyParams& theta);

/// Exhaustive enumeration over all C(P,K)^n equally likely ring assignments.
/// Throws FeasibilityError when C(P,K)^n > cap, UsageError when n < 3.
BruteForceReport brute_force_moments(std::int64_t n, const KeyParams& theta,
                                     std::uint64_t cap = kDefaultBruteForceCap);

}  // namespace rkg
