#include "rkg/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>

#include "parallel.hpp"
#include "rkg/errors.hpp"
#include "rkg/kernels.hpp"

namespace rkg {

namespace {

std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof out, 0, 0, v.get_mpz_t());
  return out;
}

bool fits_u64(const BigInt& v) { return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

BigInt from_u128(unsigned __int128 v) {
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

}  // namespace

bool rings_intersect(const Ring& a, const Ring& b) noexcept {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

Ring sample_ring(const KeyParams& theta, Stream& stream) {
  const auto K = static_cast<std::uint64_t>(theta.K());
  const auto P = static_cast<std::uint64_t>(theta.P());
  Ring ring;
  ring.reserve(K);
  if (P <= 64 || 2 * K > P) {
    // partial Fisher-Yates
    std::vector<std::int64_t> pool(P);
    std::iota(pool.begin(), pool.end(), std::int64_t{0});
    for (std::uint64_t i = 0; i < K; ++i) {
      std::swap(pool[i], pool[i + stream.below(P - i)]);
    }
    ring.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(K));
  } else {
    // Floyd's subset sampling
    for (std::uint64_t j = P - K; j < P; ++j) {
      const auto t = static_cast<std::int64_t>(stream.below(j + 1));
      const bool taken = std::find(ring.begin(), ring.end(), t) != ring.end();
      ring.push_back(taken ? static_cast<std::int64_t>(j) : t);
    }
  }
  std::sort(ring.begin(), ring.end());
  return ring;
}

Adjacency::Adjacency(std::int64_t n)
    : n_(n), words_(static_cast<std::size_t>((n + 63) / 64)), bits_() {
  if (n < 0) throw UsageError("node count must be nonnegative");
  bits_.assign(words_ * static_cast<std::size_t>(n), 0);
}

void Adjacency::connect(std::int64_t i, std::int64_t j) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw UsageError("invalid edge " + std::to_string(i) + "-" + std::to_string(j));
  }
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  bits_[ui * words_ + uj / 64] |= std::uint64_t{1} << (uj % 64);
  bits_[uj * words_ + ui / 64] |= std::uint64_t{1} << (ui % 64);
}

bool Adjacency::adjacent(std::int64_t i, std::int64_t j) const noexcept {
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  return ((bits_[ui * words_ + uj / 64] >> (uj % 64)) & 1u) != 0;
}

std::span<const std::uint64_t> Adjacency::row(std::int64_t i) const noexcept {
  return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
}

std::uint64_t Adjacency::edge_count() const noexcept { return kernels::popcount(bits_) / 2; }

std::uint64_t Adjacency::count_triangles() const noexcept {
  std::uint64_t total = 0;
  for (std::int64_t i = 0; i < n_; ++i) {
    const auto ri = row(i);
    for (std::int64_t j = i + 1; j < n_; ++j) {
      if (!adjacent(i, j)) continue;
      const auto rj = row(j);
      // common neighbours with index > j
      const auto start = static_cast<std::size_t>(j + 1);
      const std::size_t w0 = start / 64;
      if (w0 >= words_) continue;
      const std::uint64_t head_mask = ~std::uint64_t{0} << (start % 64);
      total += static_cast<std::uint64_t>(std::popcount(ri[w0] & rj[w0] & head_mask));
      total += kernels::and_popcount(ri.subspan(w0 + 1), rj.subspan(w0 + 1));
    }
  }
  return total;
}

void Adjacency::write_edges(std::ostream& out) const {
  for (std::int64_t i = 0; i < n_; ++i) {
    for (std::int64_t j = i + 1; j < n_; ++j) {
      if (adjacent(i, j)) out << i << ' ' << j << '\n';
    }
  }
}

KeyGraphSample key_graph_from_rings(const KeyParams& theta, std::vector<Ring> rings) {
  const auto n = static_cast<std::int64_t>(rings.size());
  for (const auto& ring : rings) {
    const bool ok = static_cast<std::int64_t>(ring.size()) == theta.K() &&
                    std::adjacent_find(ring.begin(), ring.end(), std::greater_equal<>()) ==
                        ring.end() &&
                    (ring.empty() || (ring.front() >= 0 && ring.back() < theta.P()));
    if (!ok) throw UsageError("each ring must hold K distinct sorted keys in [0, P)");
  }
  Adjacency adj(n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      if (rings_intersect(rings[static_cast<std::size_t>(i)], rings[static_cast<std::size_t>(j)])) {
        adj.connect(i, j);
      }
    }
  }
  return KeyGraphSample{n, theta, std::move(rings), std::move(adj)};
}

KeyGraphSample sample_key_rings(std::int64_t n, const KeyParams& theta, std::uint64_t seed) {
  if (n < 1) throw UsageError("sampling needs n >= 1");
  Stream stream(seed);
  std::vector<Ring> rings;
  rings.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) rings.push_back(sample_ring(theta, stream));
  return key_graph_from_rings(theta, std::move(rings));
}

EdgeProbability::EdgeProbability(Rational p) : value_(std::move(p)) {
  const auto& r = std::get<Rational>(value_);
  if (r < 0 || r > 1) throw UsageError("edge probability must lie in [0, 1]");
}

EdgeProbability::EdgeProbability(double p) : value_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("edge probability must lie in [0, 1]");
}

double EdgeProbability::approx() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->get_d();
  return std::get<double>(value_);
}

ErdosRenyiSample sample_er(std::int64_t n, const EdgeProbability& p, std::uint64_t seed) {
  if (n < 1) throw UsageError("sampling needs n >= 1");
  Stream stream(seed);
  Adjacency adj(n);

  // One draw per edge; the per-edge test is fixed up front.
  enum class Mode { exact_fraction, scaled_threshold, unit_double } mode = Mode::unit_double;
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool always = false;
  double pd = 0.0;
  if (const auto* r = std::get_if<Rational>(&p.value())) {
    always = (*r == 1);
    if (fits_u64(r->get_den())) {
      mode = Mode::exact_fraction;
      num = to_u64(r->get_num());
      den = to_u64(r->get_den());
    } else {
      // floor(p * 2^64): exact up to 2^-64
      mode = Mode::scaled_threshold;
      const BigInt scaled = (r->get_num() << 64) / r->get_den();
      num = to_u64(scaled);
    }
  } else {
    pd = std::get<double>(p.value());
    always = (pd == 1.0);
  }

  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      bool edge = false;
      switch (mode) {
        case Mode::exact_fraction: edge = stream.below(den) < num; break;
        case Mode::scaled_threshold: edge = always || stream.next() < num; break;
        case Mode::unit_double: edge = always || stream.unit() < pd; break;
      }
      if (edge) adj.connect(i, j);
    }
  }
  return ErdosRenyiSample{n, p, std::move(adj)};
}

std::uint64_t count_triangles(const KeyGraphSample& g) noexcept {
  return g.adjacency.count_triangles();
}

std::uint64_t count_triangles(const ErdosRenyiSample& g) noexcept {
  return g.adjacency.count_triangles();
}

void write_edge_list(std::ostream& out, const KeyGraphSample& g, std::uint64_t seed) {
  out << g.n << ' ' << g.theta.K() << ' ' << g.theta.P() << ' ' << seed << '\n';
  g.adjacency.write_edges(out);
}

std::vector<Ring> all_rings(const KeyParams& theta) {
  const std::int64_t K = theta.K();
  const std::int64_t P = theta.P();
  std::vector<Ring> out;
  Ring c(static_cast<std::size_t>(K));
  std::iota(c.begin(), c.end(), std::int64_t{0});
  for (;;) {
    out.push_back(c);
    // colex successor: bump the lowest element that has room, reset those below it
    std::size_t i = 0;
    while (i < c.size()) {
      const std::int64_t ceiling = (i + 1 < c.size()) ? c[i + 1] : P;
      if (c[i] + 1 < ceiling) break;
      ++i;
    }
    if (i == c.size()) break;
    ++c[i];
    for (std::size_t m = 0; m < i; ++m) c[m] = static_cast<std::int64_t>(m);
  }
  return out;
}

BruteForceReport brute_force_moments(std::int64_t n, const KeyParams& theta, std::uint64_t cap) {
  if (n < 3) throw UsageError("brute force needs n >= 3 (got n=" + std::to_string(n) + ")");
  const BigInt ring_count = binom(theta.P(), theta.K());
  BigInt assignments;
  mpz_pow_ui(assignments.get_mpz_t(), ring_count.get_mpz_t(), static_cast<unsigned long>(n));
  if (assignments > BigInt(static_cast<unsigned long>(cap))) {
    throw FeasibilityError("enumeration of C(P,K)^n = " + assignments.get_str() +
                               " assignments exceeds cap " + std::to_string(cap),
                           assignments.get_str());
  }

  const std::vector<Ring> rings = all_rings(theta);
  const std::size_t R = rings.size();
  std::vector<std::uint8_t> meets(R * R);
  for (std::size_t a = 0; a < R; ++a) {
    for (std::size_t b = 0; b < R; ++b) meets[a * R + b] = rings_intersect(rings[a], rings[b]) ? 1 : 0;
  }

  const auto nodes = static_cast<std::size_t>(n);
  struct Partial {
    unsigned __int128 hits = 0, sum_t = 0, sum_t2 = 0;
  };
  std::vector<Partial> partials(detail::worker_count(R));

  // Node 0's ring index is partitioned across workers; the rest run as an
  // odometer with the last node fastest.
  detail::parallel_chunks(R, [&](std::size_t begin, std::size_t end, unsigned w) {
    Partial acc;
    std::vector<std::size_t> idx(nodes, 0);
    std::vector<std::uint8_t> edge(nodes * nodes, 0);
    for (std::size_t first = begin; first < end; ++first) {
      std::fill(idx.begin(), idx.end(), 0);
      idx[0] = first;
      for (;;) {
        for (std::size_t i = 0; i < nodes; ++i) {
          for (std::size_t j = i + 1; j < nodes; ++j) edge[i * nodes + j] = meets[idx[i] * R + idx[j]];
        }
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < nodes; ++i) {
          for (std::size_t j = i + 1; j < nodes; ++j) {
            if (!edge[i * nodes + j]) continue;
            for (std::size_t k = j + 1; k < nodes; ++k) t += edge[i * nodes + k] & edge[j * nodes + k];
          }
        }
        acc.hits += (t > 0);
        acc.sum_t += t;
        acc.sum_t2 += static_cast<unsigned __int128>(t) * t;

        std::size_t pos = nodes - 1;
        while (pos >= 1 && ++idx[pos] == R) idx[pos--] = 0;
        if (pos == 0) break;
      }
    }
    partials[w] = acc;
  });

  Partial total;
  for (const auto& p : partials) {
    total.hits += p.hits;
    total.sum_t += p.sum_t;
    total.sum_t2 += p.sum_t2;
  }
  BruteForceReport report{n, theta, make_rational(from_u128(total.hits), assignments),
                          make_rational(from_u128(total.sum_t), assignments),
                          make_rational(from_u128(total.sum_t2), assignments), assignments};
  return report;
}

}  // namespace rkg
