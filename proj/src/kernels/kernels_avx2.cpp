// Built with -mavx2 on x86-64; only reached through dispatch after a CPUID check.

#include <algorithm>

#include "rkg/kernels.hpp"

#if defined(RKG_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace rkg::kernels {

#if defined(RKG_HAVE_AVX2)

namespace {

// Per-byte popcount via the nibble lookup, summed into four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes =
      _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

std::uint64_t and_popcount_avx2(Words a, Words b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(va, vb)));
  }
  std::uint64_t total = hsum_epi64(acc);
  if (i < n) total += and_popcount_scalar(a.subspan(i, n - i), b.subspan(i, n - i));
  return total;
}

std::uint64_t popcount_avx2(Words a) noexcept {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(va));
  }
  return hsum_epi64(acc) + popcount_scalar(a.subspan(i));
}

#else

std::uint64_t and_popcount_avx2(Words a, Words b) noexcept { return and_popcount_scalar(a, b); }
std::uint64_t popcount_avx2(Words a) noexcept { return popcount_scalar(a); }

#endif

}  // namespace rkg::kernels
