#pragma once

// Bitset inner loops used by triangle counting. Each kernel has a portable
// scalar reference and an AVX2 variant; the variant is picked once at
// startup from CPUID and can be pinned with RKG_KERNEL=scalar|avx2.

#include <cstdint>
#include <span>
#include <string_view>

namespace rkg::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;

/// Whether this binary carries the AVX2 variant and the CPU can run it.
bool avx2_available() noexcept;

Backend active_backend() noexcept;
/// Throws std::runtime_error when asked for an unavailable backend.
void set_backend(Backend b);

using Words = std::span<const std::uint64_t>;

// popcount(a & b) over min(a.size(), b.size()) words.
std::uint64_t and_popcount_scalar(Words a, Words b) noexcept;
std::uint64_t and_popcount_avx2(Words a, Words b) noexcept;

std::uint64_t popcount_scalar(Words a) noexcept;
std::uint64_t popcount_avx2(Words a) noexcept;

// Dispatching entry points.
std::uint64_t and_popcount(Words a, Words b) noexcept;
std::uint64_t popcount(Words a) noexcept;

}  // namespace rkg::kernels
