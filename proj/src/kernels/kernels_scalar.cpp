#include <algorithm>
#include <bit>

#include "rkg/kernels.hpp"

namespace rkg::kernels {

std::uint64_t and_popcount_scalar(Words a, Words b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

std::uint64_t popcount_scalar(Words a) noexcept {
  std::uint64_t total = 0;
  for (const auto w : a) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

}  // namespace rkg::kernels
