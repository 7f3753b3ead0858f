#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rkg/kernels.hpp"

namespace rkg::kernels {

namespace {

Backend detect() noexcept {
  const char* forced = std::getenv("RKG_KERNEL");
  if (forced != nullptr && std::string(forced) == "scalar") return Backend::scalar;
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept {
#if defined(RKG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) {
    throw std::runtime_error("AVX2 kernels are not available on this machine");
  }
  current().store(b, std::memory_order_relaxed);
}

std::uint64_t and_popcount(Words a, Words b) noexcept {
  return active_backend() == Backend::avx2 ? and_popcount_avx2(a, b) : and_popcount_scalar(a, b);
}

std::uint64_t popcount(Words a) noexcept {
  return active_backend() == Backend::avx2 ? popcount_avx2(a) : popcount_scalar(a);
}

}  // namespace rkg::kernels
