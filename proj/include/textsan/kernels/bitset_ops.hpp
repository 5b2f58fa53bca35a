#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace textsan::kernels {

// Intersection cardinality over packed 64-bit document bitmaps. Every corpus
// count query bottoms out here, so a portable scalar reference and an AVX2
// variant are provided; the dispatcher picks one per process. Set
// TEXTSAN_KERNEL=scalar|avx2 to force a backend (unsupported requests fall
// back to scalar).
//
// All binary/ternary entry points require spans of equal length.

std::uint64_t popcount_words(std::span<const std::uint64_t> a);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
std::uint64_t and3_popcount(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<const std::uint64_t> c);
void and_inplace(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

std::string_view active_backend();

namespace scalar {
std::uint64_t popcount_words(std::span<const std::uint64_t> a);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
std::uint64_t and3_popcount(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<const std::uint64_t> c);
void and_inplace(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
}  // namespace scalar

#if defined(TEXTSAN_HAVE_AVX2)
// Only call when cpu_supports_avx2() reports true.
namespace avx2 {
std::uint64_t popcount_words(std::span<const std::uint64_t> a);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
std::uint64_t and3_popcount(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<const std::uint64_t> c);
void and_inplace(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
}  // namespace avx2

bool cpu_supports_avx2();
#endif

}  // namespace textsan::kernels
