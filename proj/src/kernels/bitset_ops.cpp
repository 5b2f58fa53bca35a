#include "textsan/kernels/bitset_ops.hpp"

#include <bit>
#include <cassert>
#include <cstdlib>
#include <cstring>

namespace textsan::kernels {

namespace scalar {

std::uint64_t popcount_words(std::span<const std::uint64_t> a) {
    std::uint64_t n = 0;
    for (std::uint64_t w : a) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
    assert(a.size() == b.size());
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    }
    return n;
}

std::uint64_t and3_popcount(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<const std::uint64_t> c) {
    assert(a.size() == b.size() && b.size() == c.size());
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += static_cast<std::uint64_t>(std::popcount(a[i] & b[i] & c[i]));
    }
    return n;
}

void and_inplace(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    assert(dst.size() == src.size());
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

}  // namespace scalar

namespace {

struct Dispatch {
    std::uint64_t (*popcount_words)(std::span<const std::uint64_t>);
    std::uint64_t (*and_popcount)(std::span<const std::uint64_t>,
                                  std::span<const std::uint64_t>);
    std::uint64_t (*and3_popcount)(std::span<const std::uint64_t>,
                                   std::span<const std::uint64_t>,
                                   std::span<const std::uint64_t>);
    void (*and_inplace)(std::span<std::uint64_t>, std::span<const std::uint64_t>);
    std::string_view name;
};

constexpr Dispatch kScalar{scalar::popcount_words, scalar::and_popcount,
                           scalar::and3_popcount, scalar::and_inplace, "scalar"};

Dispatch select_backend() {
    const char* env = std::getenv("TEXTSAN_KERNEL");
    const bool forced_scalar = env != nullptr && std::strcmp(env, "scalar") == 0;
    if (forced_scalar) return kScalar;
#if defined(TEXTSAN_HAVE_AVX2)
    const bool want_avx2 = env == nullptr || std::strcmp(env, "avx2") == 0;
    if (want_avx2 && cpu_supports_avx2()) {
        return Dispatch{avx2::popcount_words, avx2::and_popcount,
                        avx2::and3_popcount, avx2::and_inplace, "avx2"};
    }
#endif
    return kScalar;
}

const Dispatch& backend() {
    static const Dispatch d = select_backend();
    return d;
}

}  // namespace

std::uint64_t popcount_words(std::span<const std::uint64_t> a) {
    return backend().popcount_words(a);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
    return backend().and_popcount(a, b);
}

std::uint64_t and3_popcount(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<const std::uint64_t> c) {
    return backend().and3_popcount(a, b, c);
}

void and_inplace(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    backend().and_inplace(dst, src);
}

std::string_view active_backend() {
    return backend().name;
}

}  // namespace textsan::kernels
