// AVX2 variants of the bitmap kernels. Compiled with -mavx2 -mpopcnt in its
// own translation unit; the dispatcher only routes here after a CPUID check.

#include "textsan/kernels/bitset_ops.hpp"

#include <cassert>
#include <immintrin.h>

namespace textsan::kernels {

bool cpu_supports_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
}

namespace avx2 {

namespace {

// Nibble-LUT popcount (Mula): per-byte counts via pshufb, folded to four
// 64-bit lanes with sad.
inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
    const __m256i cnt =
        _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
    const __m128i lo = _mm256_castsi256_si128(v);
    const __m128i hi = _mm256_extracti128_si256(v, 1);
    const __m128i s = _mm_add_epi64(lo, hi);
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(s)) +
           static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

}  // namespace

std::uint64_t popcount_words(std::span<const std::uint64_t> a) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        acc = _mm256_add_epi64(acc, popcount256(v));
    }
    std::uint64_t n = hsum_epi64(acc);
    for (; i < a.size(); ++i) n += static_cast<std::uint64_t>(_popcnt64(static_cast<long long>(a[i])));
    return n;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
    assert(a.size() == b.size());
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
        acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(va, vb)));
    }
    std::uint64_t n = hsum_epi64(acc);
    for (; i < a.size(); ++i) {
        n += static_cast<std::uint64_t>(_popcnt64(static_cast<long long>(a[i] & b[i])));
    }
    return n;
}

std::uint64_t and3_popcount(std::span<const std::uint64_t> a,
                            std::span<const std::uint64_t> b,
                            std::span<const std::uint64_t> c) {
    assert(a.size() == b.size() && b.size() == c.size());
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= a.size(); i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
        const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c.data() + i));
        acc = _mm256_add_epi64(
            acc, popcount256(_mm256_and_si256(_mm256_and_si256(va, vb), vc)));
    }
    std::uint64_t n = hsum_epi64(acc);
    for (; i < a.size(); ++i) {
        n += static_cast<std::uint64_t>(_popcnt64(static_cast<long long>(a[i] & b[i] & c[i])));
    }
    return n;
}

void and_inplace(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    assert(dst.size() == src.size());
    std::size_t i = 0;
    for (; i + 4 <= dst.size(); i += 4) {
        const __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
        const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i),
                            _mm256_and_si256(vd, vs));
    }
    for (; i < dst.size(); ++i) dst[i] &= src[i];
}

}  // namespace avx2

}  // namespace textsan::kernels
