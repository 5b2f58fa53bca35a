// Micro-benchmark for the bitmap kernels: scalar reference vs the active
// backend over a range of bitmap sizes.

#include <chrono>
#include <cstdio>
#include <random>
#include <span>
#include <vector>

#include "textsan/kernels/bitset_ops.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::uint64_t> random_words(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint64_t> v(n);
    for (auto& w : v) w = rng();
    return v;
}

template <typename F>
double time_op(F&& f, int iters) {
    volatile std::uint64_t sink = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < iters; ++i) sink += f();
    const auto t1 = Clock::now();
    (void)sink;
    return std::chrono::duration<double>(t1 - t0).count() / iters;
}

}  // namespace

int main() {
    std::mt19937_64 rng(7);
    std::printf("active backend: %s\n", std::string(textsan::kernels::active_backend()).c_str());
    std::printf("%12s %14s %14s %8s\n", "words", "scalar GB/s", "active GB/s", "speedup");
    for (std::size_t words : {64u, 512u, 4096u, 32768u, 262144u}) {
        const auto a = random_words(words, rng);
        const auto b = random_words(words, rng);
        const int iters = static_cast<int>(std::max<std::size_t>(1, (1u << 24) / words));
        const double ts = time_op(
            [&] { return textsan::kernels::scalar::and_popcount(a, b); }, iters);
        const double ta = time_op(
            [&] { return textsan::kernels::and_popcount(a, b); }, iters);
        const double bytes = 2.0 * static_cast<double>(words) * 8.0;
        std::printf("%12zu %14.2f %14.2f %8.2f\n", words, bytes / ts / 1e9, bytes / ta / 1e9,
                    ts / ta);
    }
    return 0;
}
