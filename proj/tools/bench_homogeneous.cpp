// Times the parallel homogeneous sub-base search against the serial
// reference on parity-colored pair fragments of growing windows, checking
// that both return the identical base.

#include "bqo/barrier.hpp"

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace bqo;

namespace {

double time_of(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint32_t max_window = 19;
    if (argc > 1) max_window = static_cast<std::uint32_t>(std::stoul(argv[1]));

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%-8s %-10s %-12s %-12s %-8s %s\n", "window", "subsets", "serial[s]",
                "parallel[s]", "speedup", "|H|");

    Coloring parity = [](const FinSeq& s) {
        std::uint64_t sum = 0;
        for (auto v : s.entries()) sum += v;
        return sum % 2 == 0 ? 1 : 2;
    };

    for (std::uint32_t w = 12; w <= max_window; ++w) {
        auto frag = builtin_fragment("uniform:2:" + std::to_string(w));
        std::optional<std::vector<std::uint32_t>> serial, parallel;
        double ts = time_of([&] { serial = homogeneous_sub_base_serial(frag, parity, 4); });
        double tp = time_of([&] { parallel = homogeneous_sub_base(frag, parity, 4); });
        if (!serial || !parallel || !(*serial == *parallel)) {
            std::fprintf(stderr, "window %u: serial and parallel results differ\n", w);
            return 1;
        }
        std::printf("%-8u %-10llu %-12.4f %-12.4f %-8.2f %zu\n", w,
                    static_cast<unsigned long long>(1ull << (w + 1)), ts, tp,
                    tp > 0 ? ts / tp : 0.0, serial->size());
    }
    return 0;
}
