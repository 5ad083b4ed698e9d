// Times the chunked OpenMP reduction kernels against their plain serial
// references and reports the relative difference of the results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "borncount/kernels.hpp"

namespace {

using namespace borncount;
using Clock = std::chrono::steady_clock;

std::vector<double> make_values(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 0.5 + 0.5 * std::sin(0.001 * static_cast<double>(i));
    return v;
}

std::vector<kernels::cplx> make_amps(std::size_t n) {
    std::vector<kernels::cplx> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 0.0007 * static_cast<double>(i);
        a[i] = {std::cos(t), std::sin(t)};
    }
    return a;
}

template <class F>
double time_ms(F&& f, int reps) {
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) f();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, std::size_t n, double serial_ms, double parallel_ms,
            double rel_diff) {
    std::printf("%-18s n=%9zu  serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx  rel-diff %.2e\n",
                name, n, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, rel_diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial chunked kernels)\n");
#endif
    const int reps = 20;
    for (std::size_t n : {std::size_t{1} << 16, std::size_t{1} << 20,
                          std::size_t{1} << 23}) {
        const std::vector<double> v = make_values(n);
        const std::vector<double> w = make_values(n);
        const std::vector<kernels::cplx> a = make_amps(n);

        double rs = 0, rp = 0;
        double ts = time_ms([&] { rs = kernels::serial::weighted_sum(v, w); }, reps);
        double tp = time_ms([&] { rp = kernels::weighted_sum(v, w); }, reps);
        report("weighted_sum", n, ts, tp, std::abs(rs - rp) / std::abs(rs));

        kernels::cplx ds{}, dp{};
        ts = time_ms([&] { ds = kernels::serial::weighted_dot(a, a, w); }, reps);
        tp = time_ms([&] { dp = kernels::weighted_dot(a, a, w); }, reps);
        report("weighted_dot", n, ts, tp, std::abs(ds - dp) / std::abs(ds));

        ts = time_ms([&] { rs = kernels::serial::weighted_norm2(a, w); }, reps);
        tp = time_ms([&] { rp = kernels::weighted_norm2(a, w); }, reps);
        report("weighted_norm2", n, ts, tp, std::abs(rs - rp) / std::abs(rs));

        std::vector<double> ss, sp;
        ts = time_ms([&] { ss = kernels::serial::inclusive_scan(v); }, reps);
        tp = time_ms([&] { sp = kernels::inclusive_scan(v); }, reps);
        report("inclusive_scan", n, ts, tp,
               std::abs(ss.back() - sp.back()) / std::abs(ss.back()));
    }
    return 0;
}
