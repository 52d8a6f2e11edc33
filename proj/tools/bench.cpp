// Timing comparison of the OpenMP kernels against their serial references.
// Both paths must produce identical numbers; the table reports the speedup.

#include <chrono>
#include <cstdio>
#include <cstdint>

#include "sphrest/measures.hpp"
#include "sphrest/specialfn.hpp"
#include "sphrest/spherequad.hpp"
#include "sphrest/verifier.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace sphrest;

namespace {

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   results %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        const long n = 1000000;
        double a = 0.0, b = 0.0;
        double ts = time_ms([&] { a = geometric_identity_max_dev_serial(3, n, 7); });
        double tp = time_ms([&] { b = geometric_identity_max_dev(3, n, 7); });
        row("geometric identity 1e6", ts, tp, a == b);
    }
    {
        const long n = 1000000;
        auto one = TrialFunction::constant(1.0);
        double a = 0.0, b = 0.0;
        double ts = time_ms([&] { a = hd_direct_mc_sum_serial(3, one, n, 7); });
        double tp = time_ms([&] { b = hd_direct_mc(3, one, n, 7, true).first * n /
                                      (sphere_area(2) * sphere_area(2)); });
        row("hd double integral 1e6", ts, tp, std::abs(a - b) < 1e-9 * std::abs(a));
    }
    {
        std::vector<double> va, vb;
        double ts = time_ms([&] { va = conv_profile(3, 4, 1024, /*parallel=*/false).values(); });
        double tp = time_ms([&] { vb = conv_profile(3, 4, 1024, /*parallel=*/true).values(); });
        row("convolution profile 4-fold", ts, tp, va == vb);
    }
    return 0;
}
