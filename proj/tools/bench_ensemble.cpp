// Benchmark: OpenMP ensemble map vs. the serial reference, same physics,
// identical results required.

#include <qslit/ensemble.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qslit;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool identical(const EnsembleResult& a, const EnsembleResult& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        if (a.records[i].y0 != b.records[i].y0) return false;
        if (a.records[i].t_end != b.records[i].t_end) return false;
        if (a.records[i].outcome.has_value() != b.records[i].outcome.has_value()) return false;
        if (a.records[i].outcome &&
            a.records[i].outcome->index() != b.records[i].outcome->index())
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int n = 256;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--n" && i + 1 < argc) n = std::atoi(argv[i + 1]);
    }

    PhysParams p;
    IntegratorConfig icfg;
    EnsembleConfig cfg;
    cfg.n = n;

    std::printf("ensemble benchmark: n=%d grid particles, default physics\n", n);

    auto t0 = std::chrono::steady_clock::now();
    const EnsembleResult serial = run_ensemble_serial(cfg, p, icfg);
    const double t_serial = seconds_since(t0);
    std::printf("serial:      %8.2f s   %7.1f particles/s\n", t_serial, n / t_serial);

#ifdef _OPENMP
    const int workers = omp_get_max_threads();
#else
    const int workers = 1;
#endif
    t0 = std::chrono::steady_clock::now();
    const EnsembleResult parallel = run_ensemble(cfg, p, icfg);
    const double t_parallel = seconds_since(t0);
    std::printf("openmp(%2d):  %8.2f s   %7.1f particles/s   speedup %.2fx\n", workers,
                t_parallel, n / t_parallel, t_serial / t_parallel);

    if (!identical(serial, parallel)) {
        std::printf("MISMATCH: parallel results differ from the serial reference\n");
        return 1;
    }
    std::printf("results: identical (arrivals=%d reflections=%d timeouts=%d)\n",
                serial.counts.arrivals, serial.counts.reflections, serial.counts.timeouts);
    return 0;
}
