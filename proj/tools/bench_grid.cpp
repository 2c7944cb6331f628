// Benchmark: serial reference grid kernel vs the OpenMP one, same points.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "omega/grid.hpp"

using omega::Cx;

namespace {

double now_sec() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

int main(int argc, char** argv) {
    std::string pot_text = "d=2;a1=0.3";
    int npoints = 600;
    int k = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--pot") pot_text = argv[i + 1];
        else if (flag == "--n") npoints = std::atoi(argv[i + 1]);
        else if (flag == "--k") k = std::atoi(argv[i + 1]);
        else {
            std::fprintf(stderr, "usage: bench_grid [--pot <text>] [--n <points>] [--k <ray>]\n");
            return 2;
        }
    }

    const omega::Potential pot = omega::Potential::parse(pot_text);
    const omega::OmegaEvaluator ev(pot);

    std::vector<Cx> pts;
    pts.reserve(static_cast<std::size_t>(npoints));
    for (int i = 0; i < npoints; ++i) {
        // spread over a strip left and right of the imaginary axis, off the poles
        const double re = -3.0 + 8.0 * (i % 37) / 36.0 + 0.21;
        const double im = -4.0 + 8.0 * (i % 53) / 52.0;
        pts.emplace_back(re, im);
    }

    double t0 = now_sec();
    const auto serial = omega::eval_grid_serial(ev, k, pts);
    const double t_serial = now_sec() - t0;

    t0 = now_sec();
    const auto parallel = omega::eval_grid_parallel(ev, k, pts);
    const double t_parallel = now_sec() - t0;

    double max_dev = 0.0;
    for (std::size_t i = 0; i < serial.size(); ++i) {
        if (!serial[i].ok || serial[i].pole) continue;
        max_dev = std::max(max_dev, std::abs(serial[i].value - parallel[i].value));
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("potential        %s\n", pot.to_string().c_str());
    std::printf("points           %d\n", npoints);
    std::printf("threads          %d\n", threads);
    std::printf("serial           %.3f s  (%.2f ms/point)\n", t_serial, 1e3 * t_serial / npoints);
    std::printf("parallel         %.3f s  (%.2f ms/point)\n", t_parallel, 1e3 * t_parallel / npoints);
    std::printf("speedup          %.2fx\n", t_serial / std::max(t_parallel, 1e-9));
    std::printf("max |serial - parallel| = %.3e\n", max_dev);
    return max_dev == 0.0 ? 0 : 1;
}
