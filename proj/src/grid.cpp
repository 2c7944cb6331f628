#include "omega/grid.hpp"

namespace omega {

namespace {

GridPointResult eval_point(const OmegaEvaluator& ev, int k, Cx s) {
    GridPointResult r;
    r.s = s;
    try {
        const EvalResult e = ev.omega(k, s);
        r.value = e.value;
        r.achieved_error = e.achieved_error;
        r.converged = e.converged;
        r.pole = e.pole;
    } catch (const std::exception& ex) {
        r.ok = false;
        r.message = ex.what();
    }
    return r;
}

} // namespace

std::vector<GridPointResult> eval_grid_serial(const OmegaEvaluator& ev, int k,
                                              std::span<const Cx> points) {
    std::vector<GridPointResult> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = eval_point(ev, k, points[i]);
    return out;
}

std::vector<GridPointResult> eval_grid_parallel(const OmegaEvaluator& ev, int k,
                                                std::span<const Cx> points) {
    std::vector<GridPointResult> out(points.size());
    const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = eval_point(ev, k, points[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<GridPointResult> eval_grid(const OmegaEvaluator& ev, int k, std::span<const Cx> points,
                                       bool parallel) {
    return parallel ? eval_grid_parallel(ev, k, points) : eval_grid_serial(ev, k, points);
}

} // namespace omega
