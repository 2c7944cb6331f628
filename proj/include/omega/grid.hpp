#pragma once

#include <span>
#include <string>
#include <vector>

#include "omega/evaluator.hpp"

namespace omega {

struct GridPointResult {
    Cx s{};
    Cx value{};
    double achieved_error = 0.0;
    bool converged = true;
    std::optional<PoleInfo> pole{};
    bool ok = true; // false when evaluation threw; message holds the reason
    std::string message;
};

// Serial reference kernel: Omega_k at every grid point, output order = input
// order.
std::vector<GridPointResult> eval_grid_serial(const OmegaEvaluator& ev, int k,
                                              std::span<const Cx> points);

// OpenMP kernel over the same per-point routine. Points are independent, so
// the results are identical to the serial reference bit for bit; without
// OpenMP this falls back to the serial loop.
std::vector<GridPointResult> eval_grid_parallel(const OmegaEvaluator& ev, int k,
                                                std::span<const Cx> points);

std::vector<GridPointResult> eval_grid(const OmegaEvaluator& ev, int k, std::span<const Cx> points,
                                       bool parallel);

} // namespace omega
