#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "svq/rng.hpp"

namespace svq {

struct OptimizeConfig {
    double xtol = 1e-4;
    double ftol = 1e-4;
    int max_evals = 0;       // 0 selects 1000 * parameter count
    std::uint64_t seed = 0;  // consumed by callers drawing the starting point
};

struct OptimizeResult {
    std::vector<double> best_params;
    double best_value = 0.0;
    int num_evals = 0;
    bool converged = false;
    std::vector<double> trace;  // best value after each sweep, non-increasing
};

using Objective = std::function<double(const std::vector<double>&)>;

// i.i.d. uniform draws on [0, pi]
std::vector<double> init_params(int count, Rng& rng);

// Powell's conjugate-direction method. Directions start as the coordinate
// axes; each sweep line-minimizes along every direction (golden-section
// bracketing plus Brent), then the direction of greatest single-direction
// decrease is replaced by the net displacement when the standard acceptance
// test passes. Stops on the fractional cost test, on a sweep displacement
// below xtol * (1 + max |x|), or when the evaluation budget runs out.
OptimizeResult powell_minimize(const Objective& f, std::vector<double> x0,
                               const OptimizeConfig& cfg);

}  // namespace svq
