#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "svq/optimizer.hpp"
#include "svq/rng.hpp"

using namespace svq;

namespace {

void check_monotone(const std::vector<double>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
}

double rosenbrock(const std::vector<double>& x) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
}

}  // namespace

TEST_SUITE_BEGIN("optimizer");

TEST_CASE("one-dimensional quadratic lands on its minimum") {
    auto res = powell_minimize([](const std::vector<double>& x) { return (x[0] - 3.0) * (x[0] - 3.0); },
                               {0.0}, {});
    CHECK(res.converged);
    CHECK(std::abs(res.best_params[0] - 3.0) < 1e-3);
    CHECK(res.best_value < 1e-6);
    check_monotone(res.trace);
}

TEST_CASE("rosenbrock valley is traversed to the global minimum") {
    auto res = powell_minimize(rosenbrock, {-1.2, 1.0}, {});
    CHECK(res.converged);
    CHECK(std::abs(res.best_params[0] - 1.0) < 1e-2);
    CHECK(std::abs(res.best_params[1] - 1.0) < 1e-2);
    check_monotone(res.trace);
}

TEST_CASE("separable sine landscape reaches a zero") {
    Rng rng(7);
    auto x0 = init_params(4, rng);
    auto res = powell_minimize(
        [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v : x) s += std::sin(v) * std::sin(v);
            return s;
        },
        x0, {});
    CHECK(res.best_value <= 1e-6);
    check_monotone(res.trace);
}

TEST_CASE("convex quadratics are solved within three sweeps") {
    Rng rng(41);
    for (int d = 2; d <= 6; ++d) {
        // mildly coupled family: strongly coupled quadratics need up to d
        // sweeps (conjugate-direction theory), so the three-sweep rate is
        // only a fair ask when the off-diagonal terms stay small
        std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
        std::vector<double> c(d);
        for (int i = 0; i < d; ++i) {
            a[i][i] = 1.0 + rng.uniform(0.0, 2.0);
            c[i] = rng.uniform(-2.0, 2.0);
            for (int j = 0; j < i; ++j) a[i][j] = a[j][i] = rng.uniform(-0.05, 0.05);
        }
        auto f = [&](const std::vector<double>& x) {
            double s = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) s += a[i][j] * (x[i] - c[i]) * (x[j] - c[j]);
            return s;
        };
        // tight tolerances keep the stopping rule out of the way; the check is
        // about how fast the direction set converges, not where it stops
        OptimizeConfig cfg;
        cfg.xtol = cfg.ftol = 1e-9;
        auto res = powell_minimize(f, std::vector<double>(d, 0.0), cfg);
        const std::size_t sweeps = std::min<std::size_t>(3, res.trace.size());
        CHECK(res.trace[sweeps - 1] <= 1e-6);
        check_monotone(res.trace);
    }
}

TEST_CASE("repeated runs are bit-identical") {
    auto first = powell_minimize(rosenbrock, {-1.2, 1.0}, {});
    auto second = powell_minimize(rosenbrock, {-1.2, 1.0}, {});
    CHECK(first.num_evals == second.num_evals);
    CHECK(first.best_value == second.best_value);
    CHECK(first.best_params == second.best_params);
}

TEST_CASE("evaluation budget is a hard ceiling") {
    int calls = 0;
    OptimizeConfig cfg;
    cfg.max_evals = 50;
    auto res = powell_minimize(
        [&](const std::vector<double>& x) {
            ++calls;
            return rosenbrock(x);
        },
        {-1.2, 1.0}, cfg);
    CHECK(calls <= 50);
    CHECK(res.num_evals == calls);
    CHECK_FALSE(res.converged);
    CHECK(res.best_value < rosenbrock({-1.2, 1.0}));
}

TEST_CASE("initial parameters are uniform over the stated interval") {
    Rng rng(5);
    CHECK(init_params(0, rng).empty());
    auto draws = init_params(100000, rng);
    double mean = 0.0;
    const double pi = std::acos(-1.0);
    for (double v : draws) {
        CHECK(v >= 0.0);
        CHECK(v <= pi);
        mean += v;
    }
    mean /= static_cast<double>(draws.size());
    CHECK(std::abs(mean - pi / 2) < 0.02);
}

TEST_CASE("a non-finite objective aborts with a diagnostic") {
    CHECK_THROWS_AS(
        powell_minimize([](const std::vector<double>&) { return std::nan(""); }, {0.0}, {}),
        std::runtime_error);
}

TEST_CASE("empty parameter vectors evaluate once and stop") {
    auto res = powell_minimize([](const std::vector<double>&) { return 4.25; }, {}, {});
    CHECK(res.converged);
    CHECK(res.num_evals == 1);
    CHECK(res.best_value == 4.25);
}

TEST_CASE("invalid tolerances are rejected") {
    OptimizeConfig cfg;
    cfg.ftol = 0.0;
    CHECK_THROWS_AS(powell_minimize([](const std::vector<double>& x) { return x[0]; }, {1.0}, cfg),
                    std::invalid_argument);
}

TEST_SUITE_END();
