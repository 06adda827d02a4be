// Microbenchmarks for the hot paths: gate kernels, diagonal cost
// application, expectation, sampling, full circuit execution, classical
// reduction and enumeration, and the optimizer on a smooth objective.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "svq/encoding.hpp"
#include "svq/lattice.hpp"
#include "svq/optimizer.hpp"
#include "svq/rng.hpp"
#include "svq/simulator.hpp"

using namespace svq;

namespace {

Statevector uniform_state(int qubits) {
    const std::size_t n = std::size_t{1} << qubits;
    return Statevector(n, std::complex<double>(1.0 / std::sqrt(double(n)), 0.0));
}

LatticeBasis identity(int n) {
    IntMat rows(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
    return make_basis(std::move(rows));
}

LatticeBasis random_basis(int n, std::uint64_t seed) {
    Rng rng(seed);
    while (true) {
        IntMat rows(n, IntVec(n));
        for (auto& r : rows)
            for (auto& e : r) e = rng.uniform_int(-10, 10);
        if (determinant(rows) != 0) return make_basis(std::move(rows));
    }
}

IsingModel cube_model(int dim) {
    return build_hamiltonian(identity(dim), build_partition(PartitionKind::FullCube, 0, dim, 2));
}

}  // namespace

static void BM_GateRy(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    auto psi = uniform_state(q);
    const Gate g{GateKind::Ry, q / 2, -1, -1, 1.0, 0.0};
    for (auto _ : state) {
        apply_gate(psi, g, 0.7);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * (1LL << q));
}
BENCHMARK(BM_GateRy)->Arg(10)->Arg(16)->Arg(20);

static void BM_GateCnot(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    auto psi = uniform_state(q);
    const Gate g{GateKind::Cnot, 0, q - 1, -1, 1.0, 0.0};
    for (auto _ : state) {
        apply_gate(psi, g, 0.0);
        benchmark::DoNotOptimize(psi.data());
    }
    state.SetItemsProcessed(state.iterations() * (1LL << q));
}
BENCHMARK(BM_GateCnot)->Arg(10)->Arg(16)->Arg(20);

// one diagonal pass over the amplitudes
static void BM_DiagCostFastPath(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto model = cube_model(dim);
    auto psi = uniform_state(model.num_qubits);
    const Gate g{GateKind::DiagCost, 0, -1, -1, 1.0, 0.0};
    for (auto _ : state) {
        apply_gate(psi, g, 0.3, &model);
        benchmark::DoNotOptimize(psi.data());
    }
}
BENCHMARK(BM_DiagCostFastPath)->Arg(5)->Arg(8);

// the same unitary as a CNOT/RZ/CNOT ladder
static void BM_DiagCostDecomposed(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto model = cube_model(dim);
    const auto gates = diag_cost_gates(model, 0, 1.0);
    auto psi = uniform_state(model.num_qubits);
    const std::vector<double> params = {0.3};
    for (auto _ : state) {
        for (const auto& g : gates) apply_gate(psi, g, resolve_angle(g, params));
        benchmark::DoNotOptimize(psi.data());
    }
}
BENCHMARK(BM_DiagCostDecomposed)->Arg(5)->Arg(8);

static void BM_Expectation(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto model = cube_model(dim);
    const auto psi = uniform_state(model.num_qubits);
    for (auto _ : state) benchmark::DoNotOptimize(expectation(psi, model));
}
BENCHMARK(BM_Expectation)->Arg(5)->Arg(8)->Arg(10);

static void BM_Sample1024(benchmark::State& state) {
    const auto psi = uniform_state(static_cast<int>(state.range(0)));
    Rng rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(sample(psi, 1024, rng));
}
BENCHMARK(BM_Sample1024)->Arg(10)->Arg(16);

static void BM_HeaExecute(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    const auto plan = build_hea(q, 2);
    Rng rng(3);
    const auto params = init_params(plan.param_count, rng);
    for (auto _ : state) benchmark::DoNotOptimize(execute(plan, params));
}
BENCHMARK(BM_HeaExecute)->Arg(6)->Arg(10);

static void BM_QaoaExecute(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    auto model = std::make_shared<const IsingModel>(cube_model(dim));
    const auto plan = build_qaoa(model->num_qubits, 1, model, true);
    Rng rng(3);
    const auto params = init_params(plan.param_count, rng);
    for (auto _ : state) benchmark::DoNotOptimize(execute(plan, params));
}
BENCHMARK(BM_QaoaExecute)->Arg(5)->Arg(8);

static void BM_LllReduce(benchmark::State& state) {
    const auto basis = random_basis(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(lll_reduce(basis));
}
BENCHMARK(BM_LllReduce)->Arg(4)->Arg(6)->Arg(8);

static void BM_OracleEnumeration(benchmark::State& state) {
    const auto basis = lll_reduce(random_basis(static_cast<int>(state.range(0)), 13));
    for (auto _ : state) benchmark::DoNotOptimize(shortest_vector_oracle(basis));
}
BENCHMARK(BM_OracleEnumeration)->Arg(4)->Arg(6)->Arg(8);

static void BM_PowellQuadratic(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    auto f = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double t = x[i] - double(i);
            s += (1.0 + 0.1 * double(i)) * t * t;
        }
        return s;
    };
    OptimizeConfig cfg;
    for (auto _ : state) {
        Rng rng(5);
        benchmark::DoNotOptimize(powell_minimize(f, init_params(d, rng), cfg));
    }
}
BENCHMARK(BM_PowellQuadratic)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
