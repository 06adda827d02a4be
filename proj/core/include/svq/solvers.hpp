#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svq/encoding.hpp"
#include "svq/lattice.hpp"
#include "svq/optimizer.hpp"
#include "svq/rng.hpp"

namespace svq {

enum class CircuitKind { Hea, Qaoa, QaoaTied };

struct SolverConfig {
    CircuitKind circuit = CircuitKind::Hea;
    int layers = 2;
    int shots = 1024;
    OptimizeConfig opt;
    int vqa_cap = 500;  // safety ceiling on total VQA runs per solve
    int bits = 0;       // tailed per-coefficient width; 0 picks default_tailed_bits(dim)
    int k = 3;          // partition width for the non-iterative solver
};

// Published per-algorithm defaults: ipsa -> HEA p=2, ipsa-qaoa -> QAOA p=4,
// iqoap -> tied QAOA p=1, psa-<k> -> HEA p=2 with the requested k.
SolverConfig default_config(std::string_view algorithm, int dim);

struct VqaOutcome {
    std::optional<LatticeVector> candidate;  // empty only when every sample decoded to zero
    int evals = 0;
    int qubits = 0;
    int depth_per_exec = 0;
    int cnots_per_exec = 0;
    long long depth_used = 0;  // (evals + 1) * depth_per_exec; the +1 is the sampling run
    long long cnots_used = 0;
    int shots = 0;
};

struct RunLogEntry {
    int qubits = 0;
    int evals = 0;
    int depth_per_exec = 0;
    int cnots_per_exec = 0;
};

struct SolveRecord {
    std::string algorithm;
    std::string instance_id;  // filled by the harness
    LatticeVector found;      // coords relative to the basis the solver was given
    bool success = false;
    double approx_ratio = 0.0;
    long long depth_total = 0;
    long long cnot_total = 0;
    int vqa_runs = 0;
    long long evals_total = 0;
    int basis_updates = 0;
    bool cap_breached = false;
    std::uint64_t seed = 0;
    std::vector<RunLogEntry> run_log;
};

// One full VQA execution on the given partition: Hamiltonian, circuit,
// uniform [0, pi] start, Powell, one execution at the optimum, sampling.
// The candidate is the most frequent nonzero decoded sample (ties break
// toward the smaller bitstring); zero decodes are discarded first.
VqaOutcome run_vqa(const LatticeBasis& basis, const PartitionSpec& spec, const SolverConfig& cfg,
                   Rng& rng);

// Stack-driven solver over 1-tailed partitions on a sorted basis; every
// accepted candidate replaces its partition's pivot row and re-opens the
// partitions at and below the candidate's new position.
SolveRecord ipsa(const LatticeBasis& basis, const Int& lambda1_sq, const SolverConfig& cfg,
                 std::uint64_t seed);

// 50 fixed full-cube iterations; a candidate replaces the longest strictly
// longer row whose coordinate is +-1, otherwise the iteration is ineffective.
SolveRecord iqoap(const LatticeBasis& basis, const Int& lambda1_sq, const SolverConfig& cfg,
                  std::uint64_t seed);

// Non-iterative partition sweep X_1..X_n; the basis is never modified and
// the global minimum candidate wins.
SolveRecord psa(const LatticeBasis& basis, const Int& lambda1_sq, const SolverConfig& cfg,
                std::uint64_t seed);

}  // namespace svq
