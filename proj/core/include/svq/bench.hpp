#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "svq/lattice.hpp"
#include "svq/solvers.hpp"

namespace svq {

// Generator knobs; every instance file records the values it was built with
// so a set can be regenerated or audited later.
struct GenParams {
    int entry_bound = 10;        // raw basis entries drawn uniform in [-b, b]
    int uni_ops = 20;            // elementary operations in the scramble
    int uni_entry_bound = 150;   // magnitude guard inside the scramble
    Rat lll_delta = Rat(3, 4);
    int max_ratio_permille = 50;   // challenging filter: ||b_lll||/lambda1 - 1 in (0, r]
    int max_attempts = 5000;       // rejection budget per accepted challenging instance
};

// One lattice instance on disk. The benchmark set stores the pre-scramble
// reduced basis alongside the scrambled one; the challenging set instead
// stores the norm LLL gets stuck at (its basis is handed out unscrambled).
struct InstanceFile {
    std::string schema = "svq.instance/1";
    std::string set_name;  // "benchmark" | "lll-challenging"
    std::string id;        // "<set>-n<dim>-<index>", also the filename stem
    int dim = 0;
    std::uint64_t seed = 0;  // sub-seed this instance was drawn from
    LatticeBasis basis;      // what solvers see
    LatticeBasis reduced;    // benchmark only; dim 0 otherwise
    Int lambda1_sq;
    Int lll_min_norm_sq;     // challenging only; 0 otherwise
    GenParams params;
};

// One (instance, algorithm) outcome. A pair that threw is kept as a failed
// record with the message; it counts against SR but stays out of the
// averaged pools.
struct RunRecord {
    std::string schema = "svq.record/1";
    SolveRecord solve;
    std::string set_name;
    int dim = 0;
    Int lambda1_sq;
    bool failed = false;
    std::string error;
};

struct SummaryRow {
    std::string set_name;
    std::string algorithm;
    int dim = 0;
    double sr = 0.0;
    double aar = 0.0;
    double d_med = 0.0, d_q1 = 0.0, d_q3 = 0.0;
    double c_med = 0.0, c_q1 = 0.0, c_q3 = 0.0;
    int n_instances = 0;
};

// Rows sorted by (set, algorithm, dim).
struct MetricsSummary {
    std::vector<SummaryRow> rows;
};

struct QubitRow {
    std::string algorithm;
    int dim = 0;
    int qubits = 0;
};

// Scrambled benchmark instances: random basis, oracle ground truth, LLL
// reduction, unimodular disguise. A batch where more than a fifth of the
// scrambles are already in reduced row order gets those members redrawn.
std::vector<InstanceFile> gen_benchmark(int dim, int count, std::uint64_t master_seed,
                                        const GenParams& params = {});

// Rejection-sampled instances whose LLL minimum overshoots lambda1 by at
// most the configured ratio; no scrambling. Throws with the attempt count
// if the budget runs out.
std::vector<InstanceFile> gen_challenging(int dim, int count, std::uint64_t master_seed,
                                          const GenParams& params = {});

using ConfigHook = std::function<SolverConfig(std::string_view algorithm, int dim)>;

// Every (instance, algorithm) pair on a bounded worker pool. Per-pair seed
// comes from the master seed mixed with (instance id, algorithm tag), so
// results do not depend on scheduling; output is sorted by that pair key.
// A null hook means default_config.
std::vector<RunRecord> run_experiment(const std::vector<InstanceFile>& instances,
                                      const std::vector<std::string>& algorithms, int jobs,
                                      std::uint64_t master_seed, const ConfigHook& config = {});

// SR, AAR, and linear-interpolation median/quartiles of the depth and cnot
// totals, grouped by (set, algorithm, dim). Throws on an empty batch.
MetricsSummary summarize(const std::vector<RunRecord>& records);

std::string summary_csv(const MetricsSummary& summary);
std::string summary_table(const MetricsSummary& summary);
std::string plot_series_json(const MetricsSummary& summary);

// The fixed register table (4-PSA stops at n=5 and 5-PSA at n=4, past that
// they overflow the register) followed by the two scaling curves.
std::vector<QubitRow> qubit_table(int max_dim);
std::string qubit_table_text(const std::vector<QubitRow>& rows);

void save_instance(const InstanceFile& inst, const std::filesystem::path& path);
InstanceFile load_instance(const std::filesystem::path& path);
std::vector<InstanceFile> load_instance_dir(const std::filesystem::path& dir);

void save_record(const RunRecord& rec, const std::filesystem::path& path);
RunRecord load_record(const std::filesystem::path& path);
std::vector<RunRecord> load_record_dir(const std::filesystem::path& dir);

}  // namespace svq
