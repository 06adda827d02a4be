// Command line surface: instance generation, single solves, batch
// experiments, reporting, and the qubit table.
//
// Exit codes: 0 ok, 1 usage, 2 runtime failure, 3 lattice invariant breach.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svq/bench.hpp"
#include "svq/encoding.hpp"
#include "svq/errors.hpp"
#include "svq/solvers.hpp"

namespace fs = std::filesystem;
using namespace svq;

namespace {

Rat delta_from(double d) {
    if (!(d > 0.25 && d <= 1.0)) throw std::invalid_argument("lll delta must be in (0.25, 1]");
    return Rat(Int(std::llround(d * 10000)), Int(10000));
}

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : list) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    if (out.empty()) throw std::invalid_argument("empty algorithm list");
    return out;
}

SolveRecord dispatch(const std::string& tag, const InstanceFile& inst, const SolverConfig& cfg,
                     std::uint64_t seed) {
    if (tag == "iqoap") return iqoap(inst.basis, inst.lambda1_sq, cfg, seed);
    if (tag.rfind("psa-", 0) == 0) return psa(inst.basis, inst.lambda1_sq, cfg, seed);
    return ipsa(inst.basis, inst.lambda1_sq, cfg, seed);
}

void write_instances(const std::vector<InstanceFile>& set, const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& inst : set) save_instance(inst, dir / (inst.id + ".json"));
    std::printf("wrote %zu instances to %s\n", set.size(), dir.string().c_str());
}

struct GenArgs {
    int dim = 4;
    int count = 20;
    std::uint64_t seed = 1;
    std::string out;
    int entry_bound = 10;
    int uni_ops = 20;
    double lll_delta = 0.75;
    double max_ratio = 0.05;
};

struct SolveArgs {
    std::string algorithm;
    int k = 3;
    std::string instance;
    std::uint64_t seed = 1;
    int layers = 0;
    int shots = 0;
    int bits = 0;
    double xtol = 0.0;
    double ftol = 0.0;
    long long max_evals = -1;
    std::string out;
};

struct BenchArgs {
    std::string instances;
    std::string algorithms;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out;
};

struct ReportArgs {
    std::string in;
    std::string format = "table";
    bool emit_plot_data = false;
};

int run_gen(const GenArgs& a, bool challenging) {
    GenParams params;
    params.entry_bound = a.entry_bound;
    params.uni_ops = a.uni_ops;
    params.lll_delta = delta_from(a.lll_delta);
    const auto permille = std::llround(a.max_ratio * 1000);
    if (permille < 1 || permille > 1000)
        throw std::invalid_argument("max ratio must be in (0.001, 1]");
    params.max_ratio_permille = static_cast<int>(permille);
    auto set = challenging ? gen_challenging(a.dim, a.count, a.seed, params)
                           : gen_benchmark(a.dim, a.count, a.seed, params);
    write_instances(set, a.out);
    return 0;
}

int run_solve(const SolveArgs& a) {
    auto inst = load_instance(a.instance);
    const std::string tag = a.algorithm == "psa" ? "psa-" + std::to_string(a.k) : a.algorithm;
    auto cfg = default_config(tag, inst.dim);
    if (a.layers > 0) cfg.layers = a.layers;
    if (a.shots > 0) cfg.shots = a.shots;
    if (a.bits > 0) cfg.bits = a.bits;
    if (a.xtol > 0) cfg.opt.xtol = a.xtol;
    if (a.ftol > 0) cfg.opt.ftol = a.ftol;
    if (a.max_evals >= 0) cfg.opt.max_evals = a.max_evals;

    RunRecord rec;
    rec.set_name = inst.set_name;
    rec.dim = inst.dim;
    rec.lambda1_sq = inst.lambda1_sq;
    rec.solve = dispatch(tag, inst, cfg, a.seed);
    rec.solve.algorithm = tag;
    rec.solve.instance_id = inst.id;
    save_record(rec, a.out);
    std::printf("%s on %s: success=%d ar=%.4f runs=%d updates=%d evals=%lld depth=%lld cnots=%lld\n",
                tag.c_str(), inst.id.c_str(), rec.solve.success ? 1 : 0, rec.solve.approx_ratio,
                rec.solve.vqa_runs, rec.solve.basis_updates, rec.solve.evals_total,
                rec.solve.depth_total, rec.solve.cnot_total);
    return 0;
}

int run_bench(const BenchArgs& a) {
    auto instances = load_instance_dir(a.instances);
    auto tags = split_list(a.algorithms);
    for (const auto& t : tags) (void)default_config(t, instances.front().dim);  // fail fast
    auto records = run_experiment(instances, tags, a.jobs, a.seed);
    const fs::path out(a.out);
    fs::create_directories(out / "records");
    for (const auto& r : records)
        save_record(r, out / "records" / (r.solve.instance_id + "__" + r.solve.algorithm + ".json"));
    auto summary = summarize(records);
    auto csv = summary_csv(summary);
    {
        std::ofstream f(out / "summary.csv");
        f << csv;
    }
    std::fputs(summary_table(summary).c_str(), stdout);
    std::printf("wrote %zu records and summary.csv to %s\n", records.size(), out.string().c_str());
    return 0;
}

int run_report(const ReportArgs& a) {
    fs::path dir(a.in);
    if (fs::is_directory(dir / "records")) dir /= "records";
    auto summary = summarize(load_record_dir(dir));
    if (a.format == "csv")
        std::fputs(summary_csv(summary).c_str(), stdout);
    else
        std::fputs(summary_table(summary).c_str(), stdout);
    if (a.emit_plot_data) {
        const auto path = fs::path(a.in) / "plot.json";
        std::ofstream f(path);
        f << plot_series_json(summary);
        std::fprintf(stderr, "plot series written to %s\n", path.string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shortest-vector experiments on a statevector simulator"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate instance sets");
    gen->require_subcommand(1);
    auto* gen_bm = gen->add_subcommand("benchmark", "scrambled reduced bases");
    auto* gen_ch = gen->add_subcommand("challenging", "bases where LLL falls short");
    for (auto* g : {gen_bm, gen_ch}) {
        g->add_option("--dim", gen_args.dim, "lattice dimension")->required();
        g->add_option("--count", gen_args.count, "instances to generate")->required();
        g->add_option("--seed", gen_args.seed, "master seed")->required();
        g->add_option("--out", gen_args.out, "output directory")->required();
        g->add_option("--lll-delta", gen_args.lll_delta, "LLL reduction parameter");
    }
    gen_bm->add_option("--entry-bound", gen_args.entry_bound, "basis entry range");
    gen_bm->add_option("--uni-ops", gen_args.uni_ops, "scramble operations");
    gen_ch->add_option("--max-ratio", gen_args.max_ratio, "LLL overshoot window");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
    solve->add_option("--algorithm", solve_args.algorithm, "ipsa | ipsa-qaoa | iqoap | psa")
        ->required()
        ->check(CLI::IsMember({"ipsa", "ipsa-qaoa", "iqoap", "psa"}));
    solve->add_option("--k", solve_args.k, "partition arity for psa");
    solve->add_option("--instance", solve_args.instance, "instance file")->required();
    solve->add_option("--seed", solve_args.seed, "solver seed")->required();
    solve->add_option("--layers", solve_args.layers, "circuit layers");
    solve->add_option("--shots", solve_args.shots, "measurement shots");
    solve->add_option("--bits", solve_args.bits, "free coefficient width");
    solve->add_option("--xtol", solve_args.xtol, "optimizer point tolerance");
    solve->add_option("--ftol", solve_args.ftol, "optimizer value tolerance");
    solve->add_option("--max-evals", solve_args.max_evals, "optimizer evaluation budget");
    solve->add_option("--out", solve_args.out, "record file")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run an algorithm grid over an instance set");
    bench->add_option("--instances", bench_args.instances, "instance directory")->required();
    bench->add_option("--algorithms", bench_args.algorithms, "comma-separated tags")->required();
    bench->add_option("--seed", bench_args.seed, "master seed")->required();
    bench->add_option("--jobs", bench_args.jobs, "worker threads");
    bench->add_option("--out", bench_args.out, "output directory")->required();

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "summarize saved records");
    report->add_option("--in", report_args.in, "records directory")->required();
    report->add_option("--format", report_args.format, "csv | table")
        ->check(CLI::IsMember({"csv", "table"}));
    report->add_flag("--emit-plot-data", report_args.emit_plot_data, "also write plot.json");

    int max_dim = 8;
    auto* qubits = app.add_subcommand("qubits", "register requirements per algorithm");
    qubits->add_option("--max-dim", max_dim, "curve bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen_bm->parsed()) return run_gen(gen_args, false);
        if (gen_ch->parsed()) return run_gen(gen_args, true);
        if (solve->parsed()) return run_solve(solve_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (report->parsed()) return run_report(report_args);
        if (qubits->parsed()) {
            std::fputs(qubit_table_text(qubit_table(max_dim)).c_str(), stdout);
            return 0;
        }
    } catch (const VerificationError& e) {
        std::fprintf(stderr, "verification failure: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
