#include "svq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "svq/encoding.hpp"
#include "svq/rng.hpp"

namespace svq {

namespace {

using ordered_json = nlohmann::ordered_json;

long long to_i64(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::runtime_error("integer too large for serialization");
    return static_cast<long long>(v);
}

ordered_json vec_json(const IntVec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& e : v) a.push_back(to_i64(e));
    return a;
}

ordered_json mat_json(const IntMat& m) {
    ordered_json a = ordered_json::array();
    for (const auto& row : m) a.push_back(vec_json(row));
    return a;
}

IntVec vec_from(const ordered_json& j) {
    IntVec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(Int(e.get<long long>()));
    return v;
}

IntMat mat_from(const ordered_json& j) {
    IntMat m;
    m.reserve(j.size());
    for (const auto& row : j) m.push_back(vec_from(row));
    return m;
}

std::string pair_id(const std::string& set, int dim, int index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-n%d-%03d", set.c_str(), dim, index);
    return buf;
}

LatticeBasis sample_nonsingular(int dim, int entry_bound, Rng& rng) {
    for (int tries = 0; tries < 10000; ++tries) {
        IntMat rows(static_cast<std::size_t>(dim), IntVec(static_cast<std::size_t>(dim)));
        for (auto& r : rows)
            for (auto& e : r) e = rng.uniform_int(-entry_bound, entry_bound);
        if (determinant(rows) != 0) return make_basis(std::move(rows));
    }
    throw std::runtime_error("rejection budget exhausted drawing a nonsingular basis");
}

InstanceFile draw_benchmark(int dim, const std::string& id, std::uint64_t sub_seed,
                            const GenParams& p) {
    Rng rng(sub_seed);
    auto raw = sample_nonsingular(dim, p.entry_bound, rng);
    auto reduced = lll_reduce(raw, p.lll_delta);
    auto u = random_unimodular(dim, p.uni_ops, rng, p.uni_entry_bound);
    InstanceFile inst;
    inst.set_name = "benchmark";
    inst.id = id;
    inst.dim = dim;
    inst.seed = sub_seed;
    inst.basis = apply_transform(u, reduced);
    inst.lambda1_sq = shortest_vector_oracle(reduced).norm_sq;
    inst.reduced = std::move(reduced);
    inst.params = p;
    return inst;
}

bool scramble_undone(const InstanceFile& inst) {
    return sort_basis(inst.basis).first.rows == sort_basis(inst.reduced).first.rows;
}

// percentile by linear interpolation between closest ranks; v sorted
double percentile(const std::vector<double>& v, double p) {
    if (v.empty()) return 0.0;
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

std::filesystem::path ensure_parent(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    return path;
}

std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

ordered_json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return ordered_json::parse(in);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(ensure_parent(path));
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::vector<InstanceFile> gen_benchmark(int dim, int count, std::uint64_t master_seed,
                                        const GenParams& params) {
    if (dim < 2 || dim > 8) throw std::invalid_argument("dimension must be in [2, 8]");
    if (count < 1) throw std::invalid_argument("count must be positive");

    std::vector<InstanceFile> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        auto id = pair_id("benchmark", dim, i);
        out.push_back(draw_benchmark(dim, id, mix_seed(master_seed, id, "gen"), params));
    }

    // difficulty guard: redraw members whose scramble landed back on the
    // reduced row set whenever they exceed a fifth of the batch
    for (int round = 1; round <= 16; ++round) {
        int trivial = 0;
        for (const auto& inst : out) trivial += scramble_undone(inst) ? 1 : 0;
        if (trivial * 5 <= count) return out;
        const auto label = "gen-r" + std::to_string(round);
        for (auto& inst : out)
            if (scramble_undone(inst))
                inst = draw_benchmark(dim, inst.id, mix_seed(master_seed, inst.id, label), params);
    }
    throw std::runtime_error("difficulty guard kept rejecting the batch");
}

std::vector<InstanceFile> gen_challenging(int dim, int count, std::uint64_t master_seed,
                                          const GenParams& params) {
    if (dim < 2 || dim > 8) throw std::invalid_argument("dimension must be in [2, 8]");
    if (count < 1) throw std::invalid_argument("count must be positive");
    if (params.max_ratio_permille < 1) throw std::invalid_argument("ratio window is empty");
    const Int scale = Int(1000 + params.max_ratio_permille);
    const Rat bound = Rat(scale * scale, Int(1000) * 1000);

    std::vector<InstanceFile> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto id = pair_id("lll-challenging", dim, i);
        bool accepted = false;
        for (int attempt = 0; attempt < params.max_attempts && !accepted; ++attempt) {
            const auto sub = mix_seed(master_seed, id, "try-" + std::to_string(attempt));
            Rng rng(sub);
            auto raw = sample_nonsingular(dim, params.entry_bound, rng);
            auto reduced = lll_reduce(raw, params.lll_delta);
            const Int lll_min = *std::min_element(reduced.norms_sq.begin(), reduced.norms_sq.end());
            const Int l1 = shortest_vector_oracle(reduced).norm_sq;
            if (!(lll_min > l1) || Rat(lll_min, l1) > bound) continue;
            InstanceFile inst;
            inst.set_name = "lll-challenging";
            inst.id = id;
            inst.dim = dim;
            inst.seed = sub;
            inst.basis = std::move(raw);  // handed out unscrambled and unreduced
            inst.lambda1_sq = l1;
            inst.lll_min_norm_sq = lll_min;
            inst.params = params;
            out.push_back(std::move(inst));
            accepted = true;
        }
        if (!accepted)
            throw std::runtime_error("challenging acceptance rate too low: " + id + " not found in " +
                                     std::to_string(params.max_attempts) + " attempts");
    }
    return out;
}

std::vector<RunRecord> run_experiment(const std::vector<InstanceFile>& instances,
                                      const std::vector<std::string>& algorithms, int jobs,
                                      std::uint64_t master_seed, const ConfigHook& config) {
    const std::size_t algos = algorithms.size();
    const std::size_t pairs = instances.size() * algos;
    std::vector<RunRecord> out(pairs);
    if (pairs == 0) return out;

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const auto p = cursor.fetch_add(1);
            if (p >= pairs) return;
            const auto& inst = instances[p / algos];
            const auto& tag = algorithms[p % algos];
            RunRecord r;
            r.set_name = inst.set_name;
            r.dim = inst.dim;
            r.lambda1_sq = inst.lambda1_sq;
            const auto seed = mix_seed(master_seed, inst.id, tag);
            try {
                auto cfg = config ? config(tag, inst.dim) : default_config(tag, inst.dim);
                if (tag == "iqoap")
                    r.solve = iqoap(inst.basis, inst.lambda1_sq, cfg, seed);
                else if (tag.rfind("psa-", 0) == 0)
                    r.solve = psa(inst.basis, inst.lambda1_sq, cfg, seed);
                else if (tag == "ipsa" || tag == "ipsa-qaoa")
                    r.solve = ipsa(inst.basis, inst.lambda1_sq, cfg, seed);
                else
                    throw std::invalid_argument("unknown algorithm: " + tag);
            } catch (const std::exception& e) {
                r.failed = true;
                r.error = e.what();
                r.solve = SolveRecord{};
                r.solve.seed = seed;
            }
            r.solve.algorithm = tag;  // the requested tag is the record's identity
            r.solve.instance_id = inst.id;
            out[p] = std::move(r);
        }
    };

    const auto workers = static_cast<std::size_t>(std::clamp<long long>(jobs, 1, 64));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, pairs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::stable_sort(out.begin(), out.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.solve.instance_id, a.solve.algorithm) <
               std::tie(b.solve.instance_id, b.solve.algorithm);
    });
    return out;
}

MetricsSummary summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no records to summarize");
    std::map<std::tuple<std::string, std::string, int>, std::vector<const RunRecord*>> cells;
    for (const auto& r : records)
        cells[{r.set_name, r.solve.algorithm, r.dim}].push_back(&r);

    MetricsSummary summary;
    for (const auto& [key, cell] : cells) {
        SummaryRow row;
        row.set_name = std::get<0>(key);
        row.algorithm = std::get<1>(key);
        row.dim = std::get<2>(key);
        row.n_instances = static_cast<int>(cell.size());
        int successes = 0;
        double ar_sum = 0.0;
        std::vector<double> depths, cnots;
        int usable = 0;
        for (const auto* r : cell) {
            if (r->failed) continue;  // counts against SR, stays out of the pools
            ++usable;
            successes += r->solve.success ? 1 : 0;
            ar_sum += r->solve.approx_ratio;
            depths.push_back(static_cast<double>(r->solve.depth_total));
            cnots.push_back(static_cast<double>(r->solve.cnot_total));
        }
        row.sr = static_cast<double>(successes) / static_cast<double>(cell.size());
        row.aar = usable > 0 ? ar_sum / usable : 0.0;
        std::sort(depths.begin(), depths.end());
        std::sort(cnots.begin(), cnots.end());
        row.d_med = percentile(depths, 0.5);
        row.d_q1 = percentile(depths, 0.25);
        row.d_q3 = percentile(depths, 0.75);
        row.c_med = percentile(cnots, 0.5);
        row.c_q1 = percentile(cnots, 0.25);
        row.c_q3 = percentile(cnots, 0.75);
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

std::string summary_csv(const MetricsSummary& summary) {
    std::string out =
        "set,algorithm,dim,sr,aar,d_total_med,d_total_q1,d_total_q3,"
        "c_total_med,c_total_q1,c_total_q3,n_instances\n";
    char buf[320];
    for (const auto& r : summary.rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%d,%.4f,%.4f,%.1f,%.1f,%.1f,%.1f,%.1f,%.1f,%d\n",
                      r.set_name.c_str(), r.algorithm.c_str(), r.dim, r.sr, r.aar, r.d_med, r.d_q1,
                      r.d_q3, r.c_med, r.c_q1, r.c_q3, r.n_instances);
        out += buf;
    }
    return out;
}

std::string summary_table(const MetricsSummary& summary) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%-16s %-10s %3s %7s %7s %12s %12s %12s %12s %12s %12s %5s\n",
                  "set", "algorithm", "dim", "sr", "aar", "d_med", "d_q1", "d_q3", "c_med", "c_q1",
                  "c_q3", "n");
    std::string out = buf;
    for (const auto& r : summary.rows) {
        std::snprintf(buf, sizeof buf,
                      "%-16s %-10s %3d %7.4f %7.4f %12.1f %12.1f %12.1f %12.1f %12.1f %12.1f %5d\n",
                      r.set_name.c_str(), r.algorithm.c_str(), r.dim, r.sr, r.aar, r.d_med, r.d_q1,
                      r.d_q3, r.c_med, r.c_q1, r.c_q3, r.n_instances);
        out += buf;
    }
    return out;
}

std::string plot_series_json(const MetricsSummary& summary) {
    ordered_json series = ordered_json::array();
    ordered_json* cur = nullptr;
    std::string cur_set, cur_algo;
    for (const auto& r : summary.rows) {
        if (cur == nullptr || r.set_name != cur_set || r.algorithm != cur_algo) {
            ordered_json s;
            s["set"] = r.set_name;
            s["algorithm"] = r.algorithm;
            for (const char* k : {"dims", "sr", "aar", "d_med", "d_q1", "d_q3", "c_med", "c_q1",
                                  "c_q3", "n_instances"})
                s[k] = ordered_json::array();
            series.push_back(std::move(s));
            cur = &series.back();
            cur_set = r.set_name;
            cur_algo = r.algorithm;
        }
        (*cur)["dims"].push_back(r.dim);
        (*cur)["sr"].push_back(r.sr);
        (*cur)["aar"].push_back(r.aar);
        (*cur)["d_med"].push_back(r.d_med);
        (*cur)["d_q1"].push_back(r.d_q1);
        (*cur)["d_q3"].push_back(r.d_q3);
        (*cur)["c_med"].push_back(r.c_med);
        (*cur)["c_q1"].push_back(r.c_q1);
        (*cur)["c_q3"].push_back(r.c_q3);
        (*cur)["n_instances"].push_back(r.n_instances);
    }
    ordered_json j;
    j["schema"] = "svq.plot/1";
    j["series"] = std::move(series);
    return j.dump(2) + "\n";
}

std::vector<QubitRow> qubit_table(int max_dim) {
    std::vector<QubitRow> rows;
    for (int n = 4; n <= 6; ++n) rows.push_back({"ipsa", n, qubits_ipsa(n)});
    for (int n = 4; n <= 6; ++n) rows.push_back({"iqoap", n, qubits_iqoap(n)});
    for (int n = 4; n <= 6; ++n) rows.push_back({"psa-3", n, qubits_kpsa(n, 3)});
    for (int n = 4; n <= 5; ++n) rows.push_back({"psa-4", n, qubits_kpsa(n, 4)});
    rows.push_back({"psa-5", 4, qubits_kpsa(4, 5)});
    for (int n = 2; n <= max_dim; ++n) rows.push_back({"ipsa-curve", n, qubits_ipsa(n)});
    for (int n = 2; n <= max_dim; ++n)
        rows.push_back({"psa-lll-curve", n, qubits_psa_lll_curve(n)});
    return rows;
}

std::string qubit_table_text(const std::vector<QubitRow>& rows) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%-14s %4s %7s\n", "algorithm", "dim", "qubits");
    std::string out = buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-14s %4d %7d\n", r.algorithm.c_str(), r.dim, r.qubits);
        out += buf;
    }
    return out;
}

void save_instance(const InstanceFile& inst, const std::filesystem::path& path) {
    ordered_json j;
    j["schema"] = inst.schema;
    j["set"] = inst.set_name;
    j["id"] = inst.id;
    j["dim"] = inst.dim;
    j["seed"] = inst.seed;
    j["basis"] = mat_json(inst.basis.rows);
    if (inst.reduced.dim > 0) j["reduced"] = mat_json(inst.reduced.rows);
    j["lambda1_sq"] = to_i64(inst.lambda1_sq);
    if (inst.lll_min_norm_sq != 0) j["lll_min_norm_sq"] = to_i64(inst.lll_min_norm_sq);
    j["params"]["entry_bound"] = inst.params.entry_bound;
    j["params"]["uni_ops"] = inst.params.uni_ops;
    j["params"]["uni_entry_bound"] = inst.params.uni_entry_bound;
    j["params"]["lll_delta"] = {to_i64(numerator(inst.params.lll_delta)),
                                to_i64(denominator(inst.params.lll_delta))};
    j["params"]["max_ratio_permille"] = inst.params.max_ratio_permille;
    j["params"]["max_attempts"] = inst.params.max_attempts;
    write_file(path, j.dump(2) + "\n");
}

InstanceFile load_instance(const std::filesystem::path& path) {
    const auto j = parse_file(path);
    if (j.value("schema", "") != "svq.instance/1")
        throw std::runtime_error("not an instance file: " + path.string());
    InstanceFile inst;
    inst.set_name = j.at("set").get<std::string>();
    inst.id = j.at("id").get<std::string>();
    inst.dim = j.at("dim").get<int>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.basis = make_basis(mat_from(j.at("basis")));
    if (j.contains("reduced")) inst.reduced = make_basis(mat_from(j.at("reduced")));
    inst.lambda1_sq = Int(j.at("lambda1_sq").get<long long>());
    if (j.contains("lll_min_norm_sq"))
        inst.lll_min_norm_sq = Int(j.at("lll_min_norm_sq").get<long long>());
    const auto& p = j.at("params");
    inst.params.entry_bound = p.at("entry_bound").get<int>();
    inst.params.uni_ops = p.at("uni_ops").get<int>();
    inst.params.uni_entry_bound = p.at("uni_entry_bound").get<int>();
    inst.params.lll_delta =
        Rat(Int(p.at("lll_delta").at(0).get<long long>()), Int(p.at("lll_delta").at(1).get<long long>()));
    inst.params.max_ratio_permille = p.at("max_ratio_permille").get<int>();
    inst.params.max_attempts = p.at("max_attempts").get<int>();
    if (inst.basis.dim != inst.dim) throw std::runtime_error("dimension mismatch: " + path.string());
    return inst;
}

std::vector<InstanceFile> load_instance_dir(const std::filesystem::path& dir) {
    std::vector<InstanceFile> out;
    for (const auto& f : json_files(dir)) out.push_back(load_instance(f));
    if (out.empty()) throw std::runtime_error("no instance files in " + dir.string());
    return out;
}

void save_record(const RunRecord& rec, const std::filesystem::path& path) {
    ordered_json j;
    j["schema"] = rec.schema;
    j["algorithm"] = rec.solve.algorithm;
    j["instance"] = rec.solve.instance_id;
    j["set"] = rec.set_name;
    j["dim"] = rec.dim;
    j["seed"] = rec.solve.seed;
    j["lambda1_sq"] = to_i64(rec.lambda1_sq);
    j["failed"] = rec.failed;
    j["error"] = rec.error;
    j["success"] = rec.solve.success;
    j["approx_ratio"] = rec.solve.approx_ratio;
    j["found"]["coords"] = vec_json(rec.solve.found.coords);
    j["found"]["embedding"] = vec_json(rec.solve.found.embedding);
    j["found"]["norm_sq"] = to_i64(rec.solve.found.norm_sq);
    j["depth_total"] = rec.solve.depth_total;
    j["cnot_total"] = rec.solve.cnot_total;
    j["vqa_runs"] = rec.solve.vqa_runs;
    j["evals_total"] = rec.solve.evals_total;
    j["basis_updates"] = rec.solve.basis_updates;
    j["cap_breached"] = rec.solve.cap_breached;
    ordered_json log = ordered_json::array();
    for (const auto& e : rec.solve.run_log) {
        ordered_json le;
        le["qubits"] = e.qubits;
        le["evals"] = e.evals;
        le["depth_per_exec"] = e.depth_per_exec;
        le["cnots_per_exec"] = e.cnots_per_exec;
        log.push_back(std::move(le));
    }
    j["run_log"] = std::move(log);
    write_file(path, j.dump(2) + "\n");
}

RunRecord load_record(const std::filesystem::path& path) {
    const auto j = parse_file(path);
    if (j.value("schema", "") != "svq.record/1")
        throw std::runtime_error("not a record file: " + path.string());
    RunRecord rec;
    rec.solve.algorithm = j.at("algorithm").get<std::string>();
    rec.solve.instance_id = j.at("instance").get<std::string>();
    rec.set_name = j.at("set").get<std::string>();
    rec.dim = j.at("dim").get<int>();
    rec.solve.seed = j.at("seed").get<std::uint64_t>();
    rec.lambda1_sq = Int(j.at("lambda1_sq").get<long long>());
    rec.failed = j.at("failed").get<bool>();
    rec.error = j.at("error").get<std::string>();
    rec.solve.success = j.at("success").get<bool>();
    rec.solve.approx_ratio = j.at("approx_ratio").get<double>();
    rec.solve.found.coords = vec_from(j.at("found").at("coords"));
    rec.solve.found.embedding = vec_from(j.at("found").at("embedding"));
    rec.solve.found.norm_sq = Int(j.at("found").at("norm_sq").get<long long>());
    rec.solve.depth_total = j.at("depth_total").get<long long>();
    rec.solve.cnot_total = j.at("cnot_total").get<long long>();
    rec.solve.vqa_runs = j.at("vqa_runs").get<int>();
    rec.solve.evals_total = j.at("evals_total").get<long long>();
    rec.solve.basis_updates = j.at("basis_updates").get<int>();
    rec.solve.cap_breached = j.at("cap_breached").get<bool>();
    for (const auto& le : j.at("run_log"))
        rec.solve.run_log.push_back({le.at("qubits").get<int>(), le.at("evals").get<int>(),
                                     le.at("depth_per_exec").get<int>(),
                                     le.at("cnots_per_exec").get<int>()});
    return rec;
}

std::vector<RunRecord> load_record_dir(const std::filesystem::path& dir) {
    std::vector<RunRecord> out;
    for (const auto& f : json_files(dir)) out.push_back(load_record(f));
    if (out.empty()) throw std::runtime_error("no record files in " + dir.string());
    return out;
}

}  // namespace svq
