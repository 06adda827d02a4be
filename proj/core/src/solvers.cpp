#include "svq/solvers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "svq/errors.hpp"
#include "svq/simulator.hpp"

namespace svq {

namespace {

LatticeVector embed(const LatticeBasis& basis, const std::vector<std::int64_t>& x) {
    LatticeVector v;
    v.coords.reserve(x.size());
    for (auto c : x) v.coords.push_back(Int(c));
    IntVec emb(static_cast<std::size_t>(basis.dim), Int(0));
    for (int r = 0; r < basis.dim; ++r)
        for (int j = 0; j < basis.dim; ++j) emb[j] += Int(x[r]) * basis.rows[r][j];
    v.embedding = std::move(emb);
    v.norm_sq = dot(v.embedding, v.embedding);
    return v;
}

CircuitPlan make_plan(const SolverConfig& cfg, std::shared_ptr<const IsingModel> model) {
    const int q = model->num_qubits;
    switch (cfg.circuit) {
        case CircuitKind::Hea: return build_hea(q, cfg.layers);
        case CircuitKind::Qaoa: return build_qaoa(q, cfg.layers, std::move(model), false);
        case CircuitKind::QaoaTied: return build_qaoa(q, cfg.layers, std::move(model), true);
    }
    throw std::logic_error("unknown circuit kind");
}

void log_run(SolveRecord& rec, const VqaOutcome& out) {
    ++rec.vqa_runs;
    rec.evals_total += out.evals;
    rec.depth_total += out.depth_used;
    rec.cnot_total += out.cnots_used;
    rec.run_log.push_back({out.qubits, out.evals, out.depth_per_exec, out.cnots_per_exec});
}

void finalize(SolveRecord& rec, const LatticeBasis& original, const IntVec& embedding,
              const Int& lambda1_sq) {
    rec.found.embedding = embedding;
    rec.found.norm_sq = dot(embedding, embedding);
    auto coords = coordinates_of(original, embedding);
    if (!coords) throw VerificationError("result left the input lattice");
    rec.found.coords = std::move(*coords);
    rec.success = rec.found.norm_sq == lambda1_sq;
    rec.approx_ratio =
        std::sqrt(static_cast<double>(lambda1_sq) / static_cast<double>(rec.found.norm_sq));
}

}  // namespace

SolverConfig default_config(std::string_view algorithm, int dim) {
    SolverConfig cfg;
    cfg.bits = default_tailed_bits(dim);
    if (algorithm == "ipsa") {
        cfg.circuit = CircuitKind::Hea;
        cfg.layers = 2;
    } else if (algorithm == "ipsa-qaoa") {
        cfg.circuit = CircuitKind::Qaoa;
        cfg.layers = 4;
    } else if (algorithm == "iqoap") {
        cfg.circuit = CircuitKind::QaoaTied;
        cfg.layers = 1;
    } else if (algorithm.starts_with("psa-")) {
        cfg.circuit = CircuitKind::Hea;
        cfg.layers = 2;
        int k = 0;
        auto rest = algorithm.substr(4);
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec != std::errc() || p != rest.data() + rest.size() || k < 2)
            throw std::invalid_argument("unknown algorithm: " + std::string(algorithm));
        cfg.k = k;
    } else {
        throw std::invalid_argument("unknown algorithm: " + std::string(algorithm));
    }
    return cfg;
}

VqaOutcome run_vqa(const LatticeBasis& basis, const PartitionSpec& spec, const SolverConfig& cfg,
                   Rng& rng) {
    if (spec.num_qubits < 1) throw std::invalid_argument("degenerate partition: no qubits");
    if (cfg.shots < 1) throw std::invalid_argument("shots must be positive");
    auto model = std::make_shared<const IsingModel>(build_hamiltonian(basis, spec));
    auto plan = make_plan(cfg, model);
    auto objective = [&](const std::vector<double>& params) {
        return expectation(execute(plan, params), *model);
    };
    auto opt = powell_minimize(objective, init_params(plan.param_count, rng), cfg.opt);
    auto state = execute(plan, opt.best_params);
    auto draws = sample(state, cfg.shots, rng);
    std::sort(draws.begin(), draws.end());

    VqaOutcome out;
    out.evals = opt.num_evals;
    out.qubits = plan.num_qubits;
    out.depth_per_exec = plan.depth;
    out.cnots_per_exec = plan.cnot_count;
    out.depth_used = static_cast<long long>(out.evals + 1) * plan.depth;
    out.cnots_used = static_cast<long long>(out.evals + 1) * plan.cnot_count;
    out.shots = cfg.shots;

    // the most frequent nonzero decode wins; walking sorted draws with a
    // strict count comparison keeps the smallest bitstring on ties
    std::size_t best_count = 0;
    std::vector<std::int64_t> best_x;
    for (std::size_t a = 0; a < draws.size();) {
        std::size_t b = a;
        while (b < draws.size() && draws[b] == draws[a]) ++b;
        auto x = decode(spec, draws[a]);
        const bool zero = std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
        if (!zero && b - a > best_count) {
            best_count = b - a;
            best_x = std::move(x);
        }
        a = b;
    }
    if (best_count > 0) out.candidate = embed(basis, best_x);
    return out;
}

SolveRecord ipsa(const LatticeBasis& basis0, const Int& lambda1_sq, const SolverConfig& cfg,
                 std::uint64_t seed) {
    if (basis0.dim < 2) throw std::invalid_argument("dimension must be at least 2");
    SolveRecord rec;
    rec.algorithm = cfg.circuit == CircuitKind::Hea ? "ipsa" : "ipsa-qaoa";
    rec.seed = seed;
    Rng rng(seed);
    const int n = basis0.dim;
    const int bits = cfg.bits > 0 ? cfg.bits : default_tailed_bits(n);

    auto basis = sort_basis(basis0).first;
    std::vector<int> stack;
    for (int i = n; i >= 1; --i) stack.push_back(i);

    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        if (i == 1) continue;  // single-member partition; cannot beat its own pivot
        if (rec.vqa_runs >= cfg.vqa_cap) {
            rec.cap_breached = true;
            break;
        }
        auto out = run_vqa(basis, build_partition(PartitionKind::TailedY, i, n, bits), cfg, rng);
        log_run(rec, out);
        const auto& cand = *out.candidate;  // tailed decodes are never the zero vector
        if (cand.norm_sq < basis.norms_sq[static_cast<std::size_t>(i - 1)]) {
            // the decoded coefficient on row i is one, so the row swap keeps
            // the lattice; a violation would throw out of the solve
            basis = replace_preserving_lattice(basis, i - 1, cand.embedding);
            ++rec.basis_updates;
            basis = sort_basis(basis).first;
            int r = 1;
            for (int j = 0; j < n; ++j)
                if (basis.rows[static_cast<std::size_t>(j)] == cand.embedding) {
                    r = j + 1;
                    break;
                }
            for (int j = i; j >= r; --j) stack.push_back(j);  // Y_r ends on top
        }
    }
    finalize(rec, basis0, basis.rows[0], lambda1_sq);
    return rec;
}

SolveRecord iqoap(const LatticeBasis& basis0, const Int& lambda1_sq, const SolverConfig& cfg,
                  std::uint64_t seed) {
    if (basis0.dim < 2) throw std::invalid_argument("dimension must be at least 2");
    SolveRecord rec;
    rec.algorithm = "iqoap";
    rec.seed = seed;
    Rng rng(seed);
    const int n = basis0.dim;
    auto basis = basis0;
    const auto spec = build_partition(PartitionKind::FullCube, 0, n, 2);

    for (int iter = 0; iter < 50; ++iter) {
        auto out = run_vqa(basis, spec, cfg, rng);
        log_run(rec, out);
        if (!out.candidate) continue;  // every sample decoded to zero
        const auto& v = *out.candidate;
        const auto co = coordinates_of(basis, v.embedding);
        if (!co) throw VerificationError("candidate left the working lattice");
        const auto& c = *co;
        for (int j = 0; j < n; ++j)
            if (c[static_cast<std::size_t>(j)] != v.coords[static_cast<std::size_t>(j)])
                throw VerificationError("decoded coordinates disagree with the solved basis");
        int pick = -1;
        for (int j = 0; j < n; ++j) {
            const auto js = static_cast<std::size_t>(j);
            if (!(v.norm_sq < basis.norms_sq[js])) continue;
            if (c[js] != 1 && c[js] != -1) continue;
            if (pick < 0 || basis.norms_sq[js] > basis.norms_sq[static_cast<std::size_t>(pick)])
                pick = j;  // longest eligible row; first index wins ties
        }
        if (pick >= 0) {
            basis = replace_preserving_lattice(basis, pick, v.embedding);
            ++rec.basis_updates;
        }
    }
    int best = 0;
    for (int j = 1; j < n; ++j)
        if (basis.norms_sq[static_cast<std::size_t>(j)] < basis.norms_sq[static_cast<std::size_t>(best)])
            best = j;
    finalize(rec, basis0, basis.rows[static_cast<std::size_t>(best)], lambda1_sq);
    return rec;
}

SolveRecord psa(const LatticeBasis& basis, const Int& lambda1_sq, const SolverConfig& cfg,
                std::uint64_t seed) {
    if (basis.dim < 2) throw std::invalid_argument("dimension must be at least 2");
    if (cfg.k < 2) throw std::invalid_argument("k must be at least 2");
    if (qubits_kpsa(basis.dim, cfg.k) > 22)
        throw std::invalid_argument("largest partition exceeds the 22-qubit register");
    SolveRecord rec;
    rec.algorithm = "psa-" + std::to_string(cfg.k);
    rec.seed = seed;
    Rng rng(seed);
    const int n = basis.dim;
    std::optional<LatticeVector> best;
    for (int i = 1; i <= n; ++i) {
        auto out = run_vqa(basis, build_partition(PartitionKind::PsaX, i, n, cfg.k), cfg, rng);
        log_run(rec, out);
        if (out.candidate && (!best || out.candidate->norm_sq < best->norm_sq))
            best = out.candidate;
    }
    finalize(rec, basis, best->embedding, lambda1_sq);
    return rec;
}

}  // namespace svq
