#include "svq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Earliest-slot layering of one structural block, each gate occupying its
// operand qubits. Blocks are laid out in sequence (a later block never
// borrows slack from an earlier one), which is what keeps the HEA depth at
// exactly p*q + 1 and makes the tally reproducible from the closed forms.
int block_depth(const std::vector<Gate>& gates, int num_qubits, const IsingModel* model) {
    std::vector<int> avail(num_qubits, 0);
    int depth = 0;
    auto place = [&](int a, int b) {
        int layer = avail[a];
        if (b >= 0) layer = std::max(layer, avail[b]);
        avail[a] = layer + 1;
        if (b >= 0) avail[b] = layer + 1;
        depth = std::max(depth, layer + 1);
    };
    for (const auto& g : gates) {
        if (g.kind == GateKind::DiagCost) {
            for (const auto& d : diag_cost_gates(*model, g.param_slot, g.coef)) place(d.q0, d.q1);
        } else {
            place(g.q0, g.q1);
        }
    }
    return depth;
}

int block_cnots(const std::vector<Gate>& gates, const IsingModel* model) {
    int count = 0;
    for (const auto& g : gates) {
        if (g.kind == GateKind::Cnot) ++count;
        if (g.kind == GateKind::DiagCost)
            for (const auto& d : diag_cost_gates(*model, g.param_slot, g.coef))
                count += d.kind == GateKind::Cnot;
    }
    return count;
}

void commit_block(CircuitPlan& plan, std::vector<Gate> block) {
    plan.depth += block_depth(block, plan.num_qubits, plan.model.get());
    plan.cnot_count += block_cnots(block, plan.model.get());
    plan.gates.insert(plan.gates.end(), block.begin(), block.end());
}

}  // namespace

CircuitPlan build_hea(int num_qubits, int layers) {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    if (layers < 1) throw std::invalid_argument("need at least one layer");
    CircuitPlan plan;
    plan.num_qubits = num_qubits;
    plan.param_count = (layers + 1) * num_qubits;
    int slot = 0;
    auto ry_layer = [&] {
        std::vector<Gate> block;
        for (int q = 0; q < num_qubits; ++q) block.push_back({GateKind::Ry, q, -1, slot++, 1.0, 0.0});
        return block;
    };
    auto chain = [&] {
        std::vector<Gate> block;
        for (int q = 0; q + 1 < num_qubits; ++q)
            block.push_back({GateKind::Cnot, q, q + 1, -1, 0.0, 0.0});
        return block;
    };
    for (int l = 0; l < layers; ++l) {
        commit_block(plan, ry_layer());
        commit_block(plan, chain());
    }
    commit_block(plan, ry_layer());
    return plan;
}

CircuitPlan build_qaoa(int num_qubits, int layers, std::shared_ptr<const IsingModel> model,
                       bool tie_params) {
    if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
    if (layers < 1) throw std::invalid_argument("need at least one layer");
    if (!model || model->num_qubits != num_qubits)
        throw std::invalid_argument("model does not match the register");
    CircuitPlan plan;
    plan.num_qubits = num_qubits;
    plan.model = std::move(model);
    plan.param_count = tie_params ? layers : 2 * layers;
    std::vector<Gate> hadamards;
    for (int q = 0; q < num_qubits; ++q) hadamards.push_back({GateKind::H, q, -1, -1, 0.0, 0.0});
    commit_block(plan, std::move(hadamards));
    for (int l = 0; l < layers; ++l) {
        int gamma_slot = tie_params ? l : 2 * l;
        int beta_slot = tie_params ? l : 2 * l + 1;
        commit_block(plan, {{GateKind::DiagCost, 0, -1, gamma_slot, 1.0, 0.0}});
        std::vector<Gate> mix;
        for (int q = 0; q < num_qubits; ++q) mix.push_back({GateKind::Rx, q, -1, beta_slot, 2.0, 0.0});
        commit_block(plan, std::move(mix));
    }
    return plan;
}

std::vector<Gate> diag_cost_gates(const IsingModel& model, int gamma_slot, double gamma_coef) {
    std::vector<Gate> out;
    for (int a = 0; a < model.num_qubits; ++a)
        for (int b = a + 1; b < model.num_qubits; ++b) {
            double j = model.coupling(a, b);
            if (j == 0.0) continue;
            out.push_back({GateKind::Cnot, a, b, -1, 0.0, 0.0});
            out.push_back({GateKind::Rz, b, -1, gamma_slot, 2.0 * j * gamma_coef, 0.0});
            out.push_back({GateKind::Cnot, a, b, -1, 0.0, 0.0});
        }
    for (int a = 0; a < model.num_qubits; ++a) {
        if (model.h[a] == 0.0) continue;
        out.push_back({GateKind::Rz, a, -1, gamma_slot, 2.0 * model.h[a] * gamma_coef, 0.0});
    }
    return out;
}

double resolve_angle(const Gate& gate, const std::vector<double>& params) {
    double angle = gate.const_angle;
    if (gate.param_slot >= 0) angle += gate.coef * params[static_cast<std::size_t>(gate.param_slot)];
    return angle;
}

void apply_gate(Statevector& state, const Gate& gate, double angle, const IsingModel* model) {
    const std::size_t n = state.size();
    switch (gate.kind) {
        case GateKind::Ry:
        case GateKind::Rx:
        case GateKind::H: {
            std::complex<double> m00, m01, m10, m11;
            if (gate.kind == GateKind::Ry) {
                double c = std::cos(angle / 2), s = std::sin(angle / 2);
                m00 = c, m01 = -s, m10 = s, m11 = c;
            } else if (gate.kind == GateKind::Rx) {
                double c = std::cos(angle / 2), s = std::sin(angle / 2);
                m00 = c, m01 = {0.0, -s}, m10 = {0.0, -s}, m11 = c;
            } else {
                m00 = kInvSqrt2, m01 = kInvSqrt2, m10 = kInvSqrt2, m11 = -kInvSqrt2;
            }
            const std::size_t step = std::size_t{1} << gate.q0;
            for (std::size_t base = 0; base < n; base += 2 * step)
                for (std::size_t i = base; i < base + step; ++i) {
                    const auto a0 = state[i], a1 = state[i + step];
                    state[i] = m00 * a0 + m01 * a1;
                    state[i + step] = m10 * a0 + m11 * a1;
                }
            break;
        }
        case GateKind::Rz: {
            const auto ph0 = std::polar(1.0, -angle / 2);
            const auto ph1 = std::polar(1.0, angle / 2);
            const std::size_t step = std::size_t{1} << gate.q0;
            for (std::size_t base = 0; base < n; base += 2 * step)
                for (std::size_t i = base; i < base + step; ++i) {
                    state[i] *= ph0;
                    state[i + step] *= ph1;
                }
            break;
        }
        case GateKind::Cnot: {
            const std::size_t cmask = std::size_t{1} << gate.q0;
            const std::size_t tmask = std::size_t{1} << gate.q1;
            for (std::size_t z = 0; z < n; ++z)
                if ((z & cmask) && !(z & tmask)) std::swap(state[z], state[z | tmask]);
            break;
        }
        case GateKind::DiagCost: {
            if (!model) throw std::invalid_argument("diagonal cost gate needs a model");
            for (std::size_t z = 0; z < n; ++z)
                state[z] *= std::polar(1.0, -angle * model->energy_table[z]);
            break;
        }
    }
}

Statevector execute(const CircuitPlan& plan, const std::vector<double>& params) {
    if (static_cast<int>(params.size()) != plan.param_count)
        throw std::invalid_argument("parameter count mismatch");
    for (double v : params)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite parameter");
    Statevector state(std::size_t{1} << plan.num_qubits);
    state[0] = 1.0;
    for (const auto& g : plan.gates) apply_gate(state, g, resolve_angle(g, params), plan.model.get());
    return state;
}

double expectation(const Statevector& state, const IsingModel& model) {
    if (state.size() != model.energy_table.size())
        throw std::invalid_argument("state does not match the model register");
    double acc = 0.0;
    for (std::size_t z = 0; z < state.size(); ++z) acc += std::norm(state[z]) * model.energy_table[z];
    return acc;
}

std::vector<std::uint64_t> sample(const Statevector& state, int shots, Rng& rng) {
    if (shots < 1) throw std::invalid_argument("shots must be positive");
    std::vector<double> cum(state.size());
    double acc = 0.0;
    for (std::size_t z = 0; z < state.size(); ++z) {
        acc += std::norm(state[z]);
        cum[z] = acc;
    }
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (int s = 0; s < shots; ++s) {
        // scale by the accumulated total so rounding drift cannot push a draw
        // past the last bucket
        double u = rng.uniform(0.0, 1.0) * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        out.push_back(static_cast<std::uint64_t>(it - cum.begin()));
    }
    return out;
}

}  // namespace svq
