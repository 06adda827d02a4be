#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "svq/encoding.hpp"
#include "svq/rng.hpp"

namespace svq {

enum class GateKind { Ry, Rx, Rz, H, Cnot, DiagCost };

// Effective rotation angle is coef * params[param_slot] + const_angle, or
// const_angle alone when param_slot < 0. H and Cnot ignore the angle. For
// Cnot, q0 is the control and q1 the target; all other kinds act on q0.
// DiagCost applies |z> -> exp(-i * angle * E(z)) |z> from the model's table.
struct Gate {
    GateKind kind = GateKind::Ry;
    int q0 = 0;
    int q1 = -1;
    int param_slot = -1;
    double coef = 1.0;
    double const_angle = 0.0;
};

struct CircuitPlan {
    int num_qubits = 0;
    std::vector<Gate> gates;
    int param_count = 0;
    int depth = 0;
    int cnot_count = 0;
    std::shared_ptr<const IsingModel> model;  // phase table for DiagCost gates
};

// Amplitudes indexed by basis state; bit j of the index is qubit j.
using Statevector = std::vector<std::complex<double>>;

// p repetitions of [RY on every qubit, CNOT chain 0->1 ... q-2 -> q-1]
// followed by a final RY layer. Parameter slots are assigned in gate order.
CircuitPlan build_hea(int num_qubits, int layers);

// H on every qubit, then per layer a diagonal cost phase with angle gamma_l
// and an RX(2 beta_l) mixing layer. tie_params shares one slot per layer
// (beta_l = gamma_l); otherwise slots interleave as gamma_0, beta_0, ...
CircuitPlan build_qaoa(int num_qubits, int layers, std::shared_ptr<const IsingModel> model,
                       bool tie_params);

// Accounting decomposition of one diagonal cost layer: CNOT, RZ, CNOT per
// nonzero coupling (lexicographic), then one RZ per nonzero field term.
// gamma_slot / gamma_coef describe the layer's angle expression.
std::vector<Gate> diag_cost_gates(const IsingModel& model, int gamma_slot, double gamma_coef);

double resolve_angle(const Gate& gate, const std::vector<double>& params);
void apply_gate(Statevector& state, const Gate& gate, double angle,
                const IsingModel* model = nullptr);
Statevector execute(const CircuitPlan& plan, const std::vector<double>& params);

// Exact <psi| diag(E) |psi> over the model's energy table.
double expectation(const Statevector& state, const IsingModel& model);

std::vector<std::uint64_t> sample(const Statevector& state, int shots, Rng& rng);

}  // namespace svq
