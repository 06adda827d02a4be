#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "svq/lattice.hpp"

namespace svq {

enum class PartitionKind { PsaX, TailedY, FullCube };

// One coefficient's slice of the bit layout. Free coefficients map B bits onto
// the integer interval (-2^{B-1}, 2^{B-1}]; a constrained coefficient maps B
// bits onto [1, 2^B]; fixed coefficients occupy no qubits.
struct CoefficientLayout {
    enum Kind { Free, ConstrainedPositive, Fixed };
    Kind kind = Fixed;
    int qubit_offset = 0;
    int bits = 0;
    std::int64_t fixed_value = 0;
};

// A search-space partition together with its qubit layout. Qubit ordering is
// coefficient-major, bit-minor: qubit index = bits of earlier coefficients + j.
struct PartitionSpec {
    PartitionKind kind = PartitionKind::FullCube;
    int index = 0;  // partition number i in [1, dim]; 0 for FullCube
    int dim = 0;
    int bits_free = 0;
    int bits_pos = 0;  // constrained coefficient width (PsaX only)
    int num_qubits = 0;
    std::vector<CoefficientLayout> layout;
};

// TailedY(i): i-1 free coefficients, coefficient i fixed to 1, zeros above.
// PsaX(i): i-1 free coefficients of `bits` bits, one constrained coefficient
// of bits-1 bits, zeros above. FullCube: dim free coefficients.
PartitionSpec build_partition(PartitionKind kind, int i, int n, int bits);

// Integer coefficient vector for computational basis state z (bit j of z is
// qubit j, bit value 0 carries spin +1).
std::vector<std::int64_t> decode(const PartitionSpec& spec, std::uint64_t z);

struct IsingModel {
    int num_qubits = 0;
    double constant = 0.0;
    std::vector<double> h;        // length num_qubits
    std::vector<double> jmat;     // dense num_qubits^2, upper triangle used
    std::vector<double> energy_table;  // 2^num_qubits exact integer values

    double coupling(int a, int b) const { return jmat[a * num_qubits + b]; }
    int coupling_count() const;
};

// Diagonal Hamiltonian of the squared norm over the partition. The energy
// table is computed from decoded vectors in integer arithmetic, independently
// of the spin polynomial, so the two representations can cross-check.
IsingModel build_hamiltonian(const LatticeBasis& basis, const PartitionSpec& spec);

// Spin-polynomial evaluation at basis state z; agrees with the table to 1e-9.
double ising_energy(const IsingModel& m, std::uint64_t z);

int qubits_ipsa(int n);
int qubits_iqoap(int n);
int qubits_kpsa(int n, int k);
int qubits_psa_lll_curve(int n);

// Dispatch by algorithm tag: "ipsa", "ipsa-qaoa", "iqoap", "psa-<k>",
// "psa-lll". Throws on an unknown tag.
int qubit_requirement(std::string_view tag, int n);

// Per-coefficient bit width the stack solver uses at dimension n.
int default_tailed_bits(int n);

}  // namespace svq
