#include "svq/encoding.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svq {

namespace {

constexpr int kMaxQubits = 22;  // dense tables stay affordable up to here
constexpr int kMaxBits = 16;

void check_bits(int bits) {
    if (bits < 1 || bits > kMaxBits) throw std::invalid_argument("unsupported bit width");
}

}  // namespace

PartitionSpec build_partition(PartitionKind kind, int i, int n, int bits) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    PartitionSpec spec;
    spec.kind = kind;
    spec.dim = n;
    spec.layout.assign(n, CoefficientLayout{});

    int offset = 0;
    auto place = [&offset](CoefficientLayout& slot, CoefficientLayout::Kind k, int b) {
        slot.kind = k;
        slot.qubit_offset = offset;
        slot.bits = b;
        offset += b;
    };

    switch (kind) {
        case PartitionKind::TailedY: {
            if (i < 1 || i > n) throw std::invalid_argument("partition index out of range");
            check_bits(bits);
            spec.index = i;
            spec.bits_free = bits;
            for (int r = 0; r < i - 1; ++r)
                place(spec.layout[r], CoefficientLayout::Free, bits);
            spec.layout[i - 1].kind = CoefficientLayout::Fixed;
            spec.layout[i - 1].fixed_value = 1;
            // coefficients above i stay fixed at 0
            break;
        }
        case PartitionKind::PsaX: {
            if (i < 1 || i > n) throw std::invalid_argument("partition index out of range");
            if (bits < 2) throw std::invalid_argument("PsaX needs at least 2 bits");
            check_bits(bits);
            spec.index = i;
            spec.bits_free = bits;
            spec.bits_pos = bits - 1;
            for (int r = 0; r < i - 1; ++r)
                place(spec.layout[r], CoefficientLayout::Free, bits);
            place(spec.layout[i - 1], CoefficientLayout::ConstrainedPositive, bits - 1);
            break;
        }
        case PartitionKind::FullCube: {
            check_bits(bits);
            spec.index = 0;
            spec.bits_free = bits;
            for (int r = 0; r < n; ++r)
                place(spec.layout[r], CoefficientLayout::Free, bits);
            break;
        }
    }
    spec.num_qubits = offset;
    return spec;
}

std::vector<std::int64_t> decode(const PartitionSpec& spec, std::uint64_t z) {
    if (spec.num_qubits < 64 && (z >> spec.num_qubits) != 0)
        throw std::invalid_argument("basis state outside the qubit register");
    std::vector<std::int64_t> x(spec.dim, 0);
    for (int r = 0; r < spec.dim; ++r) {
        const auto& slot = spec.layout[r];
        switch (slot.kind) {
            case CoefficientLayout::Fixed:
                x[r] = slot.fixed_value;
                break;
            case CoefficientLayout::Free: {
                std::uint64_t u = (z >> slot.qubit_offset) & ((1ull << slot.bits) - 1);
                x[r] = static_cast<std::int64_t>(u) + 1 - (1ll << (slot.bits - 1));
                break;
            }
            case CoefficientLayout::ConstrainedPositive: {
                std::uint64_t u = (z >> slot.qubit_offset) & ((1ull << slot.bits) - 1);
                x[r] = (1ll << slot.bits) - static_cast<std::int64_t>(u);
                break;
            }
        }
    }
    return x;
}

int IsingModel::coupling_count() const {
    int c = 0;
    for (int a = 0; a < num_qubits; ++a)
        for (int b = a + 1; b < num_qubits; ++b)
            if (jmat[a * num_qubits + b] != 0.0) ++c;
    return c;
}

IsingModel build_hamiltonian(const LatticeBasis& basis, const PartitionSpec& spec) {
    if (spec.dim != basis.dim) throw std::invalid_argument("partition/basis dimension mismatch");
    const int q = spec.num_qubits;
    if (q > kMaxQubits) throw std::invalid_argument("qubit guard: register above 22 qubits");
    const int n = spec.dim;

    // 64-bit staging of the basis; magnitudes here keep every energy exact in
    // a double (checked below)
    std::vector<std::int64_t> b(n * n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const Int& e = basis.rows[r][k];
            if (abs(e) > Int(1) << 32) throw std::invalid_argument("basis entries too large");
            b[r * n + k] = e.convert_to<std::int64_t>();
        }

    IsingModel m;
    m.num_qubits = q;
    m.h.assign(q, 0.0);
    m.jmat.assign(static_cast<std::size_t>(q) * q, 0.0);

    // affine spin forms: coefficient r = a_r + sum_j c_{r,j} * s_{q(r,j)}
    // free, B bits:        1/2       - sum_j 2^{j-1} s_j
    // constrained, B bits: (2^B+1)/2 + sum_j 2^{j-1} s_j
    std::vector<double> a(n, 0.0);
    std::vector<std::vector<std::pair<int, double>>> spin_terms(n);
    for (int r = 0; r < n; ++r) {
        const auto& slot = spec.layout[r];
        if (slot.kind == CoefficientLayout::Fixed) {
            a[r] = static_cast<double>(slot.fixed_value);
            continue;
        }
        double sign = slot.kind == CoefficientLayout::Free ? -1.0 : 1.0;
        a[r] = slot.kind == CoefficientLayout::Free
                   ? 0.5
                   : (static_cast<double>(1ll << slot.bits) + 1.0) / 2.0;
        for (int j = 0; j < slot.bits; ++j)
            spin_terms[r].push_back({slot.qubit_offset + j, sign * std::ldexp(1.0, j - 1)});
    }

    // embedding components are affine in the spins: v_k = A_k + sum_q w_{k,q} s_q
    std::vector<double> A(n, 0.0);
    std::vector<std::vector<double>> w(n, std::vector<double>(q, 0.0));
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < n; ++r) {
            double bk = static_cast<double>(b[r * n + k]);
            A[k] += a[r] * bk;
            for (const auto& [qi, c] : spin_terms[r]) w[k][qi] += c * bk;
        }
    }
    double constant = 0.0;
    for (int k = 0; k < n; ++k) {
        constant += A[k] * A[k];
        for (int qi = 0; qi < q; ++qi) constant += w[k][qi] * w[k][qi];
        for (int qi = 0; qi < q; ++qi) m.h[qi] += 2.0 * A[k] * w[k][qi];
        for (int qa = 0; qa < q; ++qa)
            for (int qb = qa + 1; qb < q; ++qb)
                m.jmat[qa * q + qb] += 2.0 * w[k][qa] * w[k][qb];
    }
    m.constant = constant;

    // energy table from decoded vectors, exact integer arithmetic
    const std::uint64_t size = 1ull << q;
    m.energy_table.resize(size);
    constexpr double kExactLimit = 9007199254740992.0;  // 2^53
    for (std::uint64_t z = 0; z < size; ++z) {
        auto x = decode(spec, z);
        unsigned __int128 norm = 0;
        for (int k = 0; k < n; ++k) {
            std::int64_t comp = 0;
            for (int r = 0; r < n; ++r) comp += x[r] * b[r * n + k];
            __int128 c2 = static_cast<__int128>(comp) * comp;
            norm += static_cast<unsigned __int128>(c2);
        }
        double e = static_cast<double>(norm);
        if (e >= kExactLimit)
            throw std::invalid_argument("energy exceeds the exact double range");
        m.energy_table[z] = e;
    }
    return m;
}

double ising_energy(const IsingModel& m, std::uint64_t z) {
    const int q = m.num_qubits;
    double e = m.constant;
    for (int a = 0; a < q; ++a) {
        double sa = (z >> a) & 1 ? -1.0 : 1.0;
        e += m.h[a] * sa;
        for (int b = a + 1; b < q; ++b) {
            double sb = (z >> b) & 1 ? -1.0 : 1.0;
            e += m.jmat[a * q + b] * sa * sb;
        }
    }
    return e;
}

int qubits_ipsa(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    return (n - 1) * (std::bit_width(static_cast<unsigned>(n)) - 1);
}

int qubits_iqoap(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    return 2 * n;
}

int qubits_kpsa(int n, int k) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    return (n - 1) * k + (k - 1);
}

int qubits_psa_lll_curve(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    return n * (n + 1);
}

int qubit_requirement(std::string_view tag, int n) {
    if (tag == "ipsa" || tag == "ipsa-qaoa") return qubits_ipsa(n);
    if (tag == "iqoap") return qubits_iqoap(n);
    if (tag == "psa-lll") return qubits_psa_lll_curve(n);
    if (tag.starts_with("psa-")) {
        int k = 0;
        auto rest = tag.substr(4);
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec == std::errc() && p == rest.data() + rest.size()) return qubits_kpsa(n, k);
    }
    throw std::invalid_argument("unknown algorithm tag: " + std::string(tag));
}

int default_tailed_bits(int n) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n))) - 1);
}

}  // namespace svq
