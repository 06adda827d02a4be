#include "svq/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svq/errors.hpp"

namespace svq {

namespace {

Int round_nearest(const Rat& q) {
    // floor(q + 1/2); the tie direction is irrelevant for size reduction
    Rat t = q + Rat(1, 2);
    Int num = numerator(t), den = denominator(t);
    if (num >= 0) return num / den;
    return -((-num + den - 1) / den);
}

Rat sq(const Rat& x) { return x * x; }

}  // namespace

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int determinant(const IntMat& m) {
    // Bareiss: division-free apart from exact divisions by previous pivots
    const int n = static_cast<int>(m.size());
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

LatticeBasis make_basis(IntMat rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw std::invalid_argument("empty basis");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n)
            throw std::invalid_argument("basis matrix must be square");
    if (determinant(rows) == 0) throw std::invalid_argument("singular basis");
    LatticeBasis b;
    b.dim = n;
    b.rows = std::move(rows);
    b.norms_sq.reserve(n);
    for (const auto& r : b.rows) b.norms_sq.push_back(dot(r, r));
    return b;
}

GramSchmidt gram_schmidt(const LatticeBasis& basis) {
    const int n = basis.dim;
    GramSchmidt gs;
    gs.mu.assign(n, std::vector<Rat>(n, Rat(0)));
    gs.bstar_norm_sq.assign(n, Rat(0));
    // bstar kept as exact rational vectors only inside this routine
    std::vector<std::vector<Rat>> bstar(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) bstar[i][k] = Rat(basis.rows[i][k]);
        for (int j = 0; j < i; ++j) {
            Rat num(0);
            for (int k = 0; k < n; ++k) num += Rat(basis.rows[i][k]) * bstar[j][k];
            gs.mu[i][j] = num / gs.bstar_norm_sq[j];
            for (int k = 0; k < n; ++k) bstar[i][k] -= gs.mu[i][j] * bstar[j][k];
        }
        Rat nrm(0);
        for (int k = 0; k < n; ++k) nrm += sq(bstar[i][k]);
        gs.bstar_norm_sq[i] = nrm;
    }
    return gs;
}

LatticeBasis lll_reduce(const LatticeBasis& basis, const Rat& delta) {
    if (delta * 4 <= 1 || delta >= 1)
        throw std::invalid_argument("LLL delta must lie in (1/4, 1)");
    const int n = basis.dim;
    IntMat b = basis.rows;

    auto gs_of = [n](const IntMat& rows) {
        LatticeBasis tmp;
        tmp.dim = n;
        tmp.rows = rows;
        return gram_schmidt(tmp);
    };

    GramSchmidt gs = gs_of(b);
    int k = 1;
    while (k < n) {
        // size-reduce row k; mu row k is updated in place, bstar is unaffected
        for (int j = k - 1; j >= 0; --j) {
            Int r = round_nearest(gs.mu[k][j]);
            if (r != 0) {
                for (int c = 0; c < n; ++c) b[k][c] -= r * b[j][c];
                for (int l = 0; l < j; ++l) gs.mu[k][l] -= Rat(r) * gs.mu[j][l];
                gs.mu[k][j] -= Rat(r);
            }
        }
        if ((delta - sq(gs.mu[k][k - 1])) * gs.bstar_norm_sq[k - 1] <= gs.bstar_norm_sq[k]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = gs_of(b);
            k = std::max(k - 1, 1);
        }
    }
    return make_basis(std::move(b));
}

UnimodularTransform random_unimodular(int n, int ops, Rng& rng, const Int& entry_bound) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (ops < 0) throw std::invalid_argument("operation count must be non-negative");
    IntMat u(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;

    static constexpr std::int64_t kCoeffs[4] = {-2, -1, 1, 2};
    for (int applied = 0; applied < ops; ++applied) {
        int op = static_cast<int>(rng.uniform_int(0, 2));
        if (n == 1) op = 1;  // only negation is available at dimension 1
        if (op == 0) {
            int a = static_cast<int>(rng.uniform_int(0, n - 1));
            int c = static_cast<int>(rng.uniform_int(0, n - 1));
            while (c == a) c = static_cast<int>(rng.uniform_int(0, n - 1));
            std::swap(u[a], u[c]);
        } else if (op == 1) {
            int a = static_cast<int>(rng.uniform_int(0, n - 1));
            for (auto& e : u[a]) e = -e;
        } else {
            // a row addition that would break the bound is redrawn; the retry
            // budget turns an unsatisfiable bound into an error
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 1000)
                    throw std::runtime_error(
                        "random_unimodular: entry bound too tight, cannot complete");
                int a = static_cast<int>(rng.uniform_int(0, n - 1));
                int bi = static_cast<int>(rng.uniform_int(0, n - 1));
                while (bi == a) bi = static_cast<int>(rng.uniform_int(0, n - 1));
                Int c = kCoeffs[rng.uniform_int(0, 3)];
                bool ok = true;
                for (int j = 0; j < n; ++j)
                    if (abs(u[bi][j] + c * u[a][j]) > entry_bound) { ok = false; break; }
                if (!ok) continue;
                for (int j = 0; j < n; ++j) u[bi][j] += c * u[a][j];
                break;
            }
        }
    }
    return UnimodularTransform{std::move(u), ops};
}

LatticeBasis apply_transform(const UnimodularTransform& u, const LatticeBasis& basis) {
    const int n = basis.dim;
    if (static_cast<int>(u.matrix.size()) != n)
        throw std::invalid_argument("transform dimension mismatch");
    IntMat out(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (u.matrix[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) out[i][j] += u.matrix[i][k] * basis.rows[k][j];
        }
    return make_basis(std::move(out));
}

std::optional<IntVec> coordinates_of(const LatticeBasis& basis, const IntVec& v) {
    const int n = basis.dim;
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("vector dimension mismatch");
    // solve x * B = v exactly: columns of B^T are the basis rows
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(basis.rows[j][i]);
        a[i][n] = Rat(v[i]);
    }
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col] != 0) { p = i; break; }
        if (p < 0) return std::nullopt;  // cannot happen for a nonsingular basis
        std::swap(a[col], a[p]);
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[col][col];
            for (int j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    IntVec x(n);
    for (int i = 0; i < n; ++i) {
        Rat xi = a[i][n] / a[i][i];
        if (denominator(xi) != 1) return std::nullopt;
        x[i] = numerator(xi);
    }
    return x;
}

LatticeBasis replace_preserving_lattice(const LatticeBasis& basis, int k, const IntVec& v) {
    if (k < 0 || k >= basis.dim) throw std::invalid_argument("row index out of range");
    auto c = coordinates_of(basis, v);
    if (!c) throw VerificationError("row replacement: vector is not in the lattice");
    if (abs((*c)[k]) != 1)
        throw VerificationError("row replacement: coefficient on the replaced row is not unit");
    IntMat rows = basis.rows;
    rows[k] = v;
    return make_basis(std::move(rows));
}

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
    if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
    Int da = determinant(a.rows), db = determinant(b.rows);
    if (abs(da) != abs(db)) return false;
    for (const auto& row : b.rows)
        if (!coordinates_of(a, row)) return false;
    return true;
}

LatticeVector shortest_vector_oracle(const LatticeBasis& basis) {
    const int n = basis.dim;
    if (n > 8) throw std::invalid_argument("enumeration guard: dimension above 8");

    LatticeBasis red = lll_reduce(basis);
    GramSchmidt gs = gram_schmidt(red);

    // initial radius: the shortest row of the reduced basis
    int init_row = 0;
    for (int i = 1; i < n; ++i)
        if (red.norms_sq[i] < red.norms_sq[init_row]) init_row = i;
    Int best_norm = red.norms_sq[init_row];
    IntVec best_x(n, 0);
    best_x[init_row] = 1;

    std::vector<Int> x(n, 0);
    std::vector<Rat> center(n, Rat(0));
    std::vector<Rat> partial(n + 1, Rat(0));  // partial[k]: contribution of levels > k-1

    // Depth-first over coefficient levels n-1 .. 0 with exact window bounds.
    auto window = [&](const Rat& c, const Rat& bnorm, const Rat& rem, Int& lo, Int& hi) {
        double cd = -c.convert_to<double>();
        double rd = (rem / bnorm).convert_to<double>();
        double sd = rd > 0 ? std::sqrt(rd) : 0.0;
        lo = Int(static_cast<long long>(std::floor(cd - sd))) - 3;
        hi = Int(static_cast<long long>(std::ceil(cd + sd))) + 3;
        // bnorm > 0 for a nonsingular basis, so both expansions terminate
        while (sq(Rat(lo - 1) + c) * bnorm <= rem) --lo;
        while (sq(Rat(hi + 1) + c) * bnorm <= rem) ++hi;
        while (lo <= hi && sq(Rat(lo) + c) * bnorm > rem) ++lo;
        while (hi >= lo && sq(Rat(hi) + c) * bnorm > rem) --hi;
    };

    auto descend = [&](auto&& self, int k) -> void {
        Rat c(0);
        for (int j = k + 1; j < n; ++j) c += gs.mu[j][k] * Rat(x[j]);
        center[k] = c;
        Rat rem = Rat(best_norm) - partial[k + 1];
        if (rem < 0) return;
        Int lo, hi;
        window(c, gs.bstar_norm_sq[k], rem, lo, hi);
        for (Int xv = lo; xv <= hi; ++xv) {
            x[k] = xv;
            Rat y = Rat(xv) + c;
            partial[k] = partial[k + 1] + sq(y) * gs.bstar_norm_sq[k];
            if (partial[k] > Rat(best_norm)) continue;
            if (k == 0) {
                bool all_zero = true;
                for (const auto& e : x)
                    if (e != 0) { all_zero = false; break; }
                if (all_zero) continue;
                IntVec v(n, 0);
                for (int r = 0; r < n; ++r)
                    for (int j = 0; j < n; ++j) v[j] += x[r] * red.rows[r][j];
                Int nn = dot(v, v);
                if (nn < best_norm && nn > 0) {
                    best_norm = nn;
                    best_x = x;
                }
            } else {
                self(self, k - 1);
            }
        }
        x[k] = 0;
    };
    descend(descend, n - 1);

    IntVec v(n, 0);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) v[j] += best_x[r] * red.rows[r][j];
    for (const auto& e : v) {
        if (e == 0) continue;
        if (e < 0)
            for (auto& f : v) f = -f;
        break;
    }
    auto coords = coordinates_of(basis, v);
    if (!coords) throw VerificationError("oracle produced a vector outside the input lattice");
    return LatticeVector{std::move(*coords), std::move(v), best_norm};
}

std::pair<LatticeBasis, std::vector<int>> sort_basis(const LatticeBasis& basis) {
    const int n = basis.dim;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (basis.norms_sq[a] != basis.norms_sq[b])
            return basis.norms_sq[a] < basis.norms_sq[b];
        return basis.rows[a] < basis.rows[b];
    });
    IntMat rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) rows.push_back(basis.rows[perm[i]]);
    return {make_basis(std::move(rows)), std::move(perm)};
}

}  // namespace svq
