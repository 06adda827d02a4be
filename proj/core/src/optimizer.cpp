#include "svq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace svq {

namespace {

constexpr double kGold = 1.618034;
constexpr double kGlimit = 100.0;
constexpr double kTiny = 1e-20;
constexpr double kCGold = 0.3819660;
constexpr double kZeps = 1e-10;
constexpr double kBrentTol = 1e-6;
constexpr int kBrentItmax = 100;

struct BudgetExhausted {};

// Counts every evaluation, enforces the budget before calling, and keeps the
// best point seen so a budget abort still reports a usable result.
class CountedObjective {
  public:
    CountedObjective(const Objective& f, int max_evals) : f_(f), max_evals_(max_evals) {}

    double operator()(const std::vector<double>& x) {
        if (num_evals_ >= max_evals_) throw BudgetExhausted{};
        ++num_evals_;
        double v = f_(x);
        if (!std::isfinite(v)) throw std::runtime_error("objective returned a non-finite value");
        if (v < best_value_) {
            best_value_ = v;
            best_params_ = x;
        }
        return v;
    }

    int num_evals() const { return num_evals_; }
    double best_value() const { return best_value_; }
    const std::vector<double>& best_params() const { return best_params_; }

  private:
    const Objective& f_;
    int max_evals_;
    int num_evals_ = 0;
    double best_value_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_params_;
};

struct LineFn {
    CountedObjective& F;
    const std::vector<double>& origin;
    const std::vector<double>& dir;
    std::vector<double> scratch;

    double operator()(double t) {
        for (std::size_t j = 0; j < origin.size(); ++j) scratch[j] = origin[j] + t * dir[j];
        return F(scratch);
    }
};

void shift(double& a, double& b, double& c, double d) {
    a = b;
    b = c;
    c = d;
}

// downhill bracketing with golden-ratio magnification and parabolic probes
void bracket(LineFn& f1, double& ax, double& bx, double& cx, double& fa, double& fb, double& fc) {
    ax = 0.0;
    bx = 1.0;
    fa = f1(ax);
    fb = f1(bx);
    if (fb > fa) {
        std::swap(ax, bx);
        std::swap(fa, fb);
    }
    cx = bx + kGold * (bx - ax);
    fc = f1(cx);
    while (fb > fc) {
        const double r = (bx - ax) * (fb - fc);
        const double q = (bx - cx) * (fb - fa);
        double u = bx - ((bx - cx) * q - (bx - ax) * r) /
                            (2.0 * std::copysign(std::max(std::abs(q - r), kTiny), q - r));
        const double ulim = bx + kGlimit * (cx - bx);
        double fu;
        if ((bx - u) * (u - cx) > 0.0) {
            fu = f1(u);
            if (fu < fc) {
                ax = bx;
                bx = u;
                fa = fb;
                fb = fu;
                return;
            }
            if (fu > fb) {
                cx = u;
                fc = fu;
                return;
            }
            u = cx + kGold * (cx - bx);
            fu = f1(u);
        } else if ((cx - u) * (u - ulim) > 0.0) {
            fu = f1(u);
            if (fu < fc) {
                shift(bx, cx, u, u + kGold * (u - cx));
                shift(fb, fc, fu, f1(u));
            }
        } else if ((u - ulim) * (ulim - cx) >= 0.0) {
            u = ulim;
            fu = f1(u);
        } else {
            u = cx + kGold * (cx - bx);
            fu = f1(u);
        }
        shift(ax, bx, cx, u);
        shift(fa, fb, fc, fu);
    }
}

// Brent's parabolic/golden-section line minimum inside a bracket
double brent(LineFn& f1, double ax, double bx, double cx, double& tmin) {
    double a = std::min(ax, cx);
    double b = std::max(ax, cx);
    double x = bx, w = bx, v = bx;
    double fx = f1(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < kBrentItmax; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = kBrentTol * std::abs(x) + kZeps;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x)) {
                e = x >= xm ? a - x : b - x;
                d = kCGold * e;
            } else {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
            }
        } else {
            e = x >= xm ? a - x : b - x;
            d = kCGold * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = f1(u);
        if (fu <= fx) {
            if (u >= x) a = x;
            else b = x;
            shift(v, w, x, u);
            shift(fv, fw, fx, fu);
        } else {
            if (u < x) a = u;
            else b = u;
            if (fu <= fw || w == x) {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    tmin = x;
    return fx;
}

void line_minimize(CountedObjective& F, std::vector<double>& x, const std::vector<double>& dir,
                   double& fret) {
    LineFn f1{F, x, dir, std::vector<double>(x.size())};
    double ax, bx, cx, fa, fb, fc;
    bracket(f1, ax, bx, cx, fa, fb, fc);
    double tmin = 0.0;
    fret = brent(f1, ax, bx, cx, tmin);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += tmin * dir[j];
}

}  // namespace

std::vector<double> init_params(int count, Rng& rng) {
    if (count < 0) throw std::invalid_argument("count must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double pi = std::acos(-1.0);
    for (auto& v : out) v = rng.uniform(0.0, pi);
    return out;
}

OptimizeResult powell_minimize(const Objective& f, std::vector<double> x0,
                               const OptimizeConfig& cfg) {
    if (cfg.xtol <= 0.0 || cfg.ftol <= 0.0) throw std::invalid_argument("tolerances must be positive");
    for (double v : x0)
        if (!std::isfinite(v)) throw std::invalid_argument("starting point must be finite");

    const int d = static_cast<int>(x0.size());
    const int budget = cfg.max_evals > 0 ? cfg.max_evals : std::max(1, 1000 * d);
    CountedObjective F(f, budget);
    OptimizeResult res;

    try {
        double fret = F(x0);
        if (d == 0) {
            res.converged = true;
            res.trace.push_back(fret);
        } else {
            std::vector<std::vector<double>> dirs(d, std::vector<double>(d, 0.0));
            for (int i = 0; i < d; ++i) dirs[i][i] = 1.0;
            std::vector<double> x = x0;
            std::vector<double> xp(d), xext(d), xi(d);
            while (true) {
                const double fp = fret;
                xp = x;
                int ibig = 0;
                double del = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double fptt = fret;
                    line_minimize(F, x, dirs[i], fret);
                    if (fptt - fret > del) {
                        del = fptt - fret;
                        ibig = i;
                    }
                }
                double disp = 0.0, xmax = 0.0;
                for (int j = 0; j < d; ++j) {
                    disp = std::max(disp, std::abs(x[j] - xp[j]));
                    xmax = std::max(xmax, std::abs(x[j]));
                }
                if (2.0 * (fp - fret) <= cfg.ftol * (std::abs(fp) + std::abs(fret)) + kTiny ||
                    disp <= cfg.xtol * (1.0 + xmax)) {
                    res.converged = true;
                    res.trace.push_back(F.best_value());
                    break;
                }
                for (int j = 0; j < d; ++j) {
                    xext[j] = 2.0 * x[j] - xp[j];
                    xi[j] = x[j] - xp[j];
                }
                const double fext = F(xext);
                if (fext < fp) {
                    const double a = fp - fret - del;
                    const double b = fp - fext;
                    const double t = 2.0 * (fp - 2.0 * fret + fext) * a * a - del * b * b;
                    if (t < 0.0) {
                        line_minimize(F, x, xi, fret);
                        // discard the spent direction and append the net
                        // displacement last, keeping the conjugate ordering
                        dirs[ibig] = dirs[d - 1];
                        dirs[d - 1] = xi;
                    }
                }
                res.trace.push_back(F.best_value());
            }
        }
    } catch (const BudgetExhausted&) {
        res.converged = false;
        res.trace.push_back(F.best_value());
    }

    res.best_params = F.best_params();
    res.best_value = F.best_value();
    res.num_evals = F.num_evals();
    return res;
}

}  // namespace svq
