#include "homog/cell.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "homog/parallel.hpp"
#include "homog/quadrature.hpp"

namespace homog {

// ---------------------------------------------------------------------------
// Correctors

namespace {

std::vector<std::vector<double>> forward_differences(const PeriodicField& u) {
    const TorusGrid& g = u.grid();
    const int N = g.N;
    const double invh = double(N);
    std::vector<std::vector<double>> du(g.n, std::vector<double>(g.node_count()));
    if (g.n == 1) {
        for (int i = 0; i < N; ++i) du[0][i] = (u[(i + 1) % N] - u[i]) * invh;
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const std::size_t k = g.index(i, j);
                du[0][k] = (u[g.index((i + 1) % N, j)] - u[k]) * invh;
                du[1][k] = (u[g.index(i, (j + 1) % N)] - u[k]) * invh;
            }
    }
    return du;
}

}  // namespace

CorrectorField CorrectorField::zero(TorusGrid grid) {
    return from_field(PeriodicField(grid, std::vector<double>(grid.node_count(), 0.0)));
}

CorrectorField CorrectorField::from_field(PeriodicField u) {
    const double m = u.mean();
    if (m != 0.0) {
        std::vector<double> v = u.values();
        for (double& x : v) x -= m;
        u = PeriodicField(u.grid(), std::move(v));
    }
    CorrectorField c{std::move(u), {}};
    c.du = forward_differences(c.u);
    return c;
}

// ---------------------------------------------------------------------------
// Smoothed minimax solver

namespace {

struct Objective {
    const HamiltonianSpec& spec;
    Vec p;
    TorusGrid grid;
    std::vector<Vec> nodes;

    explicit Objective(const HamiltonianSpec& s, const Vec& pp, TorusGrid g)
        : spec(s), p(pp), grid(g) {
        nodes.resize(grid.node_count());
        for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = grid.node(k);
    }

    // H at every node for the corrector u; returns the hard max.
    double hamiltonians(const std::vector<double>& uvals,
                        std::vector<double>& H) const {
        const int N = grid.N;
        const double invh = double(N);
        H.resize(nodes.size());
        double mx = -std::numeric_limits<double>::infinity();
        if (grid.n == 1) {
            for (int i = 0; i < N; ++i) {
                const double du = (uvals[(i + 1) % N] - uvals[i]) * invh;
                H[i] = eval_h(spec, nodes[i], Vec(p[0] + du));
                mx = std::fmax(mx, H[i]);
            }
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    const std::size_t k = grid.index(i, j);
                    const double dux =
                        (uvals[grid.index((i + 1) % N, j)] - uvals[k]) * invh;
                    const double duy =
                        (uvals[grid.index(i, (j + 1) % N)] - uvals[k]) * invh;
                    H[k] = eval_h(spec, nodes[k], Vec(p[0] + dux, p[1] + duy));
                    mx = std::fmax(mx, H[k]);
                }
        }
        return mx;
    }

    double softmax(const std::vector<double>& H, double beta, double hard) const {
        double s = 0.0;
        for (double h : H) s += std::exp(beta * (h - hard));
        return hard + std::log(s) / beta;
    }

    double value(const std::vector<double>& uvals, double beta) const {
        std::vector<double> H;
        const double hard = hamiltonians(uvals, H);
        return softmax(H, beta, hard);
    }

    // Gradient of the smoothed objective with respect to the node values.
    void gradient(const std::vector<double>& uvals, double beta,
                  std::vector<double>& grad, double* obj_out) const {
        const int N = grid.N;
        const double invh = double(N);
        std::vector<double> H;
        const double hard = hamiltonians(uvals, H);
        std::vector<double> w(H.size());
        double tot = 0.0;
        for (std::size_t k = 0; k < H.size(); ++k) {
            w[k] = std::exp(beta * (H[k] - hard));
            tot += w[k];
        }
        for (double& x : w) x /= tot;
        if (obj_out) *obj_out = hard + std::log(tot) / beta;

        grad.assign(uvals.size(), 0.0);
        if (grid.n == 1) {
            for (int i = 0; i < N; ++i) {
                const double du = (uvals[(i + 1) % N] - uvals[i]) * invh;
                const double gp = grad_p(spec, nodes[i], Vec(p[0] + du))[0];
                const double c = w[i] * gp * invh;
                grad[(i + 1) % N] += c;
                grad[i] -= c;
            }
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    const std::size_t k = grid.index(i, j);
                    const double dux =
                        (uvals[grid.index((i + 1) % N, j)] - uvals[k]) * invh;
                    const double duy =
                        (uvals[grid.index(i, (j + 1) % N)] - uvals[k]) * invh;
                    const Vec gp =
                        grad_p(spec, nodes[k], Vec(p[0] + dux, p[1] + duy));
                    const double cx = w[k] * gp[0] * invh;
                    const double cy = w[k] * gp[1] * invh;
                    grad[grid.index((i + 1) % N, j)] += cx;
                    grad[grid.index(i, (j + 1) % N)] += cy;
                    grad[k] -= cx + cy;
                }
        }
        // project onto the mean-zero constraint
        double m = 0.0;
        for (double g : grad) m += g;
        m /= double(grad.size());
        for (double& g : grad) g -= m;
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// L-BFGS (two-loop recursion) with Armijo backtracking; the objective is
// convex for fiberwise-convex specs, so plain descent directions suffice.
void lbfgs_minimize(const Objective& obj, double beta, int max_iters,
                    std::vector<double>& u) {
    const std::size_t n = u.size();
    const int memory = 8;
    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    std::vector<double> g, g_prev, u_prev, dir(n), cand, gc;
    double f = 0.0;
    obj.gradient(u, beta, g, &f);

    for (int it = 0; it < max_iters; ++it) {
        // two-loop recursion
        dir = g;
        std::vector<double> alpha(s_hist.size());
        for (int i = int(s_hist.size()) - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * dot(s_hist[i], dir);
            for (std::size_t k = 0; k < n; ++k) dir[k] -= alpha[i] * y_hist[i][k];
        }
        double scale = 1.0 / beta;
        if (!s_hist.empty()) {
            const double yy = dot(y_hist.back(), y_hist.back());
            if (yy > 0.0) scale = dot(s_hist.back(), y_hist.back()) / yy;
        }
        for (double& d : dir) d *= scale;
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double b = rho_hist[i] * dot(y_hist[i], dir);
            for (std::size_t k = 0; k < n; ++k)
                dir[k] += (alpha[i] - b) * s_hist[i][k];
        }

        double gd = dot(g, dir);
        if (gd <= 0.0) {  // not a descent direction; fall back to steepest
            dir = g;
            for (double& d : dir) d *= scale;
            gd = dot(g, dir);
        }
        if (gd <= 1e-18 * (1.0 + std::fabs(f))) break;

        double step = 1.0;
        bool accepted = false;
        cand.resize(n);
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t k = 0; k < n; ++k) cand[k] = u[k] - step * dir[k];
            const double fc = obj.value(cand, beta);
            if (fc <= f - 1e-4 * step * gd) {
                u_prev = u;
                g_prev = g;
                u = cand;
                obj.gradient(u, beta, g, &f);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> s(n), y(n);
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = u[k] - u_prev[k];
            y[k] = g[k] - g_prev[k];
        }
        const double sy = dot(s, y);
        if (sy > 1e-14) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (int(s_hist.size()) > memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
    }
}

// margin = grid spacing * worst base-direction steepness at the graph
double discretization_margin(const HamiltonianSpec& spec, const Vec& p,
                             const CorrectorField& u) {
    const TorusGrid& g = u.u.grid();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        Vec pp = p;
        for (int a = 0; a < g.n; ++a) pp[a] += u.du[a][k];
        worst = std::fmax(worst, grad_q(spec, g.node(k), pp).norm());
    }
    return worst * g.spacing();
}

}  // namespace

MinimaxResult homogenize_minimax(const HamiltonianSpec& spec, const Vec& p,
                                 const SolverConfig& cfg,
                                 const CorrectorField* warm_start) {
    // Truncations commute with homogenization, so the default path solves
    // the untruncated problem and composes the profile afterwards.
    if (!cfg.direct_truncated) {
        if (const auto* tr = std::get_if<Truncated>(&spec.form)) {
            MinimaxResult inner = homogenize_minimax(*tr->inner, p, cfg, warm_start);
            // |f'| <= 1, so the certification gap carries through unchanged
            inner.value = tr->profile(inner.value);
            return inner;
        }
    }
    if (!spec.convex && !std::holds_alternative<Truncated>(spec.form))
        throw NonConvexSpec();

    const int n = spec.dim();
    const TorusGrid grid(n, n == 1 ? cfg.grid_N : cfg.grid_N_2d);
    Objective obj(spec, p, grid);

    std::vector<double> u(grid.node_count(), 0.0);
    if (warm_start && warm_start->u.grid() == grid) u = warm_start->u.values();

    double beta = cfg.beta0;
    for (int stage = 0; stage < cfg.stages; ++stage, beta *= cfg.beta_growth)
        lbfgs_minimize(obj, beta, cfg.max_iters, u);

    CorrectorField corr = CorrectorField::from_field(PeriodicField(grid, u));
    std::vector<double> H;
    const double hard = obj.hamiltonians(corr.u.values(), H);

    MinimaxResult res;
    res.value = hard;
    res.gap = discretization_margin(spec, p, corr);
    res.converged = res.gap <= cfg.tolerance;
    res.corrector = std::move(corr);
    return res;
}

// ---------------------------------------------------------------------------
// 1D level-set quadrature oracle

namespace {

struct Oracle1D {
    const HamiltonianSpec* base{nullptr};
    std::vector<TruncationProfile> profiles;  // outermost last
    bool mechanical{false};
    const ScalarField* field{nullptr};  // V or gamma
    const Sheared* shear_note{nullptr};

    // fiber minimum value at q (both supported forms attain it at p=0)
    double min_value(double q) const {
        const double v = field->value(Vec(q));
        return mechanical ? v : -v;
    }
    // positive fiber root of H(q,.) = lambda
    double root(double q, double lambda) const {
        if (mechanical) {
            const double d = lambda - field->value(Vec(q));
            if (d < 0.0) throw RootBracketingFailure("no fiber root at q=" +
                                                     std::to_string(q));
            return std::sqrt(2.0 * d);
        }
        const double g = field->value(Vec(q));
        if (g <= 0.0)
            throw RootBracketingFailure("degenerate fiber at q=" + std::to_string(q));
        const double d = 1.0 + lambda / g;
        if (d < 0.0) throw RootBracketingFailure("no fiber root at q=" +
                                                 std::to_string(q));
        return std::sqrt(d);
    }
};

Oracle1D unwrap_oracle(const HamiltonianSpec& spec) {
    if (spec.dim() != 1) throw DimensionNot1();
    Oracle1D o;
    const HamiltonianSpec* cur = &spec;
    for (;;) {
        if (const auto* tr = std::get_if<Truncated>(&cur->form)) {
            o.profiles.insert(o.profiles.begin(), tr->profile);
            cur = tr->inner.get();
        } else if (const auto* sh = std::get_if<Sheared>(&cur->form)) {
            cur = sh->inner.get();  // shear leaves the homogenization unchanged
        } else {
            break;
        }
    }
    if (const auto* m = std::get_if<Mechanical>(&cur->form)) {
        o.mechanical = true;
        o.field = m->V.get();
    } else if (const auto* pf = std::get_if<ProductForm>(&cur->form)) {
        o.mechanical = false;
        o.field = pf->gamma.get();
    } else if (const auto* fo = std::get_if<FiberOnly>(&cur->form)) {
        // q-independent: treat as mechanical with a constant potential
        (void)fo;
        throw Error("quadrature oracle: use mechanical form for fiber-only specs");
    } else {
        throw Error("quadrature oracle requires a mechanical or product-form spec");
    }
    o.base = cur;
    return o;
}

double lambda_flat(const Oracle1D& o) {
    // max over q of the fiber minimum: dense scan plus golden refinement
    const int K = 8192;
    double best = -std::numeric_limits<double>::infinity();
    int bi = 0;
    for (int i = 0; i < K; ++i) {
        const double v = o.min_value(double(i) / K);
        if (v > best) {
            best = v;
            bi = i;
        }
    }
    double a = (bi - 1.0) / K, b = (bi + 1.0) / K;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = o.min_value(x1), f2 = o.min_value(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = o.min_value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = o.min_value(x1);
        }
    }
    return std::fmax(best, std::fmax(f1, f2));
}

double integrated_root(const Oracle1D& o, double lambda) {
    return integrate([&](double q) { return o.root(q, lambda); }, 0.0, 1.0, 1e-9,
                     1e-12);
}

double quadrature_level(const Oracle1D& o, double p) {
    const double l0 = lambda_flat(o);
    const double edge = integrated_root(o, l0);
    const double target = std::fabs(p);
    if (target <= edge + 1e-12) return l0;
    // expand then bisect: P+ is strictly increasing in lambda
    double lo = l0;
    double hi = l0 + std::fmax(1.0, 0.5 * std::fabs(l0));
    for (int it = 0; it < 200 && integrated_root(o, hi) < target; ++it)
        hi = l0 + 2.0 * (hi - l0);
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        (integrated_root(o, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double homogenize_1d_quadrature(const HamiltonianSpec& spec, double p) {
    const Oracle1D o = unwrap_oracle(spec);
    double lambda = quadrature_level(o, p);
    for (const auto& prof : o.profiles) lambda = prof(lambda);
    return lambda;
}

double quadrature_flat_edge(const HamiltonianSpec& spec) {
    const Oracle1D o = unwrap_oracle(spec);
    return integrated_root(o, lambda_flat(o));
}

// ---------------------------------------------------------------------------
// Lax-Oleinik / evolutionary Hamilton-Jacobi marching

namespace {

struct QuadFiber {
    double A, B, shift;
    double value(double s) const {
        s += shift;
        return 0.5 * A * s * s + B;
    }
    double slope(double s) const { return A * (s + shift); }
};

struct ProductFiber {
    double A, shift;
    double value(double s) const {
        s += shift;
        return A * (s * s - 1.0);
    }
    double slope(double s) const { return 2.0 * A * (s + shift); }
};

template <class Inner>
struct TruncFiber {
    Inner inner;
    TruncationProfile prof;
    double value(double s) const { return prof(inner.value(s)); }
    double slope(double s) const {
        return prof.deriv(inner.value(s)) * inner.slope(s);
    }
};

struct GenericFiber {
    const HamiltonianSpec* spec;
    double q;
    double value(double s) const { return eval_h(*spec, Vec(q), Vec(s)); }
    double slope(double s) const { return grad_p(*spec, Vec(q), Vec(s))[0]; }
};

// Rusanov / local Lax-Friedrichs march of u_t + H_i(p + Du) = 0.
template <class Fiber>
double lo_march_1d(const std::vector<Fiber>& fib, double p,
                   const LaxOleinikConfig& cfg) {
    const int N = cfg.N;
    const double h = 1.0 / N;
    const double invh = double(N);

    // gradient-range sweep for the global wave speed
    double lam_init = -std::numeric_limits<double>::infinity();
    for (const auto& f : fib) lam_init = std::fmax(lam_init, f.value(p));
    double S = 1.0;
    for (int it = 0; it < 24; ++it, S *= 2.0) {
        double minv = std::numeric_limits<double>::infinity();
        double maxslope = 0.0;
        for (const auto& f : fib) {
            minv = std::fmin(minv, std::fmin(f.value(p + S), f.value(p - S)));
            maxslope = std::fmax(maxslope, std::fmax(std::fabs(f.slope(p + S)),
                                                     std::fabs(f.slope(p - S))));
        }
        if (minv >= lam_init + 1.0 || maxslope < 1e-12) break;
    }
    double alpha = 0.0;
    for (const auto& f : fib)
        for (int k = 0; k <= 1024; ++k) {
            const double s = p - S + 2.0 * S * k / 1024.0;
            alpha = std::fmax(alpha, std::fabs(f.slope(s)));
        }
    alpha = std::fmax(alpha * 1.05, 1e-8);

    const double dt = cfg.cfl * h / alpha;
    const long n_half = std::lround(0.5 * cfg.T / dt);
    const long n_total = 2 * n_half;
    double habs = 0.0;
    for (const auto& f : fib) habs = std::fmax(habs, std::fabs(f.value(p)));
    const double blow = 10.0 * cfg.T * std::fmax(habs, 1.0);

    std::vector<double> u(N, 0.0), nu(N), half(N);
    for (long step = 0; step < n_total; ++step) {
        for (int i = 0; i < N; ++i) {
            const double um = u[(i + N - 1) % N];
            const double up = u[(i + 1) % N];
            const double dm = (u[i] - um) * invh;
            const double dp = (up - u[i]) * invh;
            const double a = std::fmax(std::fabs(fib[i].slope(p + dm)),
                                       std::fabs(fib[i].slope(p + dp)));
            if (a > alpha) throw CFLViolation();
            const double flux =
                fib[i].value(p + 0.5 * (dm + dp)) - 0.5 * a * (dp - dm);
            nu[i] = u[i] - dt * flux;
        }
        u.swap(nu);
        if (step == n_half - 1) half = u;
        if ((step & 1023) == 0) {
            for (double v : u)
                if (!(std::fabs(v) <= blow)) throw UnstableBlowup();
        }
    }
    double acc = 0.0;
    for (int i = 0; i < N; ++i) acc += u[i] - half[i];
    return -(acc / N) / (n_half * dt);
}

// Fiber-model extraction: shear contributes a per-node shift, truncations
// post-compose; anything else falls back to the generic evaluator.
template <class Base>
double lo_dispatch_trunc(std::vector<Base> base,
                         const std::vector<TruncationProfile>& profs, double p,
                         const LaxOleinikConfig& cfg) {
    if (profs.empty()) return lo_march_1d(base, p, cfg);
    if (profs.size() == 1) {
        std::vector<TruncFiber<Base>> fib;
        fib.reserve(base.size());
        for (const auto& b : base) fib.push_back({b, profs[0]});
        return lo_march_1d(fib, p, cfg);
    }
    throw Error("lax-oleinik: nested truncations unsupported");
}

double lo_run_1d(const HamiltonianSpec& spec, double p,
                 const LaxOleinikConfig& cfg) {
    const int N = cfg.N;
    std::vector<TruncationProfile> profs;
    std::vector<double> shift(N, 0.0);
    const HamiltonianSpec* cur = &spec;
    for (;;) {
        if (const auto* tr = std::get_if<Truncated>(&cur->form)) {
            profs.insert(profs.begin(), tr->profile);
            cur = tr->inner.get();
        } else if (const auto* sh = std::get_if<Sheared>(&cur->form)) {
            for (int i = 0; i < N; ++i)
                shift[i] += sh->g->gradient(Vec(double(i) / N))[0];
            cur = sh->inner.get();
        } else {
            break;
        }
    }
    if (const auto* m = std::get_if<Mechanical>(&cur->form)) {
        std::vector<QuadFiber> fib(N);
        for (int i = 0; i < N; ++i)
            fib[i] = {1.0, m->V->value(Vec(double(i) / N)), shift[i]};
        return lo_dispatch_trunc(std::move(fib), profs, p, cfg);
    }
    if (const auto* pf = std::get_if<ProductForm>(&cur->form)) {
        std::vector<ProductFiber> fib(N);
        for (int i = 0; i < N; ++i)
            fib[i] = {pf->gamma->value(Vec(double(i) / N)), shift[i]};
        return lo_dispatch_trunc(std::move(fib), profs, p, cfg);
    }
    if (const auto* fo = std::get_if<FiberOnly>(&cur->form)) {
        std::vector<QuadFiber> fib(N);
        for (int i = 0; i < N; ++i) fib[i] = {fo->a, fo->d, shift[i]};
        return lo_dispatch_trunc(std::move(fib), profs, p, cfg);
    }
    std::vector<GenericFiber> fib(N);
    for (int i = 0; i < N; ++i) fib[i] = {&spec, double(i) / N};
    return lo_march_1d(fib, p, cfg);
}

double lo_run_2d(const HamiltonianSpec& spec, const Vec& p,
                 const LaxOleinikConfig& cfg) {
    const int N = std::min(cfg.N, 128);
    const TorusGrid grid(2, N);
    const double h = 1.0 / N;
    const double invh = double(N);
    std::vector<Vec> nodes(grid.node_count());
    for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = grid.node(k);

    // conservative wave speed from a gradient-range sweep
    double alpha = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        for (double sx : {-3.0, 0.0, 3.0})
            for (double sy : {-3.0, 0.0, 3.0}) {
                const Vec g = grad_p(spec, nodes[k], Vec(p[0] + sx, p[1] + sy));
                alpha = std::fmax(alpha, std::fmax(std::fabs(g[0]), std::fabs(g[1])));
            }
    alpha = std::fmax(alpha * 1.05, 1e-8);
    const double dt = cfg.cfl * h / (2.0 * alpha);
    const long n_half = std::lround(0.5 * cfg.T / dt);
    const long n_total = 2 * n_half;

    std::vector<double> u(grid.node_count(), 0.0), nu(u.size()), half(u.size());
    for (long step = 0; step < n_total; ++step) {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const std::size_t k = grid.index(i, j);
                const double dmx = (u[k] - u[grid.index((i + N - 1) % N, j)]) * invh;
                const double dpx = (u[grid.index((i + 1) % N, j)] - u[k]) * invh;
                const double dmy = (u[k] - u[grid.index(i, (j + N - 1) % N)]) * invh;
                const double dpy = (u[grid.index(i, (j + 1) % N)] - u[k]) * invh;
                const Vec pm(p[0] + 0.5 * (dmx + dpx), p[1] + 0.5 * (dmy + dpy));
                // local (Rusanov) speeds per axis; the global alpha only
                // fixes dt, keeping the scheme monotone with less smearing
                const Vec gm = grad_p(spec, nodes[k], Vec(p[0] + dmx, p[1] + dmy));
                const Vec gp = grad_p(spec, nodes[k], Vec(p[0] + dpx, p[1] + dpy));
                const double ax = std::fmax(std::fabs(gm[0]), std::fabs(gp[0]));
                const double ay = std::fmax(std::fabs(gm[1]), std::fabs(gp[1]));
                if (ax > alpha || ay > alpha) throw CFLViolation();
                const double flux = eval_h(spec, nodes[k], pm) -
                                    0.5 * ax * (dpx - dmx) -
                                    0.5 * ay * (dpy - dmy);
                nu[k] = u[k] - dt * flux;
            }
        u.swap(nu);
        if (step == n_half - 1) half = u;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] - half[k];
    return -(acc / double(u.size())) / (n_half * dt);
}

}  // namespace

double homogenize_laxoleinik(const HamiltonianSpec& spec, const Vec& p,
                             const LaxOleinikConfig& cfg) {
    if (cfg.cfl > 0.45 + 1e-12) throw CFLViolation("CFL number above 0.45");
    if (spec.dim() == 1) return lo_run_1d(spec, p[0], cfg);
    return lo_run_2d(spec, p, cfg);
}

// ---------------------------------------------------------------------------
// Batch driver

std::string method_name(HomogMethod m) {
    switch (m) {
        case HomogMethod::Minimax: return "minimax";
        case HomogMethod::Quadrature: return "quadrature";
        default: return "lax-oleinik";
    }
}

double EffectiveHamiltonian::min_value() const {
    return *std::min_element(value.begin(), value.end());
}

double EffectiveHamiltonian::max_value() const {
    return *std::max_element(value.begin(), value.end());
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : lo + (hi - lo) * i / double(count - 1);
    return v;
}

EffectiveHamiltonian effective_on_grid(const HamiltonianSpec& spec,
                                       const std::vector<double>& p_grid,
                                       HomogMethod method,
                                       const SolverConfig& cfg) {
    if (p_grid.empty()) throw EmptyInput();
    if (!std::is_sorted(p_grid.begin(), p_grid.end()))
        throw Error("effective_on_grid: p grid must be sorted");
    if (spec.dim() != 1)
        throw Error("effective_on_grid: batch driver covers n=1 fiber grids");

    EffectiveHamiltonian eff;
    eff.p = p_grid;
    eff.method = method_name(method);
    const int M = int(p_grid.size());
    eff.value.resize(M);
    eff.lower.resize(M);
    eff.upper.resize(M);

    auto attach = [&](int i, const std::exception& e) -> void {
        throw Error(std::string(e.what()) + " at p=" + std::to_string(p_grid[i]));
    };

    if (method == HomogMethod::Minimax) {
        CorrectorField warm = CorrectorField::zero(TorusGrid(1, cfg.grid_N));
        for (int i = 0; i < M; ++i) {
            try {
                MinimaxResult r =
                    homogenize_minimax(spec, Vec(p_grid[i]), cfg, &warm);
                eff.value[i] = r.value;
                eff.upper[i] = r.value;
                eff.lower[i] = r.value - r.gap;
                eff.max_gap = std::fmax(eff.max_gap, r.gap);
                warm = std::move(r.corrector);
            } catch (const Error& e) {
                attach(i, e);
            }
        }
    } else if (method == HomogMethod::Quadrature) {
        for (int i = 0; i < M; ++i) {
            try {
                eff.value[i] = homogenize_1d_quadrature(spec, p_grid[i]);
            } catch (const Error& e) {
                attach(i, e);
            }
            eff.lower[i] = eff.value[i] - 1e-8;
            eff.upper[i] = eff.value[i] + 1e-8;
        }
        eff.max_gap = 2e-8;
    } else {
        std::vector<std::string> errs(M);
        LaxOleinikConfig lo;
        lo.N = std::min(cfg.grid_N, 512);
        parallel_for(M, [&](int i) {
            try {
                eff.value[i] = homogenize_laxoleinik(spec, Vec(p_grid[i]), lo);
            } catch (const std::exception& e) {
                errs[i] = e.what();
            }
        });
        for (int i = 0; i < M; ++i)
            if (!errs[i].empty())
                throw Error(errs[i] + " at p=" + std::to_string(p_grid[i]));
        const double band = 5e-3;  // nominal first-order scheme accuracy
        for (int i = 0; i < M; ++i) {
            eff.lower[i] = eff.value[i] - band;
            eff.upper[i] = eff.value[i] + band;
        }
        eff.max_gap = 2.0 * band;
    }

    // convexity-along-lines audit
    const double slack = std::fmax(2.0 * eff.max_gap, 1e-9);
    for (int i = 1; i + 1 < M; ++i)
        if (eff.value[i - 1] - 2.0 * eff.value[i] + eff.value[i + 1] < -slack)
            eff.convex_ok = false;
    return eff;
}

bool subsolution_certificate(const HamiltonianSpec& spec, const Vec& p,
                             const CorrectorField& u, double h) {
    const TorusGrid& g = u.u.grid();
    double worst = -std::numeric_limits<double>::infinity();
    double lip = 0.0;
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        Vec pp = p;
        for (int a = 0; a < g.n; ++a) pp[a] += u.du[a][k];
        worst = std::fmax(worst, eval_h(spec, g.node(k), pp));
        lip = std::fmax(lip, grad_p(spec, g.node(k), pp).norm());
    }
    return worst <= h + lip * g.spacing();
}

}  // namespace homog
