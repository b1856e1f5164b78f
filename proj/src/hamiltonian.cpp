#include "homog/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homog/errors.hpp"

namespace homog {

std::size_t Tabulated::size() const {
    std::size_t s = qgrid.node_count();
    for (int i = 0; i < qgrid.n; ++i) s *= std::size_t(pN);
    return s;
}

std::size_t Tabulated::index(const std::vector<int>& qi,
                             const std::vector<int>& pi) const {
    std::size_t k = 0;
    for (int i = 0; i < qgrid.n; ++i) k = k * qgrid.N + std::size_t(qi[i]);
    for (int i = 0; i < qgrid.n; ++i) k = k * pN + std::size_t(pi[i]);
    return k;
}

int HamiltonianSpec::dim() const {
    return std::visit(
        [](const auto& f) -> int {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Mechanical>) return f.V->dim();
            else if constexpr (std::is_same_v<T, ProductForm>) return f.gamma->dim();
            else if constexpr (std::is_same_v<T, FiberOnly>) return f.dim;
            else if constexpr (std::is_same_v<T, Tabulated>) return f.qgrid.n;
            else return f.inner->dim();  // Truncated and Sheared
        },
        form);
}

SpecPtr HamiltonianSpec::mechanical(ScalarFieldPtr V) {
    auto s = std::make_shared<HamiltonianSpec>();
    s->form = Mechanical{std::move(V)};
    return s;
}

SpecPtr HamiltonianSpec::product(ScalarFieldPtr gamma) {
    // gamma >= 0 keeps the fibers convex; audit on a sampling grid
    const TorusGrid audit(gamma->dim(), gamma->dim() == 1 ? 512 : 64);
    for (std::size_t k = 0; k < audit.node_count(); ++k)
        if (gamma->value(audit.node(k)) < 0.0) throw NonConvexSpec();
    auto s = std::make_shared<HamiltonianSpec>();
    s->form = ProductForm{std::move(gamma)};
    return s;
}

SpecPtr HamiltonianSpec::fiber_only(int dim, double a, double d) {
    auto s = std::make_shared<HamiltonianSpec>();
    s->form = FiberOnly{dim, a, d};
    return s;
}

SpecPtr HamiltonianSpec::sheared(SpecPtr inner, ScalarFieldPtr g) {
    auto s = std::make_shared<HamiltonianSpec>();
    s->convex = inner->convex;
    s->superlinear = inner->superlinear;
    s->form = Sheared{std::move(inner), std::move(g)};
    return s;
}

SpecPtr HamiltonianSpec::tabulated(Tabulated t) {
    if (!fiber_convexity_check(t)) throw NonConvexSpec();
    auto s = std::make_shared<HamiltonianSpec>();
    // superlinearity is not certifiable from a finite fiber box
    s->superlinear = false;
    s->form = std::move(t);
    return s;
}

namespace {

double tab_eval(const Tabulated& tab, const Vec& q, const Vec& p) {
    const int n = tab.qgrid.n;
    for (int i = 0; i < n; ++i)
        if (p[i] < -tab.P - 1e-12 || p[i] > tab.P + 1e-12) throw OutOfFiberBox();
    const int N = tab.qgrid.N;
    // local coordinates and base indices per axis (q first, then p)
    int base[4];
    double t[4];
    for (int i = 0; i < n; ++i) {
        const double x = fold01(q[i]) * N;
        base[i] = int(std::floor(x)) % N;
        t[i] = x - std::floor(x);
    }
    for (int i = 0; i < n; ++i) {
        double x = (std::clamp(p[i], -tab.P, tab.P) + tab.P) / tab.pspacing();
        int b = int(std::floor(x));
        b = std::clamp(b, 0, tab.pN - 2);
        base[n + i] = b;
        t[n + i] = x - b;
    }
    const int dims = 2 * n;
    double acc = 0.0;
    for (int corner = 0; corner < (1 << dims); ++corner) {
        double w = 1.0;
        std::vector<int> qi(n), pi(n);
        for (int i = 0; i < dims; ++i) {
            const int bit = (corner >> i) & 1;
            w *= bit ? t[i] : (1.0 - t[i]);
            if (i < n)
                qi[i] = (base[i] + bit) % N;
            else
                pi[i - n] = std::min(base[i] + bit, tab.pN - 1);
        }
        if (w != 0.0) acc += w * tab.values[tab.index(qi, pi)];
    }
    return acc;
}

Vec tab_grad(const Tabulated& tab, const Vec& q, const Vec& p, bool in_p) {
    const int n = tab.qgrid.n;
    Vec g = Vec::zero(n);
    const double hq = tab.qgrid.spacing();
    const double hp = tab.pspacing();
    for (int i = 0; i < n; ++i) {
        if (in_p) {
            const double lo = std::fmax(p[i] - hp, -tab.P);
            const double hi = std::fmin(p[i] + hp, tab.P);
            Vec pl = p, ph = p;
            pl[i] = lo;
            ph[i] = hi;
            g[i] = (tab_eval(tab, q, ph) - tab_eval(tab, q, pl)) / (hi - lo);
        } else {
            Vec ql = q, qh = q;
            ql[i] = q[i] - hq;
            qh[i] = q[i] + hq;
            g[i] = (tab_eval(tab, qh, p) - tab_eval(tab, ql, p)) / (2.0 * hq);
        }
    }
    return g;
}

}  // namespace

double eval_h(const HamiltonianSpec& spec, const Vec& q, const Vec& p) {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Mechanical>)
                return 0.5 * p.norm2() + f.V->value(q);
            else if constexpr (std::is_same_v<T, ProductForm>)
                return f.gamma->value(q) * (p.norm2() - 1.0);
            else if constexpr (std::is_same_v<T, FiberOnly>)
                return 0.5 * f.a * p.norm2() + f.d;
            else if constexpr (std::is_same_v<T, Tabulated>)
                return tab_eval(f, q, p);
            else if constexpr (std::is_same_v<T, Truncated>)
                return f.profile(eval_h(*f.inner, q, p));
            else
                return eval_h(*f.inner, q, p + f.g->gradient(q));
        },
        spec.form);
}

Vec grad_p(const HamiltonianSpec& spec, const Vec& q, const Vec& p) {
    return std::visit(
        [&](const auto& f) -> Vec {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Mechanical>)
                return p;
            else if constexpr (std::is_same_v<T, ProductForm>)
                return p * (2.0 * f.gamma->value(q));
            else if constexpr (std::is_same_v<T, FiberOnly>)
                return p * f.a;
            else if constexpr (std::is_same_v<T, Tabulated>)
                return tab_grad(f, q, p, true);
            else if constexpr (std::is_same_v<T, Truncated>)
                return grad_p(*f.inner, q, p) *
                       f.profile.deriv(eval_h(*f.inner, q, p));
            else
                return grad_p(*f.inner, q, p + f.g->gradient(q));
        },
        spec.form);
}

Vec grad_q(const HamiltonianSpec& spec, const Vec& q, const Vec& p) {
    return std::visit(
        [&](const auto& f) -> Vec {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Mechanical>)
                return f.V->gradient(q);
            else if constexpr (std::is_same_v<T, ProductForm>)
                return f.gamma->gradient(q) * (p.norm2() - 1.0);
            else if constexpr (std::is_same_v<T, FiberOnly>)
                return Vec::zero(f.dim);
            else if constexpr (std::is_same_v<T, Tabulated>)
                return tab_grad(f, q, p, false);
            else if constexpr (std::is_same_v<T, Truncated>)
                return grad_q(*f.inner, q, p) *
                       f.profile.deriv(eval_h(*f.inner, q, p));
            else {
                // centered differences: dg has no closed second derivative
                const double step = 1e-5;
                Vec g = Vec::zero(q.n);
                for (int i = 0; i < q.n; ++i) {
                    Vec ql = q, qh = q;
                    ql[i] -= step;
                    qh[i] += step;
                    g[i] = (eval_h(spec, qh, p) - eval_h(spec, ql, p)) /
                           (2.0 * step);
                }
                return g;
            }
        },
        spec.form);
}

LagrangianValue legendre_lagrangian(const HamiltonianSpec& spec, const Vec& q,
                                    const Vec& v) {
    return std::visit(
        [&](const auto& f) -> LagrangianValue {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Mechanical>) {
                return {0.5 * v.norm2() - f.V->value(q), v};
            } else if constexpr (std::is_same_v<T, ProductForm>) {
                const double g = f.gamma->value(q);
                if (g <= 0.0) {
                    if (v.norm2() > 0.0) throw NotSuperlinear();
                    return {0.0, Vec::zero(v.n)};
                }
                return {0.25 * v.norm2() / g + g, v * (0.5 / g)};
            } else if constexpr (std::is_same_v<T, FiberOnly>) {
                return {0.5 * v.norm2() / f.a - f.d, v * (1.0 / f.a)};
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                // grid scan over the fiber box, then Newton polish
                const int n = f.qgrid.n;
                double best = -std::numeric_limits<double>::infinity();
                Vec bp = Vec::zero(n);
                std::vector<int> idx(n, 0);
                const int total = n == 1 ? f.pN : f.pN * f.pN;
                bool boundary = false;
                for (int k = 0; k < total; ++k) {
                    Vec p = Vec::zero(n);
                    int rem = k;
                    bool bd = false;
                    for (int i = n - 1; i >= 0; --i) {
                        const int bi = rem % f.pN;
                        rem /= f.pN;
                        p[i] = -f.P + bi * f.pspacing();
                        bd = bd || bi == 0 || bi == f.pN - 1;
                    }
                    const double val = p.dot(v) - tab_eval(f, q, p);
                    if (val > best) {
                        best = val;
                        bp = p;
                        boundary = bd;
                    }
                }
                if (boundary) throw NotSuperlinear();
                // local polish: a few damped gradient steps on p -> <p,v>-H
                const double hp = f.pspacing();
                for (int it = 0; it < 60; ++it) {
                    const Vec g = v - tab_grad(f, q, bp, true);
                    double step = 0.25 * hp;
                    Vec cand = bp + g * (step / std::fmax(g.norm(), 1e-14));
                    for (int i = 0; i < n; ++i)
                        cand[i] = std::clamp(cand[i], -f.P, f.P);
                    const double cv = cand.dot(v) - tab_eval(f, q, cand);
                    if (cv > best) {
                        best = cv;
                        bp = cand;
                    } else {
                        break;
                    }
                }
                return {best, bp};
            } else if constexpr (std::is_same_v<T, Sheared>) {
                const Vec dg = f.g->gradient(q);
                LagrangianValue inner = legendre_lagrangian(*f.inner, q, v);
                return {inner.L - dg.dot(v), inner.maximizer - dg};
            } else {
                throw NotSuperlinear("truncated specs are not superlinear");
            }
        },
        spec.form);
}

SpecPtr apply_truncation(SpecPtr spec, const TruncationProfile& profile) {
    if (auto* tab = std::get_if<Tabulated>(&spec->form)) {
        Tabulated out = *tab;
        for (double& v : out.values) v = profile(v);
        auto s = std::make_shared<HamiltonianSpec>();
        s->form = std::move(out);
        s->convex = false;
        s->superlinear = false;
        return s;
    }
    auto s = std::make_shared<HamiltonianSpec>();
    s->form = Truncated{std::move(spec), profile};
    s->convex = false;
    s->superlinear = false;
    return s;
}

namespace {

OscillationResult minmax_sweep(const HamiltonianSpec& spec, double plo, double phi,
                               int base) {
    const int n = spec.dim();
    auto level = [&](int K) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        const double dp = (phi - plo) / K;
        if (n == 1) {
            for (int i = 0; i < K; ++i)
                for (int j = 0; j <= K; ++j) {
                    const double h =
                        eval_h(spec, Vec(double(i) / K), Vec(plo + j * dp));
                    mn = std::fmin(mn, h);
                    mx = std::fmax(mx, h);
                }
        } else {
            for (int i = 0; i < K; ++i)
                for (int j = 0; j < K; ++j)
                    for (int a = 0; a <= K; ++a)
                        for (int b = 0; b <= K; ++b) {
                            const double h =
                                eval_h(spec, Vec(double(i) / K, double(j) / K),
                                       Vec(plo + a * dp, plo + b * dp));
                            mn = std::fmin(mn, h);
                            mx = std::fmax(mx, h);
                        }
        }
        return mx - mn;
    };
    const int coarse = n == 1 ? base : std::min(base, 32);
    const double c = level(coarse), fine = level(2 * coarse);
    return {fine, std::fabs(fine - c)};
}

}  // namespace

OscillationResult oscillation(const HamiltonianSpec& spec, double plo, double phi,
                              int base) {
    return minmax_sweep(spec, plo, phi, base);
}

OscillationResult oscillation(const PeriodicField& field) {
    return {field.max() - field.min(), 0.0};
}

OscillationResult oscillation_support(const HamiltonianSpec& spec, int base) {
    // grow the fiber box until H is constant on its boundary
    const int n = spec.dim();
    double P = 1.0;
    for (int attempt = 0; attempt < 12; ++attempt, P *= 1.5) {
        bool constant = true;
        double ref = eval_h(spec, Vec::zero(n),
                            n == 1 ? Vec(P) : Vec(P, 0.0));
        const int K = 64;
        for (int i = 0; i < K && constant; ++i) {
            const Vec q = n == 1 ? Vec(double(i) / K)
                                 : Vec(double(i) / K, double((i * 7) % K) / K);
            for (double sgn : {-1.0, 1.0}) {
                const Vec p = n == 1 ? Vec(sgn * P) : Vec(sgn * P, sgn * P);
                if (std::fabs(eval_h(spec, q, p) - ref) > 1e-12 ||
                    grad_p(spec, q, p).norm() > 1e-12) {
                    constant = false;
                    break;
                }
            }
        }
        if (constant) return minmax_sweep(spec, -P, P, base);
    }
    throw UnboundedRegion();
}

bool fiber_convexity_check(const Tabulated& tab, double tol) {
    const int n = tab.qgrid.n;
    const int N = tab.qgrid.N;
    std::vector<int> qi(n, 0), pi(n, 0);
    const std::size_t qtotal = tab.qgrid.node_count();
    for (std::size_t qk = 0; qk < qtotal; ++qk) {
        if (n == 1) {
            qi[0] = int(qk);
        } else {
            qi[0] = int(qk) / N;
            qi[1] = int(qk) % N;
        }
        for (int axis = 0; axis < n; ++axis) {
            // second differences along the fiber axis, all other p indices swept
            const int other = n == 1 ? 1 : tab.pN;
            for (int o = 0; o < other; ++o) {
                for (int k = 1; k + 1 < tab.pN; ++k) {
                    for (int i = 0; i < n; ++i) pi[i] = (i == axis) ? k : o;
                    auto at = [&](int kk) {
                        std::vector<int> pp = pi;
                        pp[axis] = kk;
                        return tab.values[tab.index(qi, pp)];
                    };
                    if (at(k - 1) - 2.0 * at(k) + at(k + 1) < -tol) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace homog
