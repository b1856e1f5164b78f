#include "homog/fenchel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "homog/errors.hpp"

namespace homog {

void validate_samples(const SampledFn& g) {
    if (g.x.empty() || g.y.empty()) throw EmptyInput("no samples");
    if (g.x.size() != g.y.size()) throw NonUniformGrid("abscissa/value size mismatch");
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        if (!std::isfinite(g.x[i]) || !std::isfinite(g.y[i]))
            throw NonUniformGrid("non-finite sample");
        if (i > 0 && !(g.x[i] > g.x[i - 1]))
            throw NonUniformGrid("abscissae not strictly increasing");
    }
}

std::vector<std::size_t> lower_hull(const SampledFn& g) {
    validate_samples(g);
    const std::size_t n = g.x.size();
    std::vector<std::size_t> hull;
    hull.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // pop while the middle point lies on or above the new chord
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double cross = (g.x[b] - g.x[a]) * (g.y[i] - g.y[a]) -
                                 (g.x[i] - g.x[a]) * (g.y[b] - g.y[a]);
            if (cross >= 0.0) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    return hull;
}

namespace {

void check_dual(const std::vector<double>& dual) {
    if (dual.empty()) throw EmptyInput("empty dual grid");
    for (std::size_t i = 0; i < dual.size(); ++i) {
        if (!std::isfinite(dual[i])) throw NonUniformGrid("non-finite dual point");
        if (i > 0 && dual[i] < dual[i - 1])
            throw NonUniformGrid("dual grid not sorted");
    }
}

}  // namespace

SampledFn fenchel_transform(const SampledFn& g, const std::vector<double>& dual_grid) {
    const auto hull = lower_hull(g);
    check_dual(dual_grid);
    const std::size_t m = hull.size();
    SampledFn out;
    out.x = dual_grid;
    out.y.resize(dual_grid.size());
    std::size_t j = 0;
    for (std::size_t k = 0; k < dual_grid.size(); ++k) {
        const double v = dual_grid[k];
        while (j + 1 < m) {
            const std::size_t a = hull[j], b = hull[j + 1];
            const double slope = (g.y[b] - g.y[a]) / (g.x[b] - g.x[a]);
            if (slope >= v) break;
            ++j;
        }
        out.y[k] = v * g.x[hull[j]] - g.y[hull[j]];
    }
    return out;
}

SampledFn fenchel_transform(const SampledFn& g) {
    const auto hull = lower_hull(g);
    std::vector<double> dual;
    dual.reserve(hull.size() + 1);
    if (hull.size() == 1) {
        dual.push_back(0.0);
    } else {
        for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
            const std::size_t a = hull[j], b = hull[j + 1];
            const double s = (g.y[b] - g.y[a]) / (g.x[b] - g.x[a]);
            if (dual.empty() || s > dual.back()) dual.push_back(s);
        }
    }
    return fenchel_transform(g, dual);
}

SampledFn fenchel_brute(const SampledFn& g, const std::vector<double>& dual_grid) {
    validate_samples(g);
    check_dual(dual_grid);
    SampledFn out;
    out.x = dual_grid;
    out.y.resize(dual_grid.size());
    for (std::size_t k = 0; k < dual_grid.size(); ++k) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.x.size(); ++i)
            best = std::max(best, dual_grid[k] * g.x[i] - g.y[i]);
        out.y[k] = best;
    }
    return out;
}

Sampled2D fenchel_transform_2d(const Sampled2D& g, const std::vector<double>& d0,
                               const std::vector<double>& d1) {
    if (g.x0.empty() || g.x1.empty()) throw EmptyInput("empty 2D sample set");
    if (g.values.size() != g.x0.size() * g.x1.size())
        throw NonUniformGrid("2D value count mismatch");
    const std::size_t n0 = g.x0.size(), n1 = g.x1.size();
    // sweep axis 1: h(x0, v1) = max_{x1} (v1*x1 - g)
    std::vector<double> mid(n0 * d1.size());
    for (std::size_t i = 0; i < n0; ++i) {
        SampledFn row{g.x1, std::vector<double>(g.values.begin() + i * n1,
                                                g.values.begin() + (i + 1) * n1)};
        SampledFn conj = fenchel_transform(row, d1);
        for (std::size_t k = 0; k < d1.size(); ++k) mid[i * d1.size() + k] = conj.y[k];
    }
    // sweep axis 0 on -h
    Sampled2D out;
    out.x0 = d0;
    out.x1 = d1;
    out.values.resize(d0.size() * d1.size());
    std::vector<double> col(n0);
    for (std::size_t k = 0; k < d1.size(); ++k) {
        for (std::size_t i = 0; i < n0; ++i) col[i] = -mid[i * d1.size() + k];
        SampledFn conj = fenchel_transform(SampledFn{g.x0, col}, d0);
        for (std::size_t j = 0; j < d0.size(); ++j)
            out.values[j * d1.size() + k] = conj.y[j];
    }
    return out;
}

double biconjugate_gap(const SampledFn& g) {
    const SampledFn conj = fenchel_transform(g);
    const SampledFn back = fenchel_transform(conj, g.x);
    double gap = 0.0;
    for (std::size_t i = 0; i < g.y.size(); ++i)
        gap = std::max(gap, std::fabs(back.y[i] - g.y[i]));
    return gap;
}

BetaFunction beta_from_alpha(const EffectiveHamiltonian& alpha,
                             const std::vector<double>& h_grid) {
    SampledFn a{alpha.p, alpha.value};
    const auto hull = lower_hull(a);
    check_dual(h_grid);
    BetaFunction beta;
    beta.h = h_grid;
    beta.values.resize(h_grid.size());
    beta.sub_lo.resize(h_grid.size());
    beta.sub_hi.resize(h_grid.size());
    std::size_t j = 0;
    for (std::size_t k = 0; k < h_grid.size(); ++k) {
        const double v = h_grid[k];
        while (j + 1 < hull.size()) {
            const std::size_t lo = hull[j], hi = hull[j + 1];
            const double slope = (a.y[hi] - a.y[lo]) / (a.x[hi] - a.x[lo]);
            if (slope >= v) break;
            ++j;
        }
        const std::size_t i = hull[j];
        beta.values[k] = v * a.x[i] - a.y[i];
        // the subdifferential of beta at v is the argmax set in p
        beta.sub_lo[k] = a.x[i];
        beta.sub_hi[k] = a.x[i];
        if (j + 1 < hull.size()) {
            const std::size_t hi = hull[j + 1];
            const double slope = (a.y[hi] - a.y[i]) / (a.x[hi] - a.x[i]);
            if (std::fabs(slope - v) <= 1e-12) beta.sub_hi[k] = a.x[hi];
        }
    }
    beta.transform_gap = biconjugate_gap(beta.samples());
    return beta;
}

BetaZero beta_zero(const EffectiveHamiltonian& alpha) {
    if (alpha.value.empty()) throw EmptyInput("empty alpha samples");
    std::size_t imin = 0;
    for (std::size_t i = 1; i < alpha.value.size(); ++i)
        if (alpha.value[i] < alpha.value[imin]) imin = i;
    if (imin == 0 || imin + 1 == alpha.value.size())
        throw MinimumOnBoundary("enlarge the p-range: inf attained on the boundary");
    double vmin = alpha.value[imin];
    const double y0 = alpha.value[imin - 1], y1 = vmin, y2 = alpha.value[imin + 1];
    const double den = y0 - 2.0 * y1 + y2;
    // refine only at a strict interior minimum; plateau edges keep the node
    if (den > 1e-14 && y0 > y1 && y2 > y1) {
        // vertex of the interpolating parabola; flat plateaus keep the node value
        const double t = 0.5 * (y0 - y2) / den;
        if (std::fabs(t) <= 1.0)
            vmin = y1 - 0.25 * (y0 - y2) * t;
    }
    return {-vmin, alpha.max_gap};
}

}  // namespace homog
