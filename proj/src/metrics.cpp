#include "homog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homog/fenchel.hpp"
#include "homog/quadrature.hpp"

namespace homog {

std::string RegionSpec::name() const {
    if (kind == Kind::UnitBall) return "unit-ball";
    std::ostringstream os;
    os << "sublevel:" << r;
    return os.str();
}

double hofer_length(const HamiltonianSpec& spec) {
    try {
        return oscillation_support(spec).value;
    } catch (const UnboundedRegion&) {
        throw NotCompactlySupported(
            "spec does not become constant in the fiber; truncate it first");
    }
}

namespace {

// Fiber minimum location by golden-section search; fibers are convex.
double fiber_argmin_1d(const HamiltonianSpec& spec, const Vec& q, double lo,
                       double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval_h(spec, q, Vec(x1)), f2 = eval_h(spec, q, Vec(x2));
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = eval_h(spec, q, Vec(x1));
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = eval_h(spec, q, Vec(x2));
        }
    }
    return 0.5 * (a + b);
}

// Root of H(q,.) = level on [a,b] with H(a) <= level <= H(b) (or reversed).
double fiber_root_1d(const HamiltonianSpec& spec, const Vec& q, double level,
                     double a, double b) {
    double fa = eval_h(spec, q, Vec(a)) - level;
    for (int it = 0; it < 200 && std::fabs(b - a) > 1e-13; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = eval_h(spec, q, Vec(mid)) - level;
        if ((fa <= 0.0) == (fm <= 0.0)) { a = mid; fa = fm; }
        else b = mid;
    }
    return 0.5 * (a + b);
}

// [-B, B] with H(q, +-B) >= level; superlinearity makes this terminate.
double fiber_bracket_1d(const HamiltonianSpec& spec, const Vec& q, double level) {
    double B = 1.0;
    for (int it = 0; it < 60; ++it) {
        if (eval_h(spec, q, Vec(B)) >= level && eval_h(spec, q, Vec(-B)) >= level)
            return B;
        B *= 2.0;
    }
    throw UnboundedRegion("sublevel set is fiber-unbounded");
}

double calabi_inner_1d(const HamiltonianSpec& spec, double q,
                       const RegionSpec& region, double rel_tol) {
    const Vec qq(q);
    auto h = [&](double p) { return eval_h(spec, qq, Vec(p)); };
    if (region.kind == RegionSpec::Kind::UnitBall)
        return integrate(h, -1.0, 1.0, rel_tol, 1e-13);
    const double B = fiber_bracket_1d(spec, qq, region.r + 1.0);
    const double pmin = fiber_argmin_1d(spec, qq, -B, B);
    if (eval_h(spec, qq, Vec(pmin)) >= region.r) return 0.0;
    const double lo = fiber_root_1d(spec, qq, region.r, -B, pmin);
    const double hi = fiber_root_1d(spec, qq, region.r, B, pmin);
    return integrate(h, lo, hi, rel_tol, 1e-13);
}

}  // namespace

double calabi_invariant(const HamiltonianSpec& spec, const RegionSpec& region,
                        double rel_tol) {
    const int n = spec.dim();
    if (n == 1) {
        auto inner = [&](double q) { return calabi_inner_1d(spec, q, region, rel_tol); };
        return integrate(inner, 0.0, 1.0, rel_tol, 1e-12);
    }
    if (region.kind != RegionSpec::Kind::UnitBall)
        throw Error("2D Calabi integrals are supported on the unit ball only");
    // polar fiber coordinates, nested adaptive passes
    auto over_q = [&](double q0, double q1) {
        const Vec q(q0, q1);
        auto over_rho = [&](double rho) {
            auto over_theta = [&](double th) {
                return eval_h(spec, q, Vec(rho * std::cos(th), rho * std::sin(th)));
            };
            return rho * integrate(over_theta, 0.0, 2.0 * M_PI, rel_tol * 10, 1e-11);
        };
        return integrate(over_rho, 0.0, 1.0, rel_tol * 10, 1e-11);
    };
    auto outer = [&](double q0) {
        auto inner = [&](double q1) { return over_q(q0, q1); };
        return integrate(inner, 0.0, 1.0, rel_tol * 10, 1e-11);
    };
    return integrate(outer, 0.0, 1.0, rel_tol * 10, 1e-11);
}

double hofer_lower_bound_calabi(double cal, int n) {
    if (n != 1 && n != 2) throw Error("n must be 1 or 2");
    const double vol = (n == 1) ? 2.0 : M_PI;
    return std::fabs(cal) / vol;
}

CalabiLimitReport calabi_extension_limit(const HamiltonianSpec& spec,
                                         std::vector<double> eps_sequence) {
    if (spec.dim() != 1)
        throw Error("extension limits are implemented for n=1");
    if (eps_sequence.empty())
        for (int k = 0; k <= 6; ++k) eps_sequence.push_back(0.1 * std::pow(2.0, -k));

    // the spec must vanish on the unit sphere for the extension to make sense
    for (int i = 0; i < 64; ++i) {
        const Vec q(i / 64.0);
        if (std::fabs(eval_h(spec, q, Vec(1.0))) > 1e-9 ||
            std::fabs(eval_h(spec, q, Vec(-1.0))) > 1e-9)
            throw ExtensionNotVanishing("spec does not vanish on the unit sphere");
    }

    CalabiLimitReport rep;
    rep.eps = eps_sequence;
    rep.calabi = calabi_invariant(spec, RegionSpec::unit_ball());

    for (double eps : eps_sequence) {
        const TruncationProfile f(0.0, eps);
        // H_eps must stay within [0, eps] outside the ball
        for (int i = 0; i < 64; ++i) {
            const Vec q(i / 64.0);
            for (double p : {1.0, 1.1, 1.5, 2.0, 4.0}) {
                const double he = f(eval_h(spec, q, Vec(p)));
                if (he < -1e-12 || he > eps + 1e-12)
                    throw ExtensionNotVanishing("extension exceeds eps outside the ball");
            }
        }
        auto inner = [&](double q) {
            const Vec qq(q);
            double R = 1.0;
            for (int it = 0; it < 60; ++it) {
                if (eval_h(spec, qq, Vec(R)) >= eps && eval_h(spec, qq, Vec(-R)) >= eps)
                    break;
                R *= 2.0;
            }
            auto h = [&](double p) { return f(eval_h(spec, qq, Vec(p))); };
            return integrate(h, -R, R, 1e-9, 1e-13);
        };
        rep.calabi_eps.push_back(integrate(inner, 0.0, 1.0, 1e-8, 1e-12));
        rep.differences.push_back(std::fabs(rep.calabi_eps.back() - rep.calabi));
    }

    rep.monotone = true;
    for (std::size_t k = 1; k < rep.differences.size(); ++k)
        if (rep.differences[k] > rep.differences[k - 1] + 1e-15) rep.monotone = false;
    rep.converged = !rep.differences.empty() && rep.differences.back() <= 1e-3;

    rep.extrapolated = rep.calabi_eps.empty() ? rep.calabi : rep.calabi_eps.back();
    const std::size_t m = rep.calabi_eps.size();
    if (m >= 3) {
        const double a0 = rep.calabi_eps[m - 3], a1 = rep.calabi_eps[m - 2],
                     a2 = rep.calabi_eps[m - 1];
        const double num = a0 - a1, den = a1 - a2;
        if (std::fabs(den) > 1e-300) {
            const double rho = num / den;
            if (rho > 1.0) rep.extrapolated = a2 + (a2 - a1) / (rho - 1.0);
        }
    }
    return rep;
}

CPair c_pm_asymptotic(const EffectiveHamiltonian& effH, const RegionSpec& region) {
    if (effH.value.empty()) throw EmptyInput("empty effective Hamiltonian");
    const double cap = (region.kind == RegionSpec::Kind::Sublevel) ? region.r : 0.0;
    double vmax = effH.value[0], vmin = effH.value[0];
    for (double v : effH.value) {
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    if (vmax < cap - 1e-12)
        throw PlateauNotReached("p-range too small: the clipped sup never reaches the cap");
    return {cap, std::min(vmin, cap), effH.max_gap};
}

double gamma_asymptotic(const EffectiveHamiltonian& effH, const RegionSpec& region) {
    const CPair c = c_pm_asymptotic(effH, region);
    return c.c_plus - c.c_minus;
}

MetricsReport compute_metrics(const HamiltonianSpec& spec, const RegionSpec& region,
                              const MetricsConfig& cfg) {
    MetricsReport rep;
    rep.region = region.name();
    const int n = spec.dim();
    if (n != 1) throw Error("metrics reports are implemented for n=1");

    const double cap = (region.kind == RegionSpec::Kind::Sublevel) ? region.r : 0.0;

    // sample H-bar on a symmetric grid wide enough to see the plateau
    double w = (cfg.p_halfwidth > 0.0) ? cfg.p_halfwidth : 2.0;
    EffectiveHamiltonian effH;
    for (int attempt = 0;; ++attempt) {
        effH = effective_on_grid(spec, linspace(-w, w, cfg.p_samples), cfg.method,
                                 cfg.solver);
        if (effH.max_value() >= cap - 1e-12) break;
        if (cfg.p_halfwidth > 0.0 || attempt >= 6)
            throw PlateauNotReached("effective Hamiltonian never reaches the cap");
        w *= 2.0;
    }
    rep.effective = effH;

    if (region.kind == RegionSpec::Kind::Sublevel &&
        !(region.r > effH.min_value()))
        throw Error("sublevel energy must exceed the infimum of the effective Hamiltonian");

    const CPair c = c_pm_asymptotic(effH, region);
    rep.c_plus_inf = c.c_plus;
    rep.c_minus_inf = c.c_minus;
    rep.gamma_inf = c.c_plus - c.c_minus;
    rep.beta0 = beta_zero(effH).value;

    auto owned = std::make_shared<HamiltonianSpec>(spec);
    const TruncationProfile profile(cap, cfg.trunc_eps, cfg.trunc_shape);
    rep.hofer_upper = hofer_length(*apply_truncation(owned, profile));

    rep.calabi = calabi_invariant(spec, region);
    rep.hofer_lower = hofer_lower_bound_calabi(rep.calabi, n);

    rep.eps_sequence = {cfg.trunc_eps};
    if (region.kind == RegionSpec::Kind::UnitBall && cfg.run_extension_limit) {
        const CalabiLimitReport lim = calabi_extension_limit(spec);
        rep.eps_sequence = lim.eps;
        rep.identity_residuals["calabi_extension_final_diff"] =
            lim.differences.empty() ? 0.0 : lim.differences.back();
    }

    if (region.kind == RegionSpec::Kind::Sublevel)
        rep.identity_residuals["gamma_vs_r_plus_beta0"] =
            std::fabs(rep.gamma_inf - (region.r + rep.beta0));
    else
        rep.identity_residuals["gamma_vs_beta0"] =
            std::fabs(rep.gamma_inf - rep.beta0);
    rep.identity_residuals["ordering_slack"] = rep.hofer_upper - rep.gamma_inf;
    return rep;
}

}  // namespace homog
