// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "homog/counterexample.hpp"
#include "homog/fenchel.hpp"
#include "homog/metrics.hpp"

using namespace homog;

namespace {

struct Gate {
    int failures = 0;
    int index = 0;

    void run(const std::string& label, double budget_seconds,
             const std::function<bool(std::string&)>& body) {
        ++index;
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (budget_seconds > 0.0 && dt > budget_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over budget");
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %02d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL",
                    index, label.c_str(), dt, detail.empty() ? "" : " -- ",
                    detail.c_str());
        std::fflush(stdout);
    }
};

SpecPtr pendulum() { return HamiltonianSpec::mechanical(cosine_field(1, 1.0, 1)); }
SpecPtr integrable() { return HamiltonianSpec::mechanical(constant_field(1, 0.0)); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

int main() {
    Gate gate;

    gate.run("integrable effective hamiltonian and beta", 5.0, [](std::string& d) {
        const auto eff = effective_on_grid(*integrable(), linspace(-3.0, 3.0, 65),
                                           HomogMethod::Quadrature);
        double err_alpha = 0.0;
        for (std::size_t i = 0; i < eff.p.size(); ++i)
            err_alpha = std::max(err_alpha,
                                 std::fabs(eff.value[i] - 0.5 * eff.p[i] * eff.p[i]));
        // the conjugate of a piecewise-linear interpolant carries an
        // O(spacing^2) bias, so beta gets a finer alpha grid
        const auto eff_fine = effective_on_grid(
            *integrable(), linspace(-3.0, 3.0, 513), HomogMethod::Quadrature);
        const auto beta = beta_from_alpha(eff_fine, linspace(-2.0, 2.0, 41));
        double err_beta = 0.0;
        for (std::size_t i = 0; i < beta.h.size(); ++i)
            err_beta = std::max(err_beta,
                                std::fabs(beta.values[i] - 0.5 * beta.h[i] * beta.h[i]));
        d = "alpha err " + std::to_string(err_alpha) + ", beta err " +
            std::to_string(err_beta);
        return err_alpha <= 1e-6 && err_beta <= 1e-4;
    });

    gate.run("pendulum flat part, edge, and beta(0)", 60.0, [](std::string& d) {
        auto spec = pendulum();
        const double quad0 = homogenize_1d_quadrature(*spec, 0.0);
        const auto mini0 = homogenize_minimax(*spec, Vec(0.0));
        const double edge = quadrature_flat_edge(*spec);
        const auto eff = effective_on_grid(*spec, linspace(-2.0, 2.0, 65),
                                           HomogMethod::Quadrature);
        const double b0 = beta_zero(eff).value;
        const double b0_aubry = aubry_beta_estimate(*spec, 0.0, 500, 0.05);
        d = "quad " + std::to_string(quad0) + ", minimax " +
            std::to_string(mini0.value) + ", edge " + std::to_string(edge) +
            ", beta0 " + std::to_string(b0) + ", aubry " + std::to_string(b0_aubry);
        return std::fabs(quad0 - 1.0) <= 1e-6 && std::fabs(mini0.value - 1.0) <= 1e-2 &&
               std::fabs(edge - 4.0 / M_PI) <= 1e-2 && std::fabs(b0 + 1.0) <= 1e-2 &&
               std::fabs(b0_aubry + 1.0) <= 1e-2;
    });

    gate.run("three-oracle agreement on 33 fiber samples", 0.0, [](std::string& d) {
        struct Case {
            SpecPtr spec;
            LaxOleinikConfig lo;
        };
        const std::vector<Case> cases = {
            {integrable(), {256, 100.0, 0.45}},
            {pendulum(), {256, 100.0, 0.45}},
            {make_bump_spec(BumpProfile{}), {128, 50.0, 0.45}},
        };
        double worst = 0.0;
        for (const auto& c : cases) {
            const auto grid = linspace(-1.5, 1.5, 33);
            const auto q = effective_on_grid(*c.spec, grid, HomogMethod::Quadrature);
            const auto m = effective_on_grid(*c.spec, grid, HomogMethod::Minimax);
            std::vector<double> lo(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                lo[i] = homogenize_laxoleinik(*c.spec, Vec(grid[i]), c.lo);
            worst = std::max(worst, max_abs_diff(q.value, m.value));
            worst = std::max(worst, max_abs_diff(q.value, lo));
            worst = std::max(worst, max_abs_diff(m.value, lo));
        }
        d = "worst pairwise disagreement " + std::to_string(worst);
        return worst <= 1e-2;
    });

    gate.run("gamma identity on sublevel sets", 0.0, [](std::string& d) {
        const auto pen = compute_metrics(*pendulum(), RegionSpec::sublevel(2.0));
        const double r_pen = pen.identity_residuals.at("gamma_vs_r_plus_beta0");
        MetricsConfig cfg;
        cfg.p_halfwidth = 3.0;
        const auto integ =
            compute_metrics(*integrable(), RegionSpec::sublevel(1.0), cfg);
        const double r_int = integ.identity_residuals.at("gamma_vs_r_plus_beta0");
        d = "pendulum residual " + std::to_string(r_pen) + ", integrable residual " +
            std::to_string(r_int);
        return r_pen <= 2e-2 && r_int <= 1e-6;
    });

    gate.run("homogenization commutes with truncation", 0.0, [](std::string& d) {
        double worst = 0.0;
        {
            auto spec = pendulum();
            const TruncationProfile f(2.0, 0.1);
            auto trunc = apply_truncation(spec, f);
            for (double p : linspace(-3.0, 3.0, 13)) {
                const double clipped = f(homogenize_1d_quadrature(*spec, p));
                const auto res = homogenize_minimax(*trunc, Vec(p));
                worst = std::max(worst, std::fabs(res.value - clipped) - res.gap);
            }
        }
        {
            auto spec = make_bump_spec(BumpProfile{});
            const TruncationProfile f(0.0, 1e-3);
            auto trunc = apply_truncation(spec, f);
            for (double p : linspace(-1.5, 1.5, 13)) {
                const double clipped = f(homogenize_1d_quadrature(*spec, p));
                const auto res = homogenize_minimax(*trunc, Vec(p));
                worst = std::max(worst, std::fabs(res.value - clipped) - res.gap);
            }
        }
        d = "worst residual beyond gap " + std::to_string(worst);
        return worst <= 2e-2;
    });

    gate.run("monotonicity and shear invariance", 0.0, [](std::string& d) {
        double mono_slack = 0.0, shear_err = 0.0;
        auto lo = HamiltonianSpec::fiber_only(1, 1.0, -1.0);  // 0.5 p^2 - 1
        auto hi = pendulum();
        for (double p : {0.0, 1.0, 2.0}) {
            const auto a = homogenize_minimax(*lo, Vec(p));
            const auto b = homogenize_minimax(*hi, Vec(p));
            mono_slack = std::max(mono_slack, a.value - b.value - (a.gap + b.gap));
        }
        auto sheared = HamiltonianSpec::sheared(hi, cosine_field(1, 0.4, 2));
        for (double p : {0.0, 1.5, 2.0}) {
            const auto a = homogenize_minimax(*sheared, Vec(p));
            const auto b = homogenize_minimax(*hi, Vec(p));
            shear_err =
                std::max(shear_err, std::fabs(a.value - b.value) - (a.gap + b.gap));
        }
        d = "monotonicity slack " + std::to_string(mono_slack) + ", shear excess " +
            std::to_string(shear_err);
        return mono_slack <= 0.0 && shear_err <= 0.0;
    });

    gate.run("strict-inequality certificate", 120.0, [](std::string& d) {
        const auto cert = verify_strict_inequality(BumpProfile{});
        d = "gamma_inf_upper " + std::to_string(cert.gamma_inf_upper) +
            ", hofer_lower " + std::to_string(cert.hofer_lower) + ", margin " +
            std::to_string(cert.margin) + ", beta0 " + std::to_string(cert.beta0);
        return cert.verdict && cert.answer_flag && cert.gamma_inf_upper <= 0.052 &&
               cert.hofer_lower >= 1.683 && cert.margin >= 1.6 &&
               std::fabs(cert.beta0 - 0.05) <= 1e-3;
    });

    gate.run("calabi extension limit", 0.0, [](std::string& d) {
        const auto rep = calabi_extension_limit(*make_bump_spec(BumpProfile{}));
        d = "final difference " + std::to_string(rep.differences.back());
        return rep.monotone && rep.converged && rep.differences.back() <= 1e-3;
    });

    gate.run("fenchel transform against the brute reference", 0.0,
             [](std::string& d) {
                 std::mt19937_64 rng(23);
                 std::uniform_real_distribution<double> ua(0.1, 2.0), ub(-1.0, 1.0),
                     un(-0.05, 0.05);
                 double worst = 0.0, worst_gap = 0.0;
                 for (int trial = 0; trial < 50; ++trial) {
                     SampledFn g;
                     const double a = ua(rng), b = ub(rng), c = ub(rng);
                     for (int i = 0; i < 101; ++i) {
                         const double x = -3.0 + 6.0 * i / 100.0;
                         g.x.push_back(x);
                         g.y.push_back(a * x * x + b * x + c + un(rng));
                     }
                     std::vector<double> dual;
                     for (int i = 0; i <= 64; ++i) dual.push_back(-4.0 + 8.0 * i / 64.0);
                     worst = std::max(worst, max_abs_diff(fenchel_transform(g, dual).y,
                                                          fenchel_brute(g, dual).y));
                     // biconjugate exactness on the convex samples (no noise)
                     SampledFn h;
                     for (int i = 0; i < 101; ++i) {
                         h.x.push_back(g.x[i]);
                         h.y.push_back(a * g.x[i] * g.x[i] + b * g.x[i] + c);
                     }
                     worst_gap = std::max(worst_gap, biconjugate_gap(h));
                 }
                 d = "worst transform diff " + std::to_string(worst) +
                     ", worst biconjugate gap " + std::to_string(worst_gap);
                 return worst <= 1e-12 && worst_gap <= 1e-8;
             });

    gate.run("metric ordering and truncation-shape independence", 0.0,
             [](std::string& d) {
                 auto spec = make_bump_spec(BumpProfile{});
                 MetricsConfig quintic, cubic;
                 cubic.trunc_shape = TruncShape::Cubic;
                 const auto a = compute_metrics(*spec, RegionSpec::unit_ball(), quintic);
                 const auto b = compute_metrics(*spec, RegionSpec::unit_ball(), cubic);
                 const double shape_diff = std::fabs(a.hofer_upper - b.hofer_upper);
                 const bool ordering = a.gamma_inf <= a.hofer_upper + 1e-9 &&
                                       a.hofer_lower <= a.hofer_upper + 1e-9 &&
                                       a.identity_residuals.at("ordering_slack") >= -1e-9;
                 d = "shape diff " + std::to_string(shape_diff) + ", ordering " +
                     (ordering ? "ok" : "violated");
                 return ordering && shape_diff <= 2.0 * quintic.trunc_eps + 1e-3;
             });

    std::printf("%d/10 acceptance criteria passed\n", 10 - gate.failures);
    return gate.failures == 0 ? 0 : 1;
}
