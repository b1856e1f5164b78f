#include "homog/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "homog/fenchel.hpp"
#include "homog/quadrature.hpp"

namespace homog {

namespace {

void check_profile(const BumpProfile& profile) {
    if (profile.n != 1 && profile.n != 2) throw Error("bump requires n in {1,2}");
    if (!(profile.delta > 0.0) || profile.delta >= 1.0 / 3.0)
        throw DeltaTooLarge("bump needs 0 < delta < 1/3");
    if (!(profile.C > profile.c) || !(profile.c > 0.0))
        throw Error("bump needs C > c > 0");
}

double ball_volume(int n) { return n == 1 ? 2.0 : M_PI; }

}  // namespace

ScalarFieldPtr bump_gamma_field(const BumpProfile& profile) {
    check_profile(profile);
    return plateau_field(profile.n, profile.delta, profile.C, profile.c,
                         profile.smooth_exponent);
}

PeriodicField make_gamma_bump(const BumpProfile& profile, const TorusGrid& grid) {
    if (grid.n != profile.n) throw Error("grid/profile dimension mismatch");
    const ScalarFieldPtr gamma = bump_gamma_field(profile);
    PeriodicField field =
        PeriodicField::sample(grid, [&](const Vec& q) { return gamma->value(q); });
    const double half = 0.5;
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        const Vec q = grid.node(k);
        double dist = 0.0;  // sup-norm distance from the cell center
        for (int i = 0; i < grid.n; ++i)
            dist = std::max(dist, std::fabs(wrap_half(q[i] - half)));
        const double v = field[k];
        if (v < profile.c - 1e-12 || v > profile.C + 1e-12)
            throw Error("bump field leaves [c, C]");
        if (dist <= 0.5 * profile.delta + 1e-12 && std::fabs(v - profile.C) > 1e-12)
            throw Error("bump field is not C on the plateau");
        if (dist >= profile.delta + 1e-12 && std::fabs(v - profile.c) > 1e-12)
            throw Error("bump field is not c outside the transition cube");
    }
    return field;
}

SpecPtr make_bump_spec(const BumpProfile& profile) {
    return HamiltonianSpec::product(bump_gamma_field(profile));
}

double unit_ball_moment(int n) {
    if (n != 1 && n != 2) throw Error("n must be 1 or 2");
    return 2.0 * ball_volume(n) / (n + 2);
}

double unit_ball_moment_quadrature(int n) {
    if (n == 1)
        return integrate([](double p) { return 1.0 - p * p; }, -1.0, 1.0, 1e-12);
    // radial: integral over the disc of (1 - rho^2), 2*pi * rho weight
    return 2.0 * M_PI *
           integrate([](double r) { return r * (1.0 - r * r); }, 0.0, 1.0, 1e-12);
}

double calabi_lower_bound_counterexample(const BumpProfile& profile) {
    if (profile.C == 0.0 && profile.c == 0.0) return 0.0;
    check_profile(profile);
    const double dn = std::pow(profile.delta, profile.n);
    const double mass = dn * profile.C +
                        profile.c * (1.0 - std::pow(2.0, profile.n) * dn);
    return mass * unit_ball_moment(profile.n);
}

double test_lagrangian_bound(const HamiltonianSpec& spec, const BumpProfile& profile,
                             double p, int grid_samples) {
    if (spec.dim() != 1 || profile.n != 1)
        throw Error("test-Lagrangian bound is implemented for n=1");
    check_profile(profile);
    const double d2 = profile.delta;                 // U_{2delta} half-width
    const double wc = std::min(0.5 * profile.delta,  // cutoff collar width
                               0.25 * (1.0 - 2.0 * profile.delta));
    if (d2 + wc >= 0.5 - 1e-12)
        throw CutoffOverlap("cutoff collar wraps around the torus");
    const double u = (p >= 0.0) ? 1.0 : -1.0;

    // chi == 1 on U_{2delta}, == 0 outside the collar; f = (u-p) q chi(q)
    auto chi = [&](double q, double& dchi) {
        const double dist = std::fabs(q - 0.5);
        if (dist <= d2) { dchi = 0.0; return 1.0; }
        if (dist >= d2 + wc) { dchi = 0.0; return 0.0; }
        const double t = (dist - d2) / wc;
        dchi = -smoothstep_deriv(1.0 - t, 5) / wc * ((q > 0.5) ? 1.0 : -1.0);
        return smoothstep(1.0 - t, 5);
    };

    double bound = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_samples; ++i) {
        const double q = double(i) / grid_samples;
        double dchi = 0.0;
        const double cq = chi(q, dchi);
        const double df = (u - p) * (cq + q * dchi);
        bound = std::max(bound, -eval_h(spec, Vec(q), Vec(p + df)));
    }
    return bound;
}

CounterexampleCertificate verify_strict_inequality(const BumpProfile& profile,
                                                   const SolverConfig& solver,
                                                   bool truncate_at_zero) {
    if (profile.n != 1) throw Error("the strict-inequality suite is 1D only");

    CounterexampleCertificate cert;
    cert.parameters = profile;

    // the parameter inequality is judged before the shape checks so that
    // degenerate C = c inputs report SufficiencyViolated, not a shape error
    const double k = unit_ball_moment(profile.n);
    const double vol = ball_volume(profile.n);
    const double threshold =
        std::pow(profile.delta, profile.n) * profile.C * k / vol;
    cert.sufficiency = profile.c < threshold;
    if (!cert.sufficiency)
        throw SufficiencyViolated("parameters fail c < delta^n C k / V_n");
    check_profile(profile);

    SpecPtr spec = make_bump_spec(profile);
    if (truncate_at_zero)
        spec = apply_truncation(spec, TruncationProfile(0.0, 1e-3));

    // H-bar on the fiber grid: oracle quadrature plus minimax cross-check
    const std::vector<double> p_grid = linspace(-1.5, 1.5, 33);
    const EffectiveHamiltonian eff_q =
        effective_on_grid(*spec, p_grid, HomogMethod::Quadrature, solver);
    const EffectiveHamiltonian eff_m =
        effective_on_grid(*spec, p_grid, HomogMethod::Minimax, solver);
    for (std::size_t i = 0; i < p_grid.size(); ++i)
        cert.oracle_disagreement = std::max(
            cert.oracle_disagreement, std::fabs(eff_q.value[i] - eff_m.value[i]));

    const RegionSpec region = RegionSpec::unit_ball();
    cert.gamma_inf = gamma_asymptotic(eff_q, region);
    const double quad_err = 1e-6;  // bisection + quadrature slack, conservative
    const double upper_quadrature = cert.gamma_inf + quad_err;
    const double upper_minimax = gamma_asymptotic(eff_m, region) + eff_m.max_gap;
    if (upper_quadrature <= upper_minimax) {
        cert.gamma_inf_upper = upper_quadrature;
        cert.gamma_gap = quad_err;
        cert.gamma_provenance = "quadrature oracle";
    } else {
        cert.gamma_inf_upper = upper_minimax;
        cert.gamma_gap = eff_m.max_gap;
        cert.gamma_provenance = "minimax";
    }

    cert.beta0 = beta_zero(eff_q).value;
    cert.test_lagrangian = test_lagrangian_bound(*spec, profile, 0.0);

    cert.calabi = calabi_invariant(*spec, region);
    cert.calabi_analytic_bound = calabi_lower_bound_counterexample(profile);
    cert.hofer_lower = hofer_lower_bound_calabi(
        std::max(std::fabs(cert.calabi), cert.calabi_analytic_bound), profile.n);
    cert.hofer_upper = hofer_length(
        *apply_truncation(make_bump_spec(profile), TruncationProfile(0.0, 1e-3)));

    cert.margin = cert.hofer_lower - cert.gamma_inf_upper;
    cert.verdict = cert.margin > quad_err;
    cert.answer_flag = cert.hofer_lower > cert.beta0 + quad_err;
    return cert;
}

}  // namespace homog
