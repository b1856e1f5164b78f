#pragma once

#include <string>

#include "homog/cell.hpp"
#include "homog/metrics.hpp"

namespace homog {

// Plateau bump gamma(q): C on the cube U_delta, c outside U_{2delta},
// smooth monotone transition in between.
struct BumpProfile {
    int n{1};
    double delta{0.25};
    double C{10.0};
    double c{0.05};
    int smooth_exponent{5};
};

// Analytic plateau field; throws DeltaTooLarge for delta >= 1/3.
ScalarFieldPtr bump_gamma_field(const BumpProfile& profile);

// Grid samples of the plateau field with the profile invariants verified
// on the nodes.
PeriodicField make_gamma_bump(const BumpProfile& profile, const TorusGrid& grid);

// The bump Hamiltonian gamma(q) * (|p|^2 - 1).
SpecPtr make_bump_spec(const BumpProfile& profile);

// k = integral of (1 - |p|^2) over the unit ball = 2 V_n / (n + 2).
double unit_ball_moment(int n);
double unit_ball_moment_quadrature(int n);  // independent cross-check

// Analytic bound [delta^n C + c(1 - 2^n delta^n)] * k for |Cal|.
double calabi_lower_bound_counterexample(const BumpProfile& profile);

// sup_q -H(q, p + df(q)) for the linear test corrector f = <u - p, q>
// cut off outside U_{2delta}; an upper bound for -Hbar(p).
double test_lagrangian_bound(const HamiltonianSpec& spec, const BumpProfile& profile,
                             double p, int grid_samples = 4096);

struct CounterexampleCertificate {
    BumpProfile parameters;
    double gamma_inf{0.0};
    double gamma_inf_upper{0.0};  // with all certification gaps added
    double gamma_gap{0.0};
    double oracle_disagreement{0.0};  // minimax vs quadrature on the p grid
    double test_lagrangian{0.0};      // bound at p = 0
    double calabi{0.0};
    double calabi_analytic_bound{0.0};
    double hofer_lower{0.0};
    double hofer_upper{0.0};
    double beta0{0.0};
    bool sufficiency{false};  // c < delta^n * C * k / V_n
    double margin{0.0};       // hofer_lower - gamma_inf_upper
    bool verdict{false};
    bool answer_flag{false};  // hofer_lower > beta0
    std::string gamma_provenance;
};

// Assembles the full strict-inequality certificate (n = 1).
// Throws SufficiencyViolated when the parameter inequality fails.
// `truncate_at_zero` reruns the pipeline on the compactly supported
// truncation of H at level 0.
CounterexampleCertificate verify_strict_inequality(const BumpProfile& profile,
                                                   const SolverConfig& solver = {},
                                                   bool truncate_at_zero = false);

}  // namespace homog
