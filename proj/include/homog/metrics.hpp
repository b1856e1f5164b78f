#pragma once

#include <map>
#include <string>
#include <vector>

#include "homog/cell.hpp"
#include "homog/truncation.hpp"

namespace homog {

// Integration / truncation domain.
struct RegionSpec {
    enum class Kind { Sublevel, UnitBall };
    Kind kind{Kind::UnitBall};
    double r{0.0};  // Sublevel energy

    static RegionSpec sublevel(double r) { return {Kind::Sublevel, r}; }
    static RegionSpec unit_ball() { return {Kind::UnitBall, 0.0}; }

    std::string name() const;
};

// Oscillation of a compactly supported autonomous spec over its support;
// upper bound for the asymptotic Hofer distance.
double hofer_length(const HamiltonianSpec& spec);

// Phase-space integral of H over the region (omega^n normalization, no n!).
double calabi_invariant(const HamiltonianSpec& spec, const RegionSpec& region,
                        double rel_tol = 1e-8);

// |cal| / Vol(B*T^n), V_1 = 2, V_2 = pi.
double hofer_lower_bound_calabi(double cal, int n);

struct CalabiLimitReport {
    std::vector<double> eps;
    std::vector<double> calabi_eps;
    std::vector<double> differences;  // |Cal(H_eps) - Cal(H)|
    double calabi{0.0};               // Cal over the unit ball
    double extrapolated{0.0};         // Richardson limit of the last three terms
    bool monotone{false};
    bool converged{false};            // final difference <= 1e-3
};

// Builds fiber-radial extensions H_eps = f_{0,eps}(H) of a spec vanishing
// on the unit sphere and tracks Cal(H_eps) -> Cal(H). Empty sequence means
// the default 0.1 * 2^-k, k = 0..6.
CalabiLimitReport calabi_extension_limit(const HamiltonianSpec& spec,
                                         std::vector<double> eps_sequence = {});

struct CPair {
    double c_plus;
    double c_minus;
    double gap;  // certification gap inherited from the samples
};

// Asymptotic spectral invariants of the region-truncated spec, read off a
// raw effective Hamiltonian: values are clipped at r (Sublevel) or 0
// (UnitBall, where c_+ vanishes by the boundary argument).
CPair c_pm_asymptotic(const EffectiveHamiltonian& effH, const RegionSpec& region);

double gamma_asymptotic(const EffectiveHamiltonian& effH, const RegionSpec& region);

struct MetricsReport {
    std::string region;
    std::vector<double> eps_sequence;
    double calabi{0.0};
    double hofer_lower{0.0};
    double hofer_upper{0.0};
    double c_plus_inf{0.0};
    double c_minus_inf{0.0};
    double gamma_inf{0.0};
    double beta0{0.0};
    std::map<std::string, double> identity_residuals;
    std::string volume_normalization{"omega^n"};
    EffectiveHamiltonian effective;
};

struct MetricsConfig {
    HomogMethod method{HomogMethod::Quadrature};
    SolverConfig solver{};
    int p_samples{129};
    double p_halfwidth{0.0};  // 0 = grow until the plateau is covered
    double trunc_eps{1e-3};
    TruncShape trunc_shape{TruncShape::Quintic};
    bool run_extension_limit{false};
};

MetricsReport compute_metrics(const HamiltonianSpec& spec, const RegionSpec& region,
                              const MetricsConfig& cfg = {});

}  // namespace homog
