#pragma once

#include <string>
#include <vector>

#include "homog/hamiltonian.hpp"
#include "homog/torus.hpp"

namespace homog {

// Mean-zero periodic corrector u together with its discrete differential
// du (forward differences), one array per axis.
struct CorrectorField {
    PeriodicField u;
    std::vector<std::vector<double>> du;

    static CorrectorField zero(TorusGrid grid);
    static CorrectorField from_field(PeriodicField u);
};

struct SolverConfig {
    double beta0 = 10.0;        // initial softmax temperature
    double beta_growth = 4.0;   // per-stage multiplier
    int stages = 6;             // 10 * 4^5 = 10240 >= 1e4
    int max_iters = 4000;       // per stage
    double tolerance = 5e-2;    // certification-gap target
    int grid_N = 256;           // corrector resolution, n=1
    int grid_N_2d = 64;         // corrector resolution, n=2
    bool direct_truncated = false;  // homogenize a truncated spec as-is
                                    // instead of clip-after-homogenize
};

struct MinimaxResult {
    double value;   // hard sup_q H(q, p+du) for the final corrector
    double gap;     // value - certified lower bound
    bool converged;
    CorrectorField corrector;
};

// inf over mean-zero u of sup over q of H(q, p+du(q)) via annealed
// log-sum-exp smoothing. Deterministic given the config.
MinimaxResult homogenize_minimax(const HamiltonianSpec& spec, const Vec& p,
                                 const SolverConfig& cfg = {},
                                 const CorrectorField* warm_start = nullptr);

// 1D level-set oracle: lambda0 = max_q min_p' H, P^+/-(lambda) the
// integrated fiber roots; returns lambda0 on the flat part and otherwise
// the unique level with P^(+/-)(lambda) = p (bisection to 1e-10).
double homogenize_1d_quadrature(const HamiltonianSpec& spec, double p);

// Edge of the flat part of the 1D effective Hamiltonian: P^+(lambda0).
double quadrature_flat_edge(const HamiltonianSpec& spec);

struct LaxOleinikConfig {
    int N = 512;
    double T = 200.0;
    double cfl = 0.45;
};

// Large-time rate of the evolutionary Hamilton-Jacobi equation
// u_t + H(q, p+Du) = 0, u(.,0)=0, monotone (local) Lax-Friedrichs march;
// returns -(u(T)-u(T/2))/(T/2) averaged over the base point.
double homogenize_laxoleinik(const HamiltonianSpec& spec, const Vec& p,
                             const LaxOleinikConfig& cfg = {});

enum class HomogMethod { Minimax, Quadrature, LaxOleinik };

std::string method_name(HomogMethod m);

struct EffectiveHamiltonian {
    std::vector<double> p;
    std::vector<double> value;
    std::vector<double> lower;
    std::vector<double> upper;
    std::string method;
    std::string spec_digest;
    double max_gap{0.0};
    bool convex_ok{true};  // convexity-along-lines audit within 2*gap

    double min_value() const;
    double max_value() const;
};

// Batch driver over a sorted 1D fiber grid; minimax samples warm-start
// from their left neighbor's corrector.
EffectiveHamiltonian effective_on_grid(const HamiltonianSpec& spec,
                                       const std::vector<double>& p_grid,
                                       HomogMethod method,
                                       const SolverConfig& cfg = {});

// Uniform grid helper: `count` samples on [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

// True iff max over nodes of H(q, p+du) <= h + margin with
// margin = (max fiber Lipschitz constant at the graph) * grid spacing.
bool subsolution_certificate(const HamiltonianSpec& spec, const Vec& p,
                             const CorrectorField& u, double h);

}  // namespace homog
