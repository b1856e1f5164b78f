#pragma once

#include <vector>

#include "homog/cell.hpp"

namespace homog {

// Grid function y_i = g(x_i), x strictly increasing.
struct SampledFn {
    std::vector<double> x;
    std::vector<double> y;
};

// Throws EmptyInput / NonUniformGrid on bad abscissae or non-finite values.
void validate_samples(const SampledFn& g);

// Indices of the lower convex hull of the sample set, left to right.
std::vector<std::size_t> lower_hull(const SampledFn& g);

// Discrete conjugate g*(v) = max_i (v*x_i - y_i) on a sorted dual grid.
// Linear time via the hull and a two-pointer sweep.
SampledFn fenchel_transform(const SampledFn& g, const std::vector<double>& dual_grid);

// Conjugate sampled at the hull's own slope breakpoints; this grid is exact
// for the round trip, conjugating twice reproduces the convex hull values.
SampledFn fenchel_transform(const SampledFn& g);

// O(N^2) reference path, no hull.
SampledFn fenchel_brute(const SampledFn& g, const std::vector<double>& dual_grid);

// Separable 2D conjugate by axis-wise 1D sweeps.
struct Sampled2D {
    std::vector<double> x0, x1;
    std::vector<double> values;  // row-major, x0 outer
};
Sampled2D fenchel_transform_2d(const Sampled2D& g, const std::vector<double>& d0,
                               const std::vector<double>& d1);

// max |g** - g| over the samples; zero (to rounding) iff g is convex.
double biconjugate_gap(const SampledFn& g);

// Effective Hamiltonian read as the alpha function on the cohomology grid.
struct BetaFunction {
    std::vector<double> h;
    std::vector<double> values;
    std::vector<double> sub_lo;  // one-sided slopes bracketing the
    std::vector<double> sub_hi;  // subdifferential at each sample
    double transform_gap{0.0};   // biconjugate diagnostic

    SampledFn samples() const { return {h, values}; }
};

BetaFunction beta_from_alpha(const EffectiveHamiltonian& alpha,
                             const std::vector<double>& h_grid);

struct BetaZero {
    double value;
    double gap;  // certification gap inherited from the alpha samples
};

// -min of the alpha samples, refined by a quadratic fit around the discrete
// argmin. Throws MinimumOnBoundary when the argmin sits on the p-range edge.
BetaZero beta_zero(const EffectiveHamiltonian& alpha);

// Discrete action minimization over M-periodic configurations with winding
// w = round(h*M*tau); upper estimate of beta(h) with O(tau^2) bias. 1D
// mechanical specs only.
double aubry_beta_estimate(const HamiltonianSpec& spec, double h, int M,
                           double tau, int restarts = 20,
                           unsigned long long seed = 42);

}  // namespace homog
