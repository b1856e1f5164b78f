#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "homog/counterexample.hpp"
#include "homog/fenchel.hpp"

using namespace homog;

namespace {

SpecPtr pendulum() { return HamiltonianSpec::mechanical(cosine_field(1, 1.0, 1)); }

SampledFn quadratic_samples(double a, double b, double c, int N, double lo,
                            double hi) {
    SampledFn g;
    for (int i = 0; i < N; ++i) {
        const double x = lo + (hi - lo) * i / (N - 1);
        g.x.push_back(x);
        g.y.push_back(a * x * x + b * x + c);
    }
    return g;
}

}  // namespace

TEST_CASE("sample validation") {
    CHECK_THROWS_AS(validate_samples({}), EmptyInput);
    CHECK_THROWS_AS(validate_samples({{0.0, 0.0}, {1.0}}), NonUniformGrid);
    CHECK_THROWS_AS(validate_samples({{0.0, 0.0}, {1.0, 2.0}}), NonUniformGrid);
    CHECK_THROWS_AS(validate_samples({{0.0, NAN}, {1.0, 2.0}}), NonUniformGrid);
    CHECK_NOTHROW(validate_samples({{0.0, 1.0}, {3.0, -2.0}}));
}

TEST_CASE("lower hull of a dented parabola") {
    SampledFn g = quadratic_samples(1.0, 0.0, 0.0, 9, -2.0, 2.0);
    g.y[4] += 3.0;  // lift the vertex out of the hull
    const auto hull = lower_hull(g);
    for (std::size_t k : hull) CHECK(k != 4);
    CHECK(hull.front() == 0);
    CHECK(hull.back() == 8);
}

TEST_CASE("conjugate of half p squared is half v squared") {
    const SampledFn g = quadratic_samples(0.5, 0.0, 0.0, 257, -4.0, 4.0);
    std::vector<double> dual;
    for (int i = 0; i <= 64; ++i) dual.push_back(-2.0 + 4.0 * i / 64.0);
    const SampledFn gs = fenchel_transform(g, dual);
    for (std::size_t i = 0; i < gs.x.size(); ++i)
        CHECK(gs.y[i] == doctest::Approx(0.5 * gs.x[i] * gs.x[i]).epsilon(1e-4));
}

TEST_CASE("fast transform agrees with the brute reference") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> ua(0.1, 2.0), ub(-1.0, 1.0),
        un(-0.05, 0.05);
    for (int trial = 0; trial < 50; ++trial) {
        SampledFn g = quadratic_samples(ua(rng), ub(rng), ub(rng), 101, -3.0, 3.0);
        for (double& y : g.y) y += un(rng);  // wiggle, keeps x sorted
        std::vector<double> dual;
        for (int i = 0; i <= 80; ++i) dual.push_back(-4.0 + 8.0 * i / 80.0);
        const SampledFn fast = fenchel_transform(g, dual);
        const SampledFn brute = fenchel_brute(g, dual);
        for (std::size_t i = 0; i < dual.size(); ++i)
            CHECK(std::fabs(fast.y[i] - brute.y[i]) <= 1e-12);
    }
}

TEST_CASE("biconjugate gap") {
    const SampledFn convex = quadratic_samples(1.0, -0.3, 0.2, 101, -2.0, 2.0);
    CHECK(biconjugate_gap(convex) <= 1e-8);

    SampledFn dented = convex;
    dented.y[50] += 0.1;
    const double gap = biconjugate_gap(dented);
    CHECK(gap > 0.05);
    CHECK(gap <= 0.1 + 1e-12);
}

TEST_CASE("two-dimensional separable conjugate") {
    Sampled2D g;
    for (int i = 0; i <= 32; ++i) g.x0.push_back(-2.0 + 4.0 * i / 32.0);
    g.x1 = g.x0;
    for (double a : g.x0)
        for (double b : g.x1) g.values.push_back(0.5 * (a * a + b * b));
    std::vector<double> dual;
    for (int i = 0; i <= 16; ++i) dual.push_back(-1.0 + 2.0 * i / 16.0);
    const Sampled2D gs = fenchel_transform_2d(g, dual, dual);
    for (std::size_t i = 0; i < dual.size(); ++i)
        for (std::size_t j = 0; j < dual.size(); ++j)
            CHECK(gs.values[i * dual.size() + j] ==
                  doctest::Approx(0.5 * (dual[i] * dual[i] + dual[j] * dual[j]))
                      .epsilon(1e-2));
}

TEST_CASE("beta from alpha for the integrable hamiltonian") {
    auto spec = HamiltonianSpec::mechanical(constant_field(1, 0.0));
    const auto alpha =
        effective_on_grid(*spec, linspace(-3.0, 3.0, 193), HomogMethod::Quadrature);
    const auto beta = beta_from_alpha(alpha, linspace(-2.0, 2.0, 41));
    CHECK(beta.transform_gap <= 1e-8);
    for (std::size_t i = 0; i < beta.h.size(); ++i) {
        CHECK(beta.values[i] ==
              doctest::Approx(0.5 * beta.h[i] * beta.h[i]).epsilon(1e-4));
        // Fenchel-Young with the recorded subdifferential midpoint
        const double p = 0.5 * (beta.sub_lo[i] + beta.sub_hi[i]);
        CHECK(beta.values[i] + 0.5 * p * p >=
              p * beta.h[i] - 1e-6);
        CHECK(beta.values[i] + 0.5 * p * p <=
              p * beta.h[i] + 1e-3);
    }
    // conjugating beta again returns alpha on the hull
    CHECK(biconjugate_gap(beta.samples()) <= 1e-8);
}

TEST_CASE("beta zero") {
    auto spec = pendulum();
    const auto alpha =
        effective_on_grid(*spec, linspace(-2.0, 2.0, 65), HomogMethod::Quadrature);
    const auto b0 = beta_zero(alpha);
    CHECK(b0.value == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(beta_from_alpha(alpha, {0.0}).values[0] ==
          doctest::Approx(-1.0).epsilon(1e-6));

    auto bump = make_bump_spec(BumpProfile{});
    const auto ab =
        effective_on_grid(*bump, linspace(-1.5, 1.5, 33), HomogMethod::Quadrature);
    CHECK(beta_zero(ab).value == doctest::Approx(0.05).epsilon(1e-6));

    // increasing alpha puts the argmin on the grid edge
    EffectiveHamiltonian ramp = alpha;
    for (std::size_t i = 0; i < ramp.value.size(); ++i) ramp.value[i] = ramp.p[i];
    CHECK_THROWS_AS(beta_zero(ramp), MinimumOnBoundary);
}

TEST_CASE("beta zero agrees with the transform at h = 0") {
    auto bump = make_bump_spec(BumpProfile{});
    const auto alpha =
        effective_on_grid(*bump, linspace(-1.5, 1.5, 65), HomogMethod::Quadrature);
    const double via_transform = beta_from_alpha(alpha, {0.0}).values[0];
    CHECK(beta_zero(alpha).value == doctest::Approx(via_transform).epsilon(1e-6));
}

TEST_CASE("aubry action estimates") {
    // V = 0: beta(h) = h^2/2
    auto flat = HamiltonianSpec::mechanical(constant_field(1, 0.0));
    CHECK(aubry_beta_estimate(*flat, 1.0, 500, 0.05) ==
          doctest::Approx(0.5).epsilon(1e-3));

    auto spec = pendulum();
    CHECK(aubry_beta_estimate(*spec, 0.0, 500, 0.05) ==
          doctest::Approx(-1.0).epsilon(1e-3));

    // duality cross-check at h = 2
    const auto alpha =
        effective_on_grid(*spec, linspace(-4.0, 4.0, 257), HomogMethod::Quadrature);
    const double dual = beta_from_alpha(alpha, {2.0}).values[0];
    const double aubry = aubry_beta_estimate(*spec, 2.0, 1600, 0.0125);
    CHECK(aubry == doctest::Approx(dual).epsilon(5e-3));
    // upper bound over the restricted class, up to the O(tau^2) action bias
    CHECK(aubry >= dual - 1e-3);

    CHECK_THROWS_AS(aubry_beta_estimate(*spec, 0.025, 256, 0.078125), InfeasibleWinding);
}
