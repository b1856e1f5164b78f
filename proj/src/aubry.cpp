#include <cmath>
#include <random>
#include <vector>

#include "homog/errors.hpp"
#include "homog/fenchel.hpp"
#include "homog/parallel.hpp"

namespace homog {

namespace {

struct ActionProblem {
    const ScalarField* V;
    int M;
    double tau;
    double w;  // winding, q_{i+M} = q_i + w

    double action(const std::vector<double>& q) const {
        double s = 0.0;
        for (int i = 0; i < M; ++i) {
            const double qn = (i + 1 < M) ? q[i + 1] : q[0] + w;
            const double d = qn - q[i];
            s += d * d / (2.0 * tau) - tau * V->value(Vec(q[i]));
        }
        return s / (M * tau);
    }

    void grad(const std::vector<double>& q, std::vector<double>& g) const {
        const double scale = 1.0 / (M * tau);
        for (int i = 0; i < M; ++i) {
            const double qp = (i > 0) ? q[i - 1] : q[M - 1] - w;
            const double qn = (i + 1 < M) ? q[i + 1] : q[0] + w;
            const double dV = V->gradient(Vec(q[i])).c[0];
            g[i] = scale * ((2.0 * q[i] - qp - qn) / tau - tau * dV);
        }
    }
};

// Gradient descent with Barzilai-Borwein steps and backtracking.
double minimize_action(const ActionProblem& prob, std::vector<double> q) {
    const int M = prob.M;
    std::vector<double> g(M), gprev(M), qprev(M);
    double f = prob.action(q);
    prob.grad(q, g);
    double step = 1e-2;
    for (int it = 0; it < 4000; ++it) {
        double gnorm2 = 0.0;
        for (double gi : g) gnorm2 += gi * gi;
        if (gnorm2 < 1e-22) break;
        qprev = q;
        gprev = g;
        double fnew = f;
        double s = step;
        for (int bt = 0; bt < 50; ++bt) {
            for (int i = 0; i < M; ++i) q[i] = qprev[i] - s * gprev[i];
            fnew = prob.action(q);
            if (fnew <= f - 1e-4 * s * gnorm2) break;
            s *= 0.5;
        }
        if (fnew >= f - 1e-16 * std::fabs(f) - 1e-18) { q = qprev; break; }
        f = fnew;
        prob.grad(q, g);
        double sy = 0.0, ss = 0.0;
        for (int i = 0; i < M; ++i) {
            const double dq = q[i] - qprev[i];
            sy += dq * (g[i] - gprev[i]);
            ss += dq * dq;
        }
        step = (sy > 1e-18) ? ss / sy : s * 2.0;
        if (step > 1e3) step = 1e3;
    }
    return f;
}

}  // namespace

double aubry_beta_estimate(const HamiltonianSpec& spec, double h, int M,
                           double tau, int restarts, unsigned long long seed) {
    const auto* mech = std::get_if<Mechanical>(&spec.form);
    if (!mech || spec.dim() != 1)
        throw Error("aubry estimate requires a 1D mechanical spec");
    if (M < 8) throw Error("need M >= 8 configuration points");
    if (tau > 0.1 || tau <= 0.0) throw Error("need 0 < tau <= 0.1");
    if (M * tau < 20.0) throw Error("need M*tau >= 20");
    const double wf = h * M * tau;
    const double w = std::round(wf);
    if (std::fabs(wf - w) > 0.5 - 1e-9)
        throw InfeasibleWinding("h*M*tau is not within 0.5 of an integer");

    ActionProblem prob{mech->V.get(), M, tau, w};
    std::vector<double> best(std::max(restarts, 1),
                             std::numeric_limits<double>::infinity());
    parallel_for(std::max(restarts, 1), [&](int r) {
        std::vector<double> q(M);
        // drift plus a seeded periodic perturbation; restart 0 is the pure drift
        std::mt19937_64 rng(seed + 1000003ull * (unsigned long long)r);
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        for (int i = 0; i < M; ++i) {
            q[i] = w * double(i) / M;
            if (r > 0) q[i] += 0.5 * uni(rng);
        }
        if (r > 0) {
            const double shift = uni(rng);
            for (int i = 0; i < M; ++i) q[i] += shift;
        }
        best[r] = minimize_action(prob, std::move(q));
    });
    double out = best[0];
    for (double b : best) out = std::min(out, b);
    return out;
}

}  // namespace homog
