#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "homog/scalar_field.hpp"
#include "homog/truncation.hpp"
#include "homog/vec.hpp"

namespace homog {

struct HamiltonianSpec;
using SpecPtr = std::shared_ptr<const HamiltonianSpec>;

// H(q,p) = |p|^2/2 + V(q)
struct Mechanical {
    ScalarFieldPtr V;
};

// H(q,p) = gamma(q) * (|p|^2 - 1), gamma >= 0
struct ProductForm {
    ScalarFieldPtr gamma;
};

// H(q,p) = a*|p|^2/2 + d, a > 0
struct FiberOnly {
    int dim{1};
    double a{1.0};
    double d{0.0};
};

// Values on a q x p product grid, fiber box [-P,P]^n, multilinear interpolation.
struct Tabulated {
    TorusGrid qgrid;
    int pN{33};            // fiber samples per axis
    double P{4.0};         // fiber box half-width
    std::vector<double> values;  // row-major over (q..., p...)

    double pspacing() const { return 2.0 * P / (pN - 1); }
    std::size_t size() const;
    std::size_t index(const std::vector<int>& qi, const std::vector<int>& pi) const;
};

// f_{r,eps}(H) for a symbolic inner spec.
struct Truncated {
    SpecPtr inner;
    TruncationProfile profile;
};

// H composed with the fiber shear (q,p) -> (q, p + dg(q)).
struct Sheared {
    SpecPtr inner;
    ScalarFieldPtr g;
};

struct HamiltonianSpec {
    std::variant<Mechanical, ProductForm, FiberOnly, Tabulated, Truncated, Sheared>
        form;
    bool convex{true};
    bool superlinear{true};

    int dim() const;

    static SpecPtr mechanical(ScalarFieldPtr V);
    static SpecPtr product(ScalarFieldPtr gamma);
    static SpecPtr fiber_only(int dim, double a, double d = 0.0);
    static SpecPtr tabulated(Tabulated t);
    static SpecPtr sheared(SpecPtr inner, ScalarFieldPtr g);
};

double eval_h(const HamiltonianSpec& spec, const Vec& q, const Vec& p);
Vec grad_p(const HamiltonianSpec& spec, const Vec& q, const Vec& p);
Vec grad_q(const HamiltonianSpec& spec, const Vec& q, const Vec& p);

struct LagrangianValue {
    double L;
    Vec maximizer;  // the p realizing sup <p,v> - H(q,p)
};

LagrangianValue legendre_lagrangian(const HamiltonianSpec& spec, const Vec& q,
                                    const Vec& v);

// f_{r,eps}(H); Tabulated input stays Tabulated, symbolic input is wrapped.
SpecPtr apply_truncation(SpecPtr spec, const TruncationProfile& profile);

struct OscillationResult {
    double value;                   // max - min at the finer level
    double resolution_diagnostic;   // |finer - coarser|
};

// max - min of H over q in T^n, p in [plo,phi]^n, on a two-level
// refinement sweep with `base` samples per axis at the coarse level.
OscillationResult oscillation(const HamiltonianSpec& spec, double plo, double phi,
                              int base = 128);
OscillationResult oscillation(const PeriodicField& field);

// Oscillation over the whole support of a compactly supported spec; the
// fiber box is grown until the spec is constant on its boundary. Throws
// UnboundedRegion when no such box exists.
OscillationResult oscillation_support(const HamiltonianSpec& spec, int base = 128);

// Fiberwise second-difference convexity audit for Tabulated specs.
bool fiber_convexity_check(const Tabulated& tab, double tol = 1e-10);

}  // namespace homog
