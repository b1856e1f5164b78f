#pragma once

#include <memory>

#include "homog/torus.hpp"
#include "homog/vec.hpp"

namespace homog {

// Smooth scalar field on the torus, evaluable anywhere. Houses potentials
// V(q), the product-form factor gamma(q), and sampled corrector data.
class ScalarField {
public:
    virtual ~ScalarField() = default;
    virtual double value(const Vec& q) const = 0;
    virtual Vec gradient(const Vec& q) const = 0;
    virtual int dim() const = 0;
};

using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

ScalarFieldPtr constant_field(int dim, double value);

// amplitude * cos(2*pi*harmonic*q[axis])
ScalarFieldPtr cosine_field(int dim, double amplitude, int harmonic, int axis = 0);

// Smooth plateau in the sup-norm distance to the cube
// U_delta = [(1-delta)/2, (1+delta)/2]^n: equals `top` on U_delta, `floor`
// outside U_{2delta}, monotone smoothstep transition in between.
ScalarFieldPtr plateau_field(int dim, double delta, double top, double floor_value,
                             int smooth_exponent = 5);

// Grid samples with periodic cubic interpolation.
ScalarFieldPtr sampled_field(PeriodicField field);

// Sum of two fields (used by shear tests and custom potentials).
ScalarFieldPtr sum_field(ScalarFieldPtr a, ScalarFieldPtr b);

// C^2 smoothstep: 0 at t<=0, 1 at t>=1. exponent 3 gives the cubic
// 3t^2-2t^3, exponent 5 the quintic 10t^3-15t^4+6t^5.
double smoothstep(double t, int exponent);
double smoothstep_deriv(double t, int exponent);

}  // namespace homog
