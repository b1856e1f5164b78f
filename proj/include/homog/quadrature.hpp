#pragma once

#include <functional>

#include "homog/errors.hpp"

namespace homog {

// Adaptive Gauss-Kronrod (G7,K15) integration on [a,b].
// Bisects intervals until the local error estimate meets the tolerance;
// throws QuadratureNotConverged past `max_intervals` subdivisions.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-9, double abs_tol = 1e-12,
                 int max_intervals = 20000);

}  // namespace homog
