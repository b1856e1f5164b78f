#pragma once

#include "homog/errors.hpp"

namespace homog {

// Transition shape on [r, r+eps]. Quintic is C^2 at both ends; Cubic is a
// distinct C^1 profile kept for the profile-independence checks.
enum class TruncShape { Quintic, Cubic };

// Cutoff f with f(s)=s for s<=r, f==r for s>=r+eps, f<=r+eps and |f'|<=1
// everywhere. On [r, r+eps],
//   f(s) = r + eps*g(t), t=(s-r)/eps,
// with g the quintic t - 6t^3 + 8t^4 - 3t^5 (g(0)=0, g'(0)=1, g''(0)=0,
// g(1)=g'(1)=g''(1)=0, range [0, ~0.1975], |g'|<=1) or the cubic t(1-t)^2
// (same endpoint values/slopes, range [0, 4/27], |g'|<=1).
struct TruncationProfile {
    double r{0.0};
    double eps{1.0};
    TruncShape shape{TruncShape::Quintic};

    TruncationProfile() = default;
    TruncationProfile(double level, double width, TruncShape s = TruncShape::Quintic)
        : r(level), eps(width), shape(s) {
        if (!(width > 0.0)) throw InvalidWidth();
    }

    double g(double t) const {
        if (shape == TruncShape::Cubic) return t * (1.0 - t) * (1.0 - t);
        return t + t * t * t * (-6.0 + t * (8.0 - 3.0 * t));
    }

    double gprime(double t) const {
        if (shape == TruncShape::Cubic) return 1.0 + t * (-4.0 + 3.0 * t);
        return 1.0 + t * t * (-18.0 + t * (32.0 - 15.0 * t));
    }

    double operator()(double s) const {
        if (s <= r) return s;
        if (s >= r + eps) return r;
        return r + eps * g((s - r) / eps);
    }

    double deriv(double s) const {
        if (s <= r) return 1.0;
        if (s >= r + eps) return 0.0;
        return gprime((s - r) / eps);
    }

    // Upper bound of the profile, attained inside the transition band.
    double max_value() const;
};

TruncationProfile make_truncation(double r, double eps,
                                  TruncShape shape = TruncShape::Quintic);

}  // namespace homog
