#include "homog/truncation.hpp"

#include <cmath>

namespace homog {

double TruncationProfile::max_value() const {
    if (shape == TruncShape::Cubic) return r + eps * (4.0 / 27.0);  // g'(1/3)=0
    // quintic: g' has a single interior root in (0,1); bisect for it
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gprime(mid) > 0.0 ? lo : hi) = mid;
    }
    return r + eps * g(0.5 * (lo + hi));
}

TruncationProfile make_truncation(double r, double eps, TruncShape shape) {
    return TruncationProfile(r, eps, shape);
}

}  // namespace homog
