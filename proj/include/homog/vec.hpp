#pragma once

#include <cmath>

namespace homog {

// Point in R^1 or R^2. The active dimension is carried alongside so the
// same code paths serve both the circle and the 2-torus case.
struct Vec {
    double c[2]{0.0, 0.0};
    int n{1};

    Vec() = default;
    explicit Vec(double x) : c{x, 0.0}, n(1) {}
    Vec(double x, double y) : c{x, y}, n(2) {}

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    Vec operator+(const Vec& o) const {
        Vec r = *this;
        for (int i = 0; i < n; ++i) r.c[i] += o.c[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r = *this;
        for (int i = 0; i < n; ++i) r.c[i] -= o.c[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r = *this;
        for (int i = 0; i < n; ++i) r.c[i] *= s;
        return r;
    }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += c[i] * o.c[i];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    static Vec zero(int dim) {
        Vec r;
        r.n = dim;
        return r;
    }
};

// Fold a coordinate into [0,1).
inline double fold01(double x) {
    double y = x - std::floor(x);
    return (y >= 1.0) ? 0.0 : y;
}

inline Vec fold01(Vec q) {
    for (int i = 0; i < q.n; ++i) q.c[i] = fold01(q.c[i]);
    return q;
}

// Representative of x mod 1 in [-1/2, 1/2).
inline double wrap_half(double x) {
    double y = x - std::round(x);
    return (y >= 0.5) ? -0.5 : y;
}

}  // namespace homog
