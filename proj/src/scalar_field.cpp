#include "homog/scalar_field.hpp"

#include <cmath>

#include "homog/errors.hpp"

namespace homog {

double smoothstep(double t, int exponent) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (exponent == 3) return t * t * (3.0 - 2.0 * t);
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_deriv(double t, int exponent) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    if (exponent == 3) return 6.0 * t * (1.0 - t);
    return 30.0 * t * t * (1.0 + t * (-2.0 + t));
}

namespace {

class ConstantField final : public ScalarField {
public:
    ConstantField(int dim, double v) : dim_(dim), v_(v) {}
    double value(const Vec&) const override { return v_; }
    Vec gradient(const Vec&) const override { return Vec::zero(dim_); }
    int dim() const override { return dim_; }

private:
    int dim_;
    double v_;
};

class CosineField final : public ScalarField {
public:
    CosineField(int dim, double amp, int harmonic, int axis)
        : dim_(dim), amp_(amp), k_(harmonic), axis_(axis) {}
    double value(const Vec& q) const override {
        return amp_ * std::cos(2.0 * M_PI * k_ * q[axis_]);
    }
    Vec gradient(const Vec& q) const override {
        Vec g = Vec::zero(dim_);
        g[axis_] = -amp_ * 2.0 * M_PI * k_ * std::sin(2.0 * M_PI * k_ * q[axis_]);
        return g;
    }
    int dim() const override { return dim_; }

private:
    int dim_;
    double amp_;
    int k_, axis_;
};

class PlateauField final : public ScalarField {
public:
    PlateauField(int dim, double delta, double top, double floor_value, int expo)
        : dim_(dim), delta_(delta), top_(top), floor_(floor_value), expo_(expo) {}

    double value(const Vec& q) const override {
        return top_ + (floor_ - top_) * smoothstep(dist(q) / (0.5 * delta_), expo_);
    }

    Vec gradient(const Vec& q) const override {
        Vec g = Vec::zero(dim_);
        const double d = dist(q);
        const double w = 0.5 * delta_;
        const double s = (floor_ - top_) * smoothstep_deriv(d / w, expo_) / w;
        if (s == 0.0) return g;
        // d is the sup-norm distance; differentiate along the achieving axis.
        int best = 0;
        double bestd = -1.0;
        for (int i = 0; i < dim_; ++i) {
            const double di = axis_dist(q[i]);
            if (di > bestd) {
                bestd = di;
                best = i;
            }
        }
        const double x = wrap_half(q[best] - 0.5);
        g[best] = s * (x >= 0.0 ? 1.0 : -1.0);
        return g;
    }

    int dim() const override { return dim_; }

private:
    double axis_dist(double qi) const {
        const double x = std::fabs(wrap_half(qi - 0.5));
        return std::fmax(0.0, x - 0.5 * delta_);
    }
    double dist(const Vec& q) const {
        double d = 0.0;
        for (int i = 0; i < dim_; ++i) d = std::fmax(d, axis_dist(q[i]));
        return d;
    }

    int dim_;
    double delta_, top_, floor_;
    int expo_;
};

class SampledScalarField final : public ScalarField {
public:
    explicit SampledScalarField(PeriodicField f) : f_(std::move(f)) {}
    double value(const Vec& q) const override { return f_.interpolate(q); }
    Vec gradient(const Vec& q) const override { return f_.interpolate_gradient(q); }
    int dim() const override { return f_.grid().n; }

private:
    PeriodicField f_;
};

class SumField final : public ScalarField {
public:
    SumField(ScalarFieldPtr a, ScalarFieldPtr b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_->dim() != b_->dim()) throw Error("sum_field: dimension mismatch");
    }
    double value(const Vec& q) const override { return a_->value(q) + b_->value(q); }
    Vec gradient(const Vec& q) const override {
        return a_->gradient(q) + b_->gradient(q);
    }
    int dim() const override { return a_->dim(); }

private:
    ScalarFieldPtr a_, b_;
};

}  // namespace

ScalarFieldPtr constant_field(int dim, double value) {
    return std::make_shared<ConstantField>(dim, value);
}

ScalarFieldPtr cosine_field(int dim, double amplitude, int harmonic, int axis) {
    return std::make_shared<CosineField>(dim, amplitude, harmonic, axis);
}

ScalarFieldPtr plateau_field(int dim, double delta, double top, double floor_value,
                             int smooth_exponent) {
    return std::make_shared<PlateauField>(dim, delta, top, floor_value,
                                          smooth_exponent);
}

ScalarFieldPtr sampled_field(PeriodicField field) {
    return std::make_shared<SampledScalarField>(std::move(field));
}

ScalarFieldPtr sum_field(ScalarFieldPtr a, ScalarFieldPtr b) {
    return std::make_shared<SumField>(std::move(a), std::move(b));
}

}  // namespace homog
