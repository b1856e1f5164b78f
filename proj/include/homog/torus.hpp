#pragma once

#include <cstddef>
#include <vector>

#include "homog/errors.hpp"
#include "homog/vec.hpp"

namespace homog {

// Uniform periodic grid on T^n, n = 1 or 2, N nodes per axis (power of two).
struct TorusGrid {
    int n{1};
    int N{64};

    TorusGrid() = default;
    TorusGrid(int dim, int nodes);

    double spacing() const { return 1.0 / N; }
    std::size_t node_count() const {
        return n == 1 ? std::size_t(N) : std::size_t(N) * N;
    }
    std::size_t index(int i, int j = 0) const {
        return n == 1 ? std::size_t(i) : std::size_t(i) * N + j;
    }
    Vec node(std::size_t k) const {
        if (n == 1) return Vec(double(k) / N);
        return Vec(double(k / N) / N, double(k % N) / N);
    }
    bool operator==(const TorusGrid& o) const { return n == o.n && N == o.N; }
};

enum class DiffScheme { Spectral, Centered };

// Scalar samples on a TorusGrid, identified periodically across axes.
class PeriodicField {
public:
    PeriodicField() = default;
    PeriodicField(TorusGrid grid, std::vector<double> values);

    template <class F>
    static PeriodicField sample(TorusGrid grid, F&& f) {
        std::vector<double> v(grid.node_count());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid.node(k));
        return PeriodicField(grid, std::move(v));
    }

    const TorusGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    double mean() const;
    double min() const;
    double max() const;

    // Per-node differential along one axis; Spectral uses the exact
    // trigonometric derivative, Centered uses (f_{i+1}-f_{i-1})/2h.
    std::vector<double> differentiate(int axis, DiffScheme scheme) const;

    // Periodic cubic (Catmull-Rom) interpolation at an arbitrary point.
    double interpolate(const Vec& q) const;
    Vec interpolate_gradient(const Vec& q) const;

private:
    TorusGrid grid_;
    std::vector<double> values_;
};

// In-place radix-2 complex FFT, N a power of two; sign = -1 forward.
void fft_radix2(std::vector<double>& re, std::vector<double>& im, int sign);

}  // namespace homog
